#include "dgcell/homotopy.hpp"

#include <stdexcept>

namespace dgcell {

namespace {

Complex tot_complex(const TwistedComplex& x) {
    TotData t = tot(x);
    Complex c;
    c.space = t.bim.space;
    c.d = t.bim.d;
    return c;
}

/* columns of the degree-0 cycle space of the Hom carrier */
QMatrix cycle_basis0(const HomSpace& h, int deg) {
    return kernel_basis(h.carrier.d.block(deg));
}

}  // namespace

H0 h0_hom(const TwistedComplex& x, const TwistedComplex& y) {
    HomSpace h = tc_hom(x, y);
    H0 out;
    int n0 = h.dim(0);
    if (n0 == 0) return out;
    QMatrix bnd = image_basis(h.carrier.d.block(-1));
    QMatrix cyc = cycle_basis0(h, 0);
    QMatrix m = bnd.hstack(cyc);
    std::vector<int> pivots;
    {
        QMatrix r = m;
        pivots = rref(r);
    }
    for (int p : pivots) {
        if (p < bnd.cols()) continue;
        out.basis.push_back(h.from_coords(0, m.col(p)));
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
}

bool is_null_homotopic(const TwistedComplex& x, const TwistedComplex& y, const GradedMap& f) {
    if (f.degree != 0) throw std::invalid_argument("is_null_homotopic: morphism must have degree 0");
    Complex cx = tot_complex(x), cy = tot_complex(y);
    if (!(f.source == cx.space) || !(f.target == cy.space))
        throw std::invalid_argument("is_null_homotopic: morphism endpoints do not match");
    if (!map_differential(f, cx, cy).is_zero())
        throw std::invalid_argument("is_null_homotopic: morphism is not a cycle");
    HomSpace h = tc_hom(x, y);
    std::vector<Rat> c = h.coords_of(f);
    if (c.empty()) return true;
    return solve(h.carrier.d.block(-1), c).has_value();
}

bool is_acyclic_object(const TwistedComplex& x) {
    TotData t = tot(x);
    if (t.bim.is_zero_object()) return true;
    HomSpace h = tc_hom(x, x);
    std::vector<Rat> c = h.coords_of(GradedMap::identity(t.bim.space));
    return solve(h.carrier.d.block(-1), c).has_value();
}

EndoRing endo_ring(const TwistedComplex& g, bool cycles) {
    EndoRing r;
    r.hom = tc_hom(g, g);
    r.cycles = cycles;
    int n0 = r.hom.dim(0);
    r.basis = cycles ? cycle_basis0(r.hom, 0) : QMatrix::identity(n0);
    int n = r.basis.cols();
    r.ring.name = cycles ? "End0_cycles" : "End0";
    r.ring.degrees.assign(n, 0);
    r.ring.mult.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    r.ring.diff = QMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        r.ring.labels.push_back("b" + std::to_string(i));
        GradedMap fi = r.hom.from_coords(0, r.basis.col(i));
        for (int j = 0; j < n; ++j) {
            GradedMap fj = r.hom.from_coords(0, r.basis.col(j));
            auto c = solve(r.basis, r.hom.coords_of(fi.compose(fj)));
            if (!c) throw std::logic_error("endo_ring: basis is not closed under composition");
            r.ring.mult[i][j] = *c;
        }
    }
    if (n > 0) {
        TotData t = tot(g);
        auto u = solve(r.basis, r.hom.coords_of(GradedMap::identity(t.bim.space)));
        if (!u) throw std::logic_error("endo_ring: identity is not in the ring");
        r.ring.unit = *u;
        r.ring.idempotent_labels = {"1"};
        r.ring.idempotents = {*u};
    }
    return r;
}

TraceIdealSlice trace_ideal_slice(const TwistedComplex& g, const TwistedComplex& x, bool cycles_only) {
    HomSpace end = tc_hom(g, g);
    HomSpace xg = tc_hom(x, g);  // p : X -> G
    HomSpace gx = tc_hom(g, x);  // q : G -> X
    TraceIdealSlice slice;
    slice.cycles_only = cycles_only;
    /* per degree of End(G): coordinate ambient (cycle coordinates when restricted) */
    std::map<int, QMatrix> amb;
    for (const auto& [deg, dim] : end.carrier.space.dims) {
        (void)dim;
        amb[deg] = cycles_only ? cycle_basis0(end, deg) : QMatrix::identity(end.dim(deg));
    }
    std::map<int, std::vector<std::vector<Rat>>> vecs;
    for (const auto& [dp, pb] : xg.basis)
        for (const auto& [dq, qb] : gx.basis) {
            int deg = dp + dq;
            if (!amb.count(deg) || amb.at(deg).cols() == 0) continue;
            if (!cycles_only) {
                for (const GradedMap& p0 : pb)
                    for (const GradedMap& q0 : qb) {
                        auto c = solve(amb.at(deg), end.coords_of(p0.compose(q0)));
                        if (!c) throw std::logic_error("trace_ideal_slice: composite escapes End(G)");
                        vecs[deg].push_back(*c);
                    }
            } else {
                QMatrix pc = cycle_basis0(xg, dp);
                QMatrix qc = cycle_basis0(gx, dq);
                for (int i = 0; i < pc.cols(); ++i)
                    for (int j = 0; j < qc.cols(); ++j) {
                        GradedMap p = xg.from_coords(dp, pc.col(i));
                        GradedMap q = gx.from_coords(dq, qc.col(j));
                        auto c = solve(amb.at(deg), end.coords_of(p.compose(q)));
                        if (!c) throw std::logic_error("trace_ideal_slice: cycle composite is not a cycle");
                        vecs[deg].push_back(*c);
                    }
            }
        }
    for (auto& [deg, vs] : vecs) slice.span[deg] = Subspace::span(amb.at(deg).cols(), vs);
    return slice;
}

bool has_local_endo_ring(const TwistedComplex& g, SummandMode mode) {
    EndoRing r = endo_ring(g, mode != SummandMode::IgnoreDifferential);
    int n = r.ring.dim();
    if (n == 0) return false;
    Subspace rad = radical(r.ring);
    int qdim = n - rad.dim();
    if (qdim <= 1) return qdim == 1;
    /* quotient modulo the radical: local iff the semisimple quotient has no
     * nontrivial idempotent, i.e. is a division algebra */
    Subspace comp = rad.complement();
    QMatrix cb = comp.basis();
    DgAlgebra q;
    q.name = r.ring.name + "_ss";
    q.degrees.assign(qdim, 0);
    q.mult.assign(qdim, std::vector<std::vector<Rat>>(qdim, std::vector<Rat>(qdim, Rat(0))));
    q.diff = QMatrix(qdim, qdim);
    QMatrix proj_solve = rad.basis().hstack(cb);  // coords: [rad part | quotient part]
    auto project = [&](const std::vector<Rat>& v) {
        auto c = solve(proj_solve, v);
        if (!c) throw std::logic_error("has_local_endo_ring: projection failed");
        return std::vector<Rat>(c->begin() + rad.dim(), c->end());
    };
    for (int i = 0; i < qdim; ++i) {
        q.labels.push_back("q" + std::to_string(i));
        for (int j = 0; j < qdim; ++j)
            q.mult[i][j] = project(r.ring.multiply(cb.col(i), cb.col(j)));
    }
    q.unit = project(r.ring.unit);
    q.idempotent_labels = {"1"};
    q.idempotents = {q.unit};
    return !find_nontrivial_idempotent(q).has_value();
}

SummandTester make_summand_tester(const TwistedComplex& g, SummandMode mode) {
    SummandTester t;
    t.g = g;
    t.mode = mode;
    t.local = has_local_endo_ring(g, mode == SummandMode::Homotopy ? SummandMode::Dg : mode);
    if (!t.local) return t;
    t.ring = endo_ring(g, mode != SummandMode::IgnoreDifferential);
    t.rad = radical(t.ring.ring);
    int n = t.ring.ring.dim();
    t.boundaries = Subspace(n);
    if (mode == SummandMode::Homotopy) {
        /* degree-0 boundaries of End(G), expressed in cycle coordinates */
        QMatrix bnd = t.ring.hom.carrier.d.block(-1);
        std::vector<std::vector<Rat>> bs;
        for (int c = 0; c < bnd.cols(); ++c) {
            auto coords = solve(t.ring.basis, bnd.col(c));
            if (!coords) throw std::logic_error("dg_summand_test: boundary is not a cycle");
            bs.push_back(*coords);
        }
        t.boundaries = Subspace::span(n, bs);
    }
    return t;
}

Verdict SummandTester::test(const TwistedComplex& x) const {
    if (!local) return Verdict::Inconclusive;
    TraceIdealSlice slice = trace_ideal_slice(g, x, mode != SummandMode::IgnoreDifferential);
    int n = ring.ring.dim();
    Subspace s = slice.span.count(0) ? slice.span.at(0) : Subspace(n);
    if (mode == SummandMode::Homotopy) s = s.sum(boundaries);
    return rad.contains(s) ? Verdict::False : Verdict::True;
}

Verdict dg_summand_test(const TwistedComplex& g, const TwistedComplex& x, SummandMode mode) {
    return make_summand_tester(g, mode).test(x);
}

}  // namespace dgcell
