#include "dgcell/bimodule.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dgcell {

namespace {

Rat pm(long exponent) { return (exponent % 2 + 2) % 2 == 0 ? Rat(1) : Rat(-1); }

QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

std::vector<Rat> coords_in(const QMatrix& basis_cols, const std::vector<Rat>& v, const char* what) {
    auto s = solve(basis_cols, v);
    if (!s) throw std::logic_error(std::string("element outside expected span: ") + what);
    return *s;
}

Complex as_complex(const Bimodule& m) {
    Complex c;
    c.space = m.space;
    c.d = m.d;
    return c;
}

}  // namespace

GradedMap Bimodule::left_action(const std::vector<Rat>& x) const {
    auto deg = A->element_degree(x);
    if (!deg) {
        bool zero = true;
        for (const auto& c : x) zero = zero && c == 0;
        if (zero) return GradedMap::zero(space, space, 0);
        throw std::invalid_argument("left_action: non-homogeneous element");
    }
    GradedMap r = GradedMap::zero(space, space, *deg);
    for (int i = 0; i < A->dim(); ++i)
        if (x[i] != 0) r = r + left[i] * x[i];
    return r;
}

GradedMap Bimodule::right_action(const std::vector<Rat>& x) const {
    auto deg = A->element_degree(x);
    if (!deg) {
        bool zero = true;
        for (const auto& c : x) zero = zero && c == 0;
        if (zero) return GradedMap::zero(space, space, 0);
        throw std::invalid_argument("right_action: non-homogeneous element");
    }
    GradedMap r = GradedMap::zero(space, space, *deg);
    for (int i = 0; i < A->dim(); ++i)
        if (x[i] != 0) r = r + right[i] * x[i];
    return r;
}

std::vector<std::string> Bimodule::validate() const {
    std::vector<std::string> issues;
    const DgAlgebra& a = *A;
    if (static_cast<int>(left.size()) != a.dim() || static_cast<int>(right.size()) != a.dim()) {
        issues.push_back("action map count does not match the algebra dimension");
        return issues;
    }
    if (d.degree != 1) issues.push_back("differential degree is not +1");
    if (!d.compose(d).is_zero()) issues.push_back("differential does not square to zero");
    for (int i = 0; i < a.dim(); ++i) {
        if (left[i].degree != a.degrees[i]) issues.push_back("left action degree mismatch at " + a.labels[i]);
        if (right[i].degree != a.degrees[i]) issues.push_back("right action degree mismatch at " + a.labels[i]);
    }
    if (!(left_action(a.unit) == GradedMap::identity(space))) issues.push_back("left unit does not act as identity");
    if (!(right_action(a.unit) == GradedMap::identity(space))) issues.push_back("right unit does not act as identity");
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            std::vector<Rat> p = a.multiply(a.basis_element(i), a.basis_element(j));
            GradedMap lp = GradedMap::zero(space, space, a.degrees[i] + a.degrees[j]);
            GradedMap rp = lp;
            for (int m = 0; m < a.dim(); ++m)
                if (p[m] != 0) {
                    lp = lp + left[m] * p[m];
                    rp = rp + right[m] * p[m];
                }
            if (!(left[i].compose(left[j]) == lp))
                issues.push_back("left action not multiplicative at " + a.labels[i] + "*" + a.labels[j]);
            if (!(right[j].compose(right[i]) == rp))
                issues.push_back("right action not multiplicative at " + a.labels[i] + "*" + a.labels[j]);
            if (!(left[i].compose(right[j]) == right[j].compose(left[i])))
                issues.push_back("left/right actions do not commute at " + a.labels[i] + "," + a.labels[j]);
        }
    GradedMap sign = GradedMap::sign_operator(space);
    for (int i = 0; i < a.dim(); ++i) {
        std::vector<Rat> di = a.apply_diff(a.basis_element(i));
        GradedMap l_di = GradedMap::zero(space, space, a.degrees[i] + 1);
        GradedMap r_di = l_di;
        for (int m = 0; m < a.dim(); ++m)
            if (di[m] != 0) {
                l_di = l_di + left[m] * di[m];
                r_di = r_di + right[m] * di[m];
            }
        GradedMap lhs_l = d.compose(left[i]) - left[i].compose(d) * pm(a.degrees[i]);
        if (!(lhs_l == l_di)) issues.push_back("left Leibniz identity fails at " + a.labels[i]);
        GradedMap lhs_r = d.compose(right[i]) - right[i].compose(d);
        if (!(lhs_r == r_di.compose(sign))) issues.push_back("right Leibniz identity fails at " + a.labels[i]);
    }
    return issues;
}

Bimodule shift_bimodule(const Bimodule& m, int t) {
    Bimodule r;
    r.A = m.A;
    r.src_block = m.src_block;
    r.tgt_block = m.tgt_block;
    r.space = shift(m.space, t);
    r.d = shift(m.d, t, t) * pm(t);
    for (int i = 0; i < m.A->dim(); ++i) {
        r.left.push_back(shift(m.left[i], t, t) * pm(static_cast<long>(t) * m.A->degrees[i]));
        r.right.push_back(shift(m.right[i], t, t));
    }
    return r;
}

Bimodule direct_sum(const Bimodule& a, const Bimodule& b) {
    if (a.A != b.A) throw std::invalid_argument("direct_sum over different algebras");
    Bimodule r;
    r.A = a.A;
    r.src_block = a.src_block == b.src_block ? a.src_block : -1;
    r.tgt_block = a.tgt_block == b.tgt_block ? a.tgt_block : -1;
    for (const auto& [k, d] : a.space.dims) r.space.dims[k] += d;
    for (const auto& [k, d] : b.space.dims) r.space.dims[k] += d;
    auto combine = [&](const GradedMap& fa, const GradedMap& fb) {
        GradedMap f = GradedMap::zero(r.space, r.space, fa.degree);
        for (const auto& [k, dim] : r.space.dims) {
            (void)dim;
            QMatrix m = block_diag(fa.block(k), fb.block(k));
            if (!m.is_zero()) f.blocks[k] = std::move(m);
        }
        return f;
    };
    r.d = combine(a.d, b.d);
    for (int i = 0; i < a.A->dim(); ++i) {
        r.left.push_back(combine(a.left[i], b.left[i]));
        r.right.push_back(combine(a.right[i], b.right[i]));
    }
    return r;
}

int Realization::tuple_index(const std::vector<int>& t) const {
    int idx = 0;
    for (size_t p = 0; p < factors.size(); ++p) idx = idx * factors[p].size() + t[p];
    return idx;
}

int HomSpace::dim(int deg) const {
    auto it = basis.find(deg);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<Rat> HomSpace::coords_of(const GradedMap& f) const {
    int n = f.degree;
    auto it = basis.find(n);
    if (it == basis.end() || it->second.empty()) {
        if (!f.is_zero()) throw std::logic_error("coords_of: nonzero map in a zero Hom slice");
        return {};
    }
    std::vector<std::vector<Rat>> cols;
    for (const auto& b : it->second) cols.push_back(b.flat_vector());
    auto s = solve(QMatrix::from_cols(cols), f.flat_vector());
    if (!s) throw std::logic_error("coords_of: map outside the Hom space");
    return *s;
}

GradedMap HomSpace::from_coords(int deg, const std::vector<Rat>& c) const {
    GradedMap r = GradedMap::zero(src_space, tgt_space, deg);
    auto it = basis.find(deg);
    int n = it == basis.end() ? 0 : static_cast<int>(it->second.size());
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("from_coords: wrong length");
    for (int j = 0; j < n; ++j)
        if (c[j] != 0) r = r + it->second[j] * c[j];
    return r;
}

HomSpace oracle_hom(const Bimodule& m, const Bimodule& n) {
    HomSpace h;
    h.src_space = m.space;
    h.tgt_space = n.space;
    GradedVectorSpace hs;
    if (m.space.total_dim() == 0 || n.space.total_dim() == 0) {
        h.carrier = Complex::with_zero_differential(hs);
        return h;
    }
    const DgAlgebra& a = *m.A;
    int mt = m.space.total_dim(), nt = n.space.total_dim();
    /* flat action matrices and flat degrees */
    std::vector<QMatrix> lm, ln, rm, rn;
    for (int i = 0; i < a.dim(); ++i) {
        lm.push_back(m.left[i].flat_matrix());
        ln.push_back(n.left[i].flat_matrix());
        rm.push_back(m.right[i].flat_matrix());
        rn.push_back(n.right[i].flat_matrix());
    }
    std::vector<int> mdeg(mt), ndeg(nt);
    for (int j = 0; j < mt; ++j) mdeg[j] = m.space.from_flat(j).first;
    for (int i = 0; i < nt; ++i) ndeg[i] = n.space.from_flat(i).first;

    int lo = n.space.min_deg() - m.space.max_deg();
    int hi = n.space.max_deg() - m.space.min_deg();
    for (int deg = lo; deg <= hi; ++deg) {
        std::vector<std::pair<int, int>> unk;  // flat (row in N, col in M)
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < mt; ++j)
                if (ndeg[i] == mdeg[j] + deg) unk.emplace_back(i, j);
        if (unk.empty()) continue;
        /* equivariance: F∘L^M_a − (−1)^{deg·|a|} L^N_a∘F = 0 and F∘R^M_b − R^N_b∘F = 0,
         * as linear conditions on the flat matrix F */
        size_t eq = static_cast<size_t>(2 * a.dim()) * nt * mt;
        QMatrix cons(static_cast<int>(eq), static_cast<int>(unk.size()));
        for (size_t u = 0; u < unk.size(); ++u) {
            auto [r, c] = unk[u];
            size_t off = 0;
            for (int i = 0; i < a.dim(); ++i) {
                Rat s = pm(static_cast<long>(deg) * a.degrees[i]);
                /* (E_{rc}·Lm)(r, j) = Lm(c, j); (Ln·E_{rc})(i2, c) = Ln(i2, r) */
                for (int j = 0; j < mt; ++j)
                    if (lm[i].at(c, j) != 0) cons.at(static_cast<int>(off + static_cast<size_t>(r) * mt + j), static_cast<int>(u)) += lm[i].at(c, j);
                for (int i2 = 0; i2 < nt; ++i2)
                    if (ln[i].at(i2, r) != 0) cons.at(static_cast<int>(off + static_cast<size_t>(i2) * mt + c), static_cast<int>(u)) -= s * ln[i].at(i2, r);
                off += static_cast<size_t>(nt) * mt;
                for (int j = 0; j < mt; ++j)
                    if (rm[i].at(c, j) != 0) cons.at(static_cast<int>(off + static_cast<size_t>(r) * mt + j), static_cast<int>(u)) += rm[i].at(c, j);
                for (int i2 = 0; i2 < nt; ++i2)
                    if (rn[i].at(i2, r) != 0) cons.at(static_cast<int>(off + static_cast<size_t>(i2) * mt + c), static_cast<int>(u)) -= rn[i].at(i2, r);
                off += static_cast<size_t>(nt) * mt;
            }
        }
        QMatrix ker = kernel_basis(cons);
        if (ker.cols() == 0) continue;
        std::vector<GradedMap> maps;
        for (int kcol = 0; kcol < ker.cols(); ++kcol) {
            GradedMap f = GradedMap::zero(m.space, n.space, deg);
            std::map<int, QMatrix> acc;
            for (size_t u = 0; u < unk.size(); ++u) {
                if (ker.at(static_cast<int>(u), kcol) == 0) continue;
                auto [r, c] = unk[u];
                auto [dn, sn] = n.space.from_flat(r);
                auto [dm, sm] = m.space.from_flat(c);
                (void)dn;
                auto it = acc.find(dm);
                if (it == acc.end())
                    it = acc.emplace(dm, QMatrix(n.space.dim(dm + deg), m.space.dim(dm))).first;
                it->second.at(sn, sm) = ker.at(static_cast<int>(u), kcol);
            }
            for (auto& [k, blk] : acc) f.set_block(k, std::move(blk));
            maps.push_back(std::move(f));
        }
        hs.set_dim(deg, static_cast<int>(maps.size()));
        h.basis[deg] = std::move(maps);
    }
    h.carrier = Complex::with_zero_differential(hs);
    /* induced differential expressed in the chosen bases */
    Complex mc = as_complex(m), nc = as_complex(n);
    for (const auto& [deg, bas] : h.basis) {
        int tdim = h.dim(deg + 1);
        QMatrix blk(tdim, static_cast<int>(bas.size()));
        std::vector<std::vector<Rat>> tcols;
        for (int j = 0; j < tdim; ++j) tcols.push_back(h.basis.at(deg + 1)[j].flat_vector());
        QMatrix tmat = tdim > 0 ? QMatrix::from_cols(tcols) : QMatrix(0, 0);
        bool nonzero = false;
        for (size_t j = 0; j < bas.size(); ++j) {
            GradedMap df = map_differential(bas[j], mc, nc);
            if (df.is_zero()) continue;
            if (tdim == 0) throw std::logic_error("oracle_hom: differential escapes the Hom space");
            auto c = solve(tmat, df.flat_vector());
            if (!c) throw std::logic_error("oracle_hom: differential escapes the Hom space");
            for (int i = 0; i < tdim; ++i)
                if ((*c)[i] != 0) {
                    blk.at(i, static_cast<int>(j)) = (*c)[i];
                    nonzero = true;
                }
        }
        if (nonzero) h.carrier.d.set_block(deg, std::move(blk));
    }
    if (!h.carrier.validate()) throw std::logic_error("oracle_hom: invalid Hom complex");
    return h;
}

CatContext::CatContext(DgAlgebra a, uint64_t seed)
    : a_(std::make_shared<DgAlgebra>(std::move(a))), seed_(seed) {
    blk_ = blocks(*a_);
    cls_ = idempotent_classes(*a_, seed_);
    reps_ = cls_.representatives;
}

std::vector<Gen> CatContext::generators() const {
    std::vector<Gen> g;
    for (int i = 0; i < blk_.count; ++i) g.push_back(Gen::id(i));
    for (int e : reps_)
        for (int f : reps_) g.push_back(Gen::proj(e, f));
    return g;
}

std::string CatContext::gen_name(const Gen& g) const {
    if (g.kind == Gen::Kind::Identity) return "Id:" + std::to_string(g.block + 1);
    return "P:" + a_->idempotent_labels[g.e] + "," + a_->idempotent_labels[g.f];
}

Gen CatContext::gen_by_name(const std::string& name) const {
    auto idem_index = [&](const std::string& lab) {
        for (size_t i = 0; i < a_->idempotent_labels.size(); ++i)
            if (a_->idempotent_labels[i] == lab) return reps_[cls_.class_of[i]];
        throw std::invalid_argument("unknown idempotent label: " + lab);
    };
    if (name.rfind("Id:", 0) == 0) {
        int b = std::stoi(name.substr(3)) - 1;
        if (b < 0 || b >= blk_.count) throw std::invalid_argument("block out of range in " + name);
        return Gen::id(b);
    }
    if (name.rfind("P:", 0) == 0) {
        std::string rest = name.substr(2);
        size_t comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("malformed generator name: " + name);
        return Gen::proj(idem_index(rest.substr(0, comma)), idem_index(rest.substr(comma + 1)));
    }
    throw std::invalid_argument("malformed generator name: " + name);
}

int CatContext::source_block(const Gen& g) const {
    return g.kind == Gen::Kind::Identity ? g.block : block_of_idem(g.f);
}

int CatContext::target_block(const Gen& g) const {
    return g.kind == Gen::Kind::Identity ? g.block : block_of_idem(g.e);
}

GenList CatContext::normalize(const GenList& raw) const {
    if (raw.empty()) return {};
    for (size_t p = 0; p + 1 < raw.size(); ++p)
        if (source_block(raw[p]) != target_block(raw[p + 1])) return {};
    GenList out;
    for (const Gen& g : raw)
        if (g.kind != Gen::Kind::Identity) out.push_back(g);
    if (out.empty()) out.push_back(Gen::id(raw.front().block));
    return out;
}

GenList CatContext::compose_lists(const GenList& outer, const GenList& inner) const {
    if (outer.empty() || inner.empty()) return {};
    GenList cat = outer;
    cat.insert(cat.end(), inner.begin(), inner.end());
    return normalize(cat);
}

std::string CatContext::key(const GenList& gl) const {
    if (gl.empty()) return "Z";
    std::ostringstream s;
    for (const Gen& g : gl) {
        if (g.kind == Gen::Kind::Identity)
            s << "I" << g.block << "|";
        else
            s << "P" << g.e << "," << g.f << "|";
    }
    return s.str();
}

Realization CatContext::build_realization(const GenList& gl0) const {
    GenList gl = normalize(gl0);
    const DgAlgebra& a = *a_;
    Realization r;
    r.list = gl;
    Bimodule& b = r.bim;
    b.A = a_.get();

    if (!gl.empty()) {
        if (gl.size() == 1 && gl[0].kind == Gen::Kind::Identity) {
            int blkid = gl[0].block;
            const auto& c = blk_.central_idempotents[blkid];
            std::vector<std::vector<Rat>> gens;
            for (int i = 0; i < a.dim(); ++i) gens.push_back(a.multiply(c, a.basis_element(i)));
            r.factors.push_back(basis_of_span(a, gens));
            b.src_block = b.tgt_block = blkid;
        } else {
            int k = static_cast<int>(gl.size());
            std::vector<std::vector<Rat>> gens;
            for (int i = 0; i < a.dim(); ++i)
                gens.push_back(a.multiply(a.basis_element(i), a.idempotents[gl[0].e]));
            r.factors.push_back(basis_of_span(a, gens));
            for (int p = 0; p + 1 < k; ++p)
                r.factors.push_back(corner_basis(a, a.idempotents[gl[p].f], a.idempotents[gl[p + 1].e]));
            gens.clear();
            for (int i = 0; i < a.dim(); ++i)
                gens.push_back(a.multiply(a.idempotents[gl[k - 1].f], a.basis_element(i)));
            r.factors.push_back(basis_of_span(a, gens));
            b.tgt_block = block_of_idem(gl[0].e);
            b.src_block = block_of_idem(gl[k - 1].f);
        }
    }

    int nf = static_cast<int>(r.factors.size());
    std::vector<int> sizes(nf);
    bool empty = gl.empty();
    for (int p = 0; p < nf; ++p) {
        sizes[p] = r.factors[p].size();
        if (sizes[p] == 0) empty = true;
    }
    std::map<int, int> per_deg;
    if (!empty) {
        std::vector<int> t(nf, 0);
        for (;;) {
            r.tuples.push_back(t);
            int deg = 0;
            for (int p = 0; p < nf; ++p) deg += r.factors[p].degs[t[p]];
            r.tuple_pos.emplace_back(deg, per_deg[deg]++);
            int p = nf - 1;
            while (p >= 0) {
                if (++t[p] < sizes[p]) break;
                t[p] = 0;
                --p;
            }
            if (p < 0) break;
        }
    }
    for (const auto& [deg, dim] : per_deg) b.space.set_dim(deg, dim);

    b.d = GradedMap::zero(b.space, b.space, 1);
    for (int i = 0; i < a.dim(); ++i) {
        b.left.push_back(GradedMap::zero(b.space, b.space, a.degrees[i]));
        b.right.push_back(GradedMap::zero(b.space, b.space, a.degrees[i]));
    }
    if (empty) return r;

    std::vector<QMatrix> fmats(nf);
    for (int p = 0; p < nf; ++p) fmats[p] = QMatrix::from_cols(r.factors[p].vecs);

    /* differential: Leibniz over the tensor factors with Koszul signs */
    std::vector<QMatrix> dcoef(nf);
    for (int p = 0; p < nf; ++p) {
        dcoef[p] = QMatrix(sizes[p], sizes[p]);
        for (int i = 0; i < sizes[p]; ++i) {
            std::vector<Rat> c = coords_in(fmats[p], a.apply_diff(r.factors[p].vecs[i]), "factor differential");
            for (int j = 0; j < sizes[p]; ++j) dcoef[p].at(j, i) = c[j];
        }
    }
    std::map<int, QMatrix> dacc;
    auto acc_block = [&](std::map<int, QMatrix>& acc, int deg, int mapdeg) -> QMatrix& {
        auto it = acc.find(deg);
        if (it == acc.end())
            it = acc.emplace(deg, QMatrix(b.space.dim(deg + mapdeg), b.space.dim(deg))).first;
        return it->second;
    };
    for (size_t ti = 0; ti < r.tuples.size(); ++ti) {
        const std::vector<int>& t = r.tuples[ti];
        auto [deg, sl] = r.tuple_pos[ti];
        Rat sign(1);
        for (int p = 0; p < nf; ++p) {
            for (int j = 0; j < sizes[p]; ++j) {
                if (dcoef[p].at(j, t[p]) == 0) continue;
                std::vector<int> t2 = t;
                t2[p] = j;
                auto [d2, s2] = r.tuple_pos[r.tuple_index(t2)];
                (void)d2;
                acc_block(dacc, deg, 1).at(s2, sl) += sign * dcoef[p].at(j, t[p]);
            }
            sign *= pm(r.factors[p].degs[t[p]]);
        }
    }
    for (auto& [deg, mat] : dacc)
        if (!mat.is_zero()) b.d.set_block(deg, std::move(mat));

    /* actions on the outermost factors */
    for (int i = 0; i < a.dim(); ++i) {
        int di = a.degrees[i];
        std::vector<std::vector<Rat>> lc(sizes[0]), rc(sizes[nf - 1]);
        for (int j = 0; j < sizes[0]; ++j)
            lc[j] = coords_in(fmats[0], a.multiply(a.basis_element(i), r.factors[0].vecs[j]), "left action");
        for (int j = 0; j < sizes[nf - 1]; ++j)
            rc[j] = coords_in(fmats[nf - 1], a.multiply(r.factors[nf - 1].vecs[j], a.basis_element(i)), "right action");
        std::map<int, QMatrix> lacc, racc;
        for (size_t ti = 0; ti < r.tuples.size(); ++ti) {
            const std::vector<int>& t = r.tuples[ti];
            auto [deg, sl] = r.tuple_pos[ti];
            for (int m = 0; m < sizes[0]; ++m) {
                if (lc[t[0]][m] == 0) continue;
                std::vector<int> t2 = t;
                t2[0] = m;
                auto [d2, s2] = r.tuple_pos[r.tuple_index(t2)];
                (void)d2;
                acc_block(lacc, deg, di).at(s2, sl) += lc[t[0]][m];
            }
            for (int m = 0; m < sizes[nf - 1]; ++m) {
                if (rc[t[nf - 1]][m] == 0) continue;
                std::vector<int> t2 = t;
                t2[nf - 1] = m;
                auto [d2, s2] = r.tuple_pos[r.tuple_index(t2)];
                (void)d2;
                acc_block(racc, deg, di).at(s2, sl) += rc[t[nf - 1]][m];
            }
        }
        for (auto& [deg, mat] : lacc)
            if (!mat.is_zero()) b.left[i].set_block(deg, std::move(mat));
        for (auto& [deg, mat] : racc)
            if (!mat.is_zero()) b.right[i].set_block(deg, std::move(mat));
    }
    return r;
}

const Realization& CatContext::realize(const GenList& gl) const {
    GenList n = normalize(gl);
    std::string k = key(n);
    auto it = real_cache_.find(k);
    if (it == real_cache_.end())
        it = real_cache_.emplace(k, std::make_shared<Realization>(build_realization(n))).first;
    return *it->second;
}

const HomSpace& CatContext::hom(const GenList& src, const GenList& tgt) const {
    std::string k = key(normalize(src)) + "->" + key(normalize(tgt));
    auto it = hom_cache_.find(k);
    if (it == hom_cache_.end())
        it = hom_cache_.emplace(k, std::make_shared<HomSpace>(oracle_hom(realize(src).bim, realize(tgt).bim))).first;
    return *it->second;
}

bool CatContext::has_closed_form(const Gen& f, const Gen& g) const { return f.kind == g.kind; }

std::map<int, int> CatContext::closed_hom_dims(const Gen& f, const Gen& g) const {
    const DgAlgebra& a = *a_;
    std::map<int, int> dims;
    if (f.kind == Gen::Kind::Projective && g.kind == Gen::Kind::Projective) {
        ElementBasis eb = corner_basis(a, a.idempotents[f.e], a.idempotents[g.e]);
        ElementBasis fb = corner_basis(a, a.idempotents[g.f], a.idempotents[f.f]);
        for (int i = 0; i < eb.size(); ++i)
            for (int j = 0; j < fb.size(); ++j) ++dims[eb.degs[i] + fb.degs[j]];
        return dims;
    }
    if (f.kind == Gen::Kind::Identity && g.kind == Gen::Kind::Identity) {
        if (f.block != g.block) return dims;
        const Realization& r = realize({f});
        InducedAlgebra sub = induced_algebra(a, r.factors[0], blk_.central_idempotents[f.block], "block");
        Subspace z = center(sub.alg);
        std::vector<std::vector<Rat>> gens;
        for (int j = 0; j < z.dim(); ++j) gens.push_back(z.basis_vector(j));
        ElementBasis zb = basis_of_span(sub.alg, gens);
        for (int i = 0; i < zb.size(); ++i) ++dims[zb.degs[i]];
        return dims;
    }
    throw std::invalid_argument("closed_hom_dims: no closed form for this generator pair");
}

GradedMap CatContext::carrier_map_pp(const Gen& f, const Gen& g, const std::vector<Rat>& u,
                                     const std::vector<Rat>& w) const {
    const DgAlgebra& a = *a_;
    const Realization& rs = realize({f});
    const Realization& rt = realize({g});
    auto du = a.element_degree(u), dw = a.element_degree(w);
    if (!du || !dw) return GradedMap::zero(rs.bim.space, rt.bim.space, 0);
    int n = *du + *dw;
    QMatrix f0 = QMatrix::from_cols(rt.factors[0].vecs);
    QMatrix f1 = QMatrix::from_cols(rt.factors[1].vecs);
    GradedMap res = GradedMap::zero(rs.bim.space, rt.bim.space, n);
    std::map<int, QMatrix> acc;
    for (size_t ti = 0; ti < rs.tuples.size(); ++ti) {
        int j0 = rs.tuples[ti][0], j1 = rs.tuples[ti][1];
        auto [deg, sl] = rs.tuple_pos[ti];
        std::vector<Rat> xu = a.multiply(rs.factors[0].vecs[j0], u);
        std::vector<Rat> wy = a.multiply(w, rs.factors[1].vecs[j1]);
        auto cx = solve(f0, xu), cy = solve(f1, wy);
        if (!cx || !cy) throw std::logic_error("carrier_map_pp: product escapes the corner");
        Rat sign = pm(static_cast<long>(n) * rs.factors[0].degs[j0]);
        auto it = acc.find(deg);
        if (it == acc.end())
            it = acc.emplace(deg, QMatrix(rt.bim.space.dim(deg + n), rs.bim.space.dim(deg))).first;
        for (int m0 = 0; m0 < rt.factors[0].size(); ++m0) {
            if ((*cx)[m0] == 0) continue;
            for (int m1 = 0; m1 < rt.factors[1].size(); ++m1) {
                if ((*cy)[m1] == 0) continue;
                auto [d2, s2] = rt.tuple_pos[rt.tuple_index({m0, m1})];
                (void)d2;
                it->second.at(s2, sl) += sign * (*cx)[m0] * (*cy)[m1];
            }
        }
    }
    for (auto& [deg, mat] : acc)
        if (!mat.is_zero()) res.set_block(deg, std::move(mat));
    return res;
}

GradedMap CatContext::carrier_map_id(int block, const std::vector<Rat>& z) const {
    const DgAlgebra& a = *a_;
    const Realization& r = realize({Gen::id(block)});
    auto dz = a.element_degree(z);
    if (!dz) return GradedMap::zero(r.bim.space, r.bim.space, 0);
    QMatrix f0 = QMatrix::from_cols(r.factors[0].vecs);
    GradedMap res = GradedMap::zero(r.bim.space, r.bim.space, *dz);
    std::map<int, QMatrix> acc;
    for (size_t ti = 0; ti < r.tuples.size(); ++ti) {
        int j = r.tuples[ti][0];
        auto [deg, sl] = r.tuple_pos[ti];
        std::vector<Rat> zv = coords_in(f0, a.multiply(z, r.factors[0].vecs[j]), "central action");
        auto it = acc.find(deg);
        if (it == acc.end())
            it = acc.emplace(deg, QMatrix(r.bim.space.dim(deg + *dz), r.bim.space.dim(deg))).first;
        for (int m = 0; m < r.factors[0].size(); ++m) {
            if (zv[m] == 0) continue;
            auto [d2, s2] = r.tuple_pos[r.tuple_index({m})];
            (void)d2;
            it->second.at(s2, sl) += zv[m];
        }
    }
    for (auto& [deg, mat] : acc)
        if (!mat.is_zero()) res.set_block(deg, std::move(mat));
    return res;
}

namespace {

/* number of tuples of the factors in positions [from, to) */
int range_size(const Realization& r, int from, int to) {
    int s = 1;
    for (int p = from; p < to; ++p) s *= r.factors[p].size();
    return s;
}

int flat_of_tuple(const Realization& r, int idx) {
    auto [deg, sl] = r.tuple_pos[idx];
    return r.bim.space.flat_index(deg, sl);
}

/* Inclusion of the suffix part of C (factors 1..) into R, where C's factors
 * from index 2 on coincide with R's factors from index 1 on, and C's factor 1
 * spans a subspace of R's factor 0.  Column s = flat coordinates in R of the
 * s-th suffix. */
QMatrix left_suffix_inclusion(const Realization& c, const Realization& rr) {
    int nfc = static_cast<int>(c.factors.size());
    int srest = range_size(c, 2, nfc);
    int nsuffix = range_size(c, 1, nfc);
    QMatrix f0 = QMatrix::from_cols(rr.factors[0].vecs);
    int rlast = range_size(rr, 1, static_cast<int>(rr.factors.size()));
    if (rlast != srest) throw std::logic_error("whisker: factor shapes out of alignment");
    QMatrix inc(rr.bim.space.total_dim(), nsuffix);
    for (int s = 0; s < nsuffix; ++s) {
        int j1 = s / srest, rest = s % srest;
        std::vector<Rat> coef = coords_in(f0, c.factors[1].vecs[j1], "left whisker inclusion");
        for (int m = 0; m < rr.factors[0].size(); ++m)
            if (coef[m] != 0) inc.at(flat_of_tuple(rr, m * srest + rest), s) += coef[m];
    }
    return inc;
}

/* Mirror image: prefix part of C (factors 0..nfc-2) into R; C's factors below
 * nfc-2 coincide with R's, and C's factor nfc-2 spans a subspace of R's last. */
QMatrix right_prefix_inclusion(const Realization& c, const Realization& rr) {
    int nfc = static_cast<int>(c.factors.size());
    int nprefix = range_size(c, 0, nfc - 1);
    int nclast = c.factors[nfc - 2].size();
    int nrlast = rr.factors[rr.factors.size() - 1].size();
    QMatrix fl = QMatrix::from_cols(rr.factors[rr.factors.size() - 1].vecs);
    QMatrix inc(rr.bim.space.total_dim(), nprefix);
    for (int p = 0; p < nprefix; ++p) {
        int phead = p / nclast, dlast = p % nclast;
        std::vector<Rat> coef = coords_in(fl, c.factors[nfc - 2].vecs[dlast], "right whisker inclusion");
        for (int m = 0; m < nrlast; ++m)
            if (coef[m] != 0) inc.at(flat_of_tuple(rr, phead * nrlast + m), p) += coef[m];
    }
    return inc;
}

}  // namespace

GradedMap CatContext::whisker_left(const Gen& h, const GenList& src0, const GenList& tgt0,
                                   const GradedMap& phi) const {
    GenList src = normalize(src0), tgt = normalize(tgt0);
    GenList cs = compose_lists({h}, src), ct = compose_lists({h}, tgt);
    const Realization& rcs = realize(cs);
    const Realization& rct = realize(ct);
    if (rcs.bim.is_zero_object() || rct.bim.is_zero_object())
        return GradedMap::zero(rcs.bim.space, rct.bim.space, phi.degree);
    if (h.kind == Gen::Kind::Identity) return phi;
    const Realization& rs = realize(src);
    const Realization& rt = realize(tgt);
    if (!(phi.source == rs.bim.space) || !(phi.target == rt.bim.space))
        throw std::invalid_argument("whisker_left: map endpoints do not match the realizations");

    QMatrix inc_s = left_suffix_inclusion(rcs, rs);
    QMatrix inc_t = left_suffix_inclusion(rct, rt);
    QMatrix moved = phi.flat_matrix() * inc_s;
    /* re-express each image column in the suffix coordinates of the target */
    QMatrix q(inc_t.cols(), inc_s.cols());
    for (int s = 0; s < moved.cols(); ++s) {
        auto c = solve(inc_t, moved.col(s));
        if (!c) throw std::logic_error("whisker_left: image escapes the whiskered carrier");
        for (int i = 0; i < inc_t.cols(); ++i) q.at(i, s) = (*c)[i];
    }
    int n = phi.degree;
    int n0 = rcs.factors[0].size();
    int s0s = range_size(rcs, 1, static_cast<int>(rcs.factors.size()));
    int s0t = range_size(rct, 1, static_cast<int>(rct.factors.size()));
    QMatrix flat(rct.bim.space.total_dim(), rcs.bim.space.total_dim());
    for (int j0 = 0; j0 < n0; ++j0) {
        Rat sign = pm(static_cast<long>(n) * rcs.factors[0].degs[j0]);
        for (int ss = 0; ss < s0s; ++ss)
            for (int st = 0; st < s0t; ++st) {
                if (q.at(st, ss) == 0) continue;
                flat.at(flat_of_tuple(rct, j0 * s0t + st), flat_of_tuple(rcs, j0 * s0s + ss)) +=
                    sign * q.at(st, ss);
            }
    }
    return graded_from_flat(rcs.bim.space, rct.bim.space, n, flat);
}

GradedMap CatContext::whisker_right(const GenList& src0, const GenList& tgt0, const Gen& h,
                                    const GradedMap& phi) const {
    GenList src = normalize(src0), tgt = normalize(tgt0);
    GenList cs = compose_lists(src, {h}), ct = compose_lists(tgt, {h});
    const Realization& rcs = realize(cs);
    const Realization& rct = realize(ct);
    if (rcs.bim.is_zero_object() || rct.bim.is_zero_object())
        return GradedMap::zero(rcs.bim.space, rct.bim.space, phi.degree);
    if (h.kind == Gen::Kind::Identity) return phi;
    const Realization& rs = realize(src);
    const Realization& rt = realize(tgt);
    if (!(phi.source == rs.bim.space) || !(phi.target == rt.bim.space))
        throw std::invalid_argument("whisker_right: map endpoints do not match the realizations");

    QMatrix inc_s = right_prefix_inclusion(rcs, rs);
    QMatrix inc_t = right_prefix_inclusion(rct, rt);
    QMatrix moved = phi.flat_matrix() * inc_s;
    QMatrix q(inc_t.cols(), inc_s.cols());
    for (int s = 0; s < moved.cols(); ++s) {
        auto c = solve(inc_t, moved.col(s));
        if (!c) throw std::logic_error("whisker_right: image escapes the whiskered carrier");
        for (int i = 0; i < inc_t.cols(); ++i) q.at(i, s) = (*c)[i];
    }
    int n = phi.degree;
    int nlast = rcs.factors[rcs.factors.size() - 1].size();
    QMatrix flat(rct.bim.space.total_dim(), rcs.bim.space.total_dim());
    for (int jh = 0; jh < nlast; ++jh)
        for (int ps = 0; ps < inc_s.cols(); ++ps)
            for (int pt = 0; pt < inc_t.cols(); ++pt) {
                if (q.at(pt, ps) == 0) continue;
                flat.at(flat_of_tuple(rct, pt * nlast + jh), flat_of_tuple(rcs, ps * nlast + jh)) +=
                    q.at(pt, ps);
            }
    return graded_from_flat(rcs.bim.space, rct.bim.space, n, flat);
}

GradedMap CatContext::whisker_left_list(const GenList& h, const GenList& src, const GenList& tgt,
                                        const GradedMap& phi) const {
    GradedMap cur = phi;
    GenList cs = normalize(src), ct = normalize(tgt);
    for (auto it = h.rbegin(); it != h.rend(); ++it) {
        cur = whisker_left(*it, cs, ct, cur);
        cs = compose_lists({*it}, cs);
        ct = compose_lists({*it}, ct);
    }
    return cur;
}

GradedMap CatContext::whisker_right_list(const GenList& src, const GenList& tgt, const GenList& h,
                                         const GradedMap& phi) const {
    GradedMap cur = phi;
    GenList cs = normalize(src), ct = normalize(tgt);
    for (const Gen& g : h) {
        cur = whisker_right(cs, ct, g, cur);
        cs = compose_lists(cs, {g});
        ct = compose_lists(ct, {g});
    }
    return cur;
}

CatContext::EvalModule CatContext::eval_module(const GenList& gl, int j) const {
    const Bimodule& m = realize(gl).bim;
    EvalModule ev;
    if (m.is_zero_object()) {
        ev.cx = Complex::with_zero_differential(GradedVectorSpace{});
        ev.basis_cols = QMatrix(0, 0);
        return ev;
    }
    GradedMap re = m.right_action(a_->idempotents[j]);
    GradedVectorSpace s;
    std::map<int, QMatrix> cols;
    for (const auto& [k, dk] : m.space.dims) {
        (void)dk;
        QMatrix img = image_basis(re.block(k));
        if (img.cols() == 0) continue;
        s.set_dim(k, img.cols());
        cols[k] = img;
    }
    ev.cx = Complex::with_zero_differential(s);
    for (const auto& [k, mat] : cols) {
        int tdim = s.dim(k + 1);
        QMatrix d1 = m.d.block(k) * mat;
        if (d1.is_zero()) continue;
        if (tdim == 0) throw std::logic_error("eval_module: differential escapes the image");
        QMatrix blk(tdim, mat.cols());
        for (int c = 0; c < mat.cols(); ++c) {
            auto sol = solve(cols.at(k + 1), d1.col(c));
            if (!sol) throw std::logic_error("eval_module: differential escapes the image");
            for (int i = 0; i < tdim; ++i) blk.at(i, c) = (*sol)[i];
        }
        ev.cx.d.set_block(k, std::move(blk));
    }
    if (!ev.cx.validate()) throw std::logic_error("eval_module: invalid complex");
    ev.basis_cols = QMatrix(m.space.total_dim(), s.total_dim());
    for (const auto& [k, mat] : cols)
        for (int c = 0; c < mat.cols(); ++c)
            for (int i = 0; i < mat.rows(); ++i)
                if (mat.at(i, c) != 0)
                    ev.basis_cols.at(m.space.flat_index(k, i), s.flat_index(k, c)) = mat.at(i, c);
    return ev;
}

GradedMap CatContext::eval_morphism(const GenList& src, const GenList& tgt, const GradedMap& phi,
                                    int j) const {
    EvalModule es = eval_module(src, j), et = eval_module(tgt, j);
    if (es.cx.space.total_dim() == 0 || et.cx.space.total_dim() == 0)
        return GradedMap::zero(es.cx.space, et.cx.space, phi.degree);
    QMatrix moved = phi.flat_matrix() * es.basis_cols;
    QMatrix q(et.cx.space.total_dim(), es.cx.space.total_dim());
    for (int c = 0; c < moved.cols(); ++c) {
        auto sol = solve(et.basis_cols, moved.col(c));
        if (!sol) throw std::logic_error("eval_morphism: image escapes the evaluated module");
        for (int i = 0; i < q.rows(); ++i) q.at(i, c) = (*sol)[i];
    }
    return graded_from_flat(es.cx.space, et.cx.space, phi.degree, q);
}

}  // namespace dgcell
