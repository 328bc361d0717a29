#include "dgcell/dg_algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "dgcell/poly.hpp"

namespace dgcell {

std::vector<Rat> DgAlgebra::multiply(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    int n = dim();
    std::vector<Rat> r(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            Rat f = x[i] * y[j];
            const auto& sc = mult[i][j];
            for (int k = 0; k < n; ++k)
                if (sc[k] != 0) r[k] += f * sc[k];
        }
    }
    return r;
}

QMatrix DgAlgebra::left_mult(const std::vector<Rat>& x) const {
    int n = dim();
    QMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Rat> col = multiply(x, basis_element(j));
        for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

QMatrix DgAlgebra::right_mult(const std::vector<Rat>& x) const {
    int n = dim();
    QMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Rat> col = multiply(basis_element(j), x);
        for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

std::optional<int> DgAlgebra::element_degree(const std::vector<Rat>& x) const {
    std::optional<int> deg;
    for (int i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        if (deg && *deg != degrees[i]) return std::nullopt;
        deg = degrees[i];
    }
    return deg;
}

std::vector<Rat> DgAlgebra::basis_element(int i) const {
    std::vector<Rat> v(dim(), Rat(0));
    v[i] = 1;
    return v;
}

GradedVectorSpace ElementBasis::graded_space() const {
    GradedVectorSpace v;
    for (int d : degs) v.dims[d] += 1;
    return v;
}

int ElementBasis::slice_index(int i) const {
    int idx = 0;
    for (int j = 0; j < i; ++j)
        if (degs[j] == degs[i]) ++idx;
    return idx;
}

Subspace ElementBasis::to_subspace(int ambient) const { return Subspace::span(ambient, vecs); }

ElementBasis basis_of_span(const DgAlgebra& a, const std::vector<std::vector<Rat>>& generators) {
    std::map<int, std::vector<std::vector<Rat>>> by_deg;
    for (const auto& g : generators) {
        bool zero = true;
        for (const auto& x : g) zero = zero && x == 0;
        if (zero) continue;
        auto deg = a.element_degree(g);
        if (!deg) throw std::invalid_argument("basis_of_span: non-homogeneous generator");
        by_deg[*deg].push_back(g);
    }
    ElementBasis out;
    for (const auto& [deg, gens] : by_deg) {
        Subspace s = Subspace::span(a.dim(), gens);
        for (int j = 0; j < s.dim(); ++j) {
            out.vecs.push_back(s.basis_vector(j));
            out.degs.push_back(deg);
        }
    }
    return out;
}

ElementBasis corner_basis(const DgAlgebra& a, const std::vector<Rat>& e, const std::vector<Rat>& f) {
    std::vector<std::vector<Rat>> gens;
    for (int i = 0; i < a.dim(); ++i) gens.push_back(a.multiply(a.multiply(e, a.basis_element(i)), f));
    return basis_of_span(a, gens);
}

Complex element_complex(const DgAlgebra& a, const ElementBasis& basis) {
    Complex c = Complex::with_zero_differential(basis.graded_space());
    if (basis.size() == 0) return c;
    QMatrix cols = QMatrix::from_cols(basis.vecs);
    for (int i = 0; i < basis.size(); ++i) {
        std::vector<Rat> dv = a.apply_diff(basis.vecs[i]);
        auto coords = solve(cols, dv);
        if (!coords) throw std::invalid_argument("element_complex: span not ∂-stable");
        int k = basis.degs[i];
        for (int j = 0; j < basis.size(); ++j) {
            if ((*coords)[j] == 0) continue;
            if (basis.degs[j] != k + 1) throw std::invalid_argument("element_complex: ∂ not of degree 1 on span");
            QMatrix blk = c.d.block(k);
            blk.at(basis.slice_index(j), basis.slice_index(i)) = (*coords)[j];
            c.d.set_block(k, blk);
        }
    }
    return c;
}

namespace {
bool vec_eq(const std::vector<Rat>& a, const std::vector<Rat>& b) { return a == b; }

bool vec_is_zero(const std::vector<Rat>& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

AlgebraOps ops_of(const DgAlgebra& a) {
    AlgebraOps ops;
    ops.n = a.dim();
    ops.unit = a.unit;
    ops.mul = [&a](const std::vector<Rat>& x, const std::vector<Rat>& y) { return a.multiply(x, y); };
    return ops;
}
}  // namespace

ValidationReport validate_algebra(const DgAlgebra& a, bool check_primitivity) {
    ValidationReport rep;
    int n = a.dim();
    if (static_cast<int>(a.degrees.size()) != n || static_cast<int>(a.mult.size()) != n ||
        static_cast<int>(a.unit.size()) != n || a.diff.rows() != n || a.diff.cols() != n) {
        rep.fail("shape mismatch between basis, degrees, mult table, unit or diff");
        return rep;
    }
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(a.mult[i].size()) != n) {
            rep.fail("mult table row " + a.labels[i] + " has wrong length");
            return rep;
        }

    /* grading of products */
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (a.mult[i][j][k] != 0 && a.degrees[k] != a.degrees[i] + a.degrees[j])
                    rep.fail("product " + a.labels[i] + "*" + a.labels[j] + " not homogeneous of degree " +
                             std::to_string(a.degrees[i] + a.degrees[j]));
    /* unit */
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> b = a.basis_element(i);
        if (!vec_eq(a.multiply(a.unit, b), b)) rep.fail("unit fails 1*" + a.labels[i]);
        if (!vec_eq(a.multiply(b, a.unit), b)) rep.fail("unit fails " + a.labels[i] + "*1");
    }
    /* associativity */
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<Rat> l = a.multiply(a.multiply(a.basis_element(i), a.basis_element(j)), a.basis_element(k));
                std::vector<Rat> r = a.multiply(a.basis_element(i), a.multiply(a.basis_element(j), a.basis_element(k)));
                if (!vec_eq(l, r))
                    rep.fail("associativity fails on (" + a.labels[i] + "," + a.labels[j] + "," + a.labels[k] + ")");
            }
    /* ∂ raises degree by 1 */
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (a.diff.at(i, j) != 0 && a.degrees[i] != a.degrees[j] + 1)
                rep.fail("∂(" + a.labels[j] + ") has a component of degree != deg+1");
    /* ∂² = 0 */
    if (!(a.diff * a.diff).is_zero()) rep.fail("∂² != 0");
    /* Leibniz */
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> lhs = a.apply_diff(a.multiply(a.basis_element(i), a.basis_element(j)));
            std::vector<Rat> t1 = a.multiply(a.apply_diff(a.basis_element(i)), a.basis_element(j));
            std::vector<Rat> t2 = a.multiply(a.basis_element(i), a.apply_diff(a.basis_element(j)));
            Rat sign = (a.degrees[i] % 2 == 0) ? Rat(1) : Rat(-1);
            std::vector<Rat> rhs(n);
            for (int k = 0; k < n; ++k) rhs[k] = t1[k] + sign * t2[k];
            if (!vec_eq(lhs, rhs)) rep.fail("Leibniz fails on (" + a.labels[i] + "," + a.labels[j] + ")");
        }
    /* idempotents */
    if (a.idempotents.empty()) rep.fail("no idempotents listed");
    std::vector<Rat> sum(n, Rat(0));
    for (size_t s = 0; s < a.idempotents.size(); ++s) {
        const auto& e = a.idempotents[s];
        const std::string& el = a.idempotent_labels[s];
        for (int k = 0; k < n; ++k) sum[k] += e[k];
        auto deg = a.element_degree(e);
        if (vec_is_zero(e) || !deg || *deg != 0) rep.fail("idempotent " + el + " not homogeneous of degree 0");
        if (!vec_is_zero(a.apply_diff(e))) rep.fail("∂(" + el + ") != 0");
        for (size_t t = 0; t < a.idempotents.size(); ++t) {
            std::vector<Rat> prod = a.multiply(e, a.idempotents[t]);
            if (s == t ? !vec_eq(prod, e) : !vec_is_zero(prod))
                rep.fail("idempotents " + el + ", " + a.idempotent_labels[t] + " not orthogonal idempotent");
        }
    }
    if (!vec_eq(sum, a.unit)) rep.fail("idempotents do not sum to the unit");
    /* primitivity: no nontrivial idempotent among degree-0 cycles of e_iAe_i */
    if (rep.ok && check_primitivity) {
        for (size_t s = 0; s < a.idempotents.size(); ++s) {
            const auto& e = a.idempotents[s];
            ElementBasis corner = corner_basis(a, e, e);
            std::vector<std::vector<Rat>> deg0;
            for (int i = 0; i < corner.size(); ++i)
                if (corner.degs[i] == 0) deg0.push_back(corner.vecs[i]);
            Subspace cyc(a.dim());
            if (!deg0.empty()) {
                QMatrix cols = QMatrix::from_cols(deg0);
                QMatrix ker = kernel_basis(a.diff * cols);
                std::vector<std::vector<Rat>> cycles;
                for (int j = 0; j < ker.cols(); ++j) cycles.push_back(cols.apply(ker.col(j)));
                cyc = Subspace::span(a.dim(), cycles);
            }
            if (cyc.dim() > 0) {
                std::vector<std::vector<Rat>> cb;
                for (int j = 0; j < cyc.dim(); ++j) cb.push_back(cyc.basis_vector(j));
                ElementBasis zb = basis_of_span(a, cb);
                InducedAlgebra sub = induced_algebra(a, zb, e, "Z0corner");
                bool exhaustive = true;
                auto bad = find_nontrivial_idempotent(sub.alg, 0, 4, &exhaustive);
                if (bad) rep.fail("idempotent " + a.idempotent_labels[s] + " is not primitive");
            }
        }
    }
    return rep;
}

Subspace radical(const DgAlgebra& a) {
    int n = a.dim();
    std::vector<QMatrix> lm;
    for (int i = 0; i < n; ++i) lm.push_back(a.left_mult(a.basis_element(i)));
    QMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QMatrix p = lm[i] * lm[j];
            Rat tr(0);
            for (int k = 0; k < n; ++k) tr += p.at(k, k);
            gram.at(i, j) = tr;
        }
    return Subspace::span(kernel_basis(gram));
}

namespace {
void check_ideal(const DgAlgebra& a, const Subspace& i0) {
    for (int j = 0; j < i0.dim(); ++j) {
        std::vector<Rat> x = i0.basis_vector(j);
        for (int i = 0; i < a.dim(); ++i) {
            if (!i0.contains(a.multiply(a.basis_element(i), x)) || !i0.contains(a.multiply(x, a.basis_element(i))))
                throw std::invalid_argument("rad_dg: input is not a two-sided ideal");
        }
    }
}
}  // namespace

Subspace rad_dg(const DgAlgebra& a, const Subspace& i0) {
    check_ideal(a, i0);
    Subspace cur = i0;
    for (;;) {
        if (cur.dim() == 0) return cur;
        /* next = {x in cur : ∂x in cur} */
        QMatrix b = cur.basis();
        QMatrix db = a.diff * b;
        /* quotient coordinates: complement of cur */
        Subspace comp = cur.complement();
        QMatrix full = b.hstack(comp.basis());
        QMatrix inv = *inverse(full);
        /* rows of inv past dim(cur) give the quotient projection */
        QMatrix proj(comp.dim(), a.dim());
        for (int i = 0; i < comp.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) proj.at(i, j) = inv.at(cur.dim() + i, j);
        QMatrix cond = proj * db;
        QMatrix ker = kernel_basis(cond);
        std::vector<std::vector<Rat>> vecs;
        for (int j = 0; j < ker.cols(); ++j) vecs.push_back(b.apply(ker.col(j)));
        Subspace next = Subspace::span(a.dim(), vecs);
        if (next.dim() == cur.dim()) return next;
        cur = next;
    }
}

Subspace center(const DgAlgebra& a) {
    int n = a.dim();
    QMatrix stacked(0, n);
    for (int i = 0; i < n; ++i) {
        QMatrix d = a.left_mult(a.basis_element(i)) - a.right_mult(a.basis_element(i));
        stacked = stacked.rows() == 0 ? d : stacked.vstack(d);
    }
    return Subspace::span(kernel_basis(stacked));
}

std::vector<Rat> InducedAlgebra::to_ambient(const std::vector<Rat>& local) const {
    std::vector<Rat> r(basis.vecs.empty() ? 0 : basis.vecs[0].size(), Rat(0));
    for (int i = 0; i < basis.size(); ++i)
        for (size_t k = 0; k < r.size(); ++k) r[k] += local[i] * basis.vecs[i][k];
    return r;
}

std::vector<Rat> InducedAlgebra::from_ambient(const std::vector<Rat>& ambient) const {
    if (basis.size() == 0) {
        if (!vec_is_zero(ambient)) throw std::invalid_argument("from_ambient: vector outside span");
        return {};
    }
    auto sol = solve(QMatrix::from_cols(basis.vecs), ambient);
    if (!sol) throw std::invalid_argument("from_ambient: vector outside span");
    return *sol;
}

InducedAlgebra induced_algebra(const DgAlgebra& a, const ElementBasis& basis, const std::vector<Rat>& unit,
                               const std::string& name) {
    InducedAlgebra out;
    out.basis = basis;
    int m = basis.size();
    DgAlgebra& s = out.alg;
    s.name = name;
    for (int i = 0; i < m; ++i) s.labels.push_back(name + "_b" + std::to_string(i));
    s.degrees = basis.degs;
    s.mult.assign(m, std::vector<std::vector<Rat>>(m));
    QMatrix cols = m > 0 ? QMatrix::from_cols(basis.vecs) : QMatrix(a.dim(), 0);
    auto coords = [&](const std::vector<Rat>& v) {
        auto sol = solve(cols, v);
        if (!sol) throw std::invalid_argument("induced_algebra: span not multiplicatively closed");
        return *sol;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s.mult[i][j] = coords(a.multiply(basis.vecs[i], basis.vecs[j]));
    s.unit = coords(unit);
    s.idempotent_labels = {name + "_unit"};
    s.idempotents = {s.unit};
    s.diff = QMatrix(m, m);
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> d = coords(a.apply_diff(basis.vecs[j]));
        for (int i = 0; i < m; ++i) s.diff.at(i, j) = d[i];
    }
    return out;
}

namespace {
/* degree-0 cycles of e_i A e_j as a column matrix */
QMatrix cycle_space(const DgAlgebra& a, const std::vector<Rat>& ei, const std::vector<Rat>& ej) {
    ElementBasis eb = corner_basis(a, ei, ej);
    std::vector<std::vector<Rat>> deg0;
    for (int i = 0; i < eb.size(); ++i)
        if (eb.degs[i] == 0) deg0.push_back(eb.vecs[i]);
    if (deg0.empty()) return QMatrix(a.dim(), 0);
    QMatrix cols = QMatrix::from_cols(deg0);
    QMatrix ker = kernel_basis(a.diff * cols);
    std::vector<std::vector<Rat>> cycles;
    for (int j = 0; j < ker.cols(); ++j) cycles.push_back(cols.apply(ker.col(j)));
    Subspace s = Subspace::span(a.dim(), cycles);
    return s.basis();
}

/* try one candidate a_elt: solve the linear system a·b = e_i, b·a = e_j for b */
bool try_witness(const DgAlgebra& alg, const std::vector<Rat>& a_elt, const QMatrix& zji,
                 const std::vector<Rat>& ei, const std::vector<Rat>& ej) {
    if (zji.cols() == 0) return false;
    QMatrix sys = (alg.left_mult(a_elt) * zji).vstack(alg.right_mult(a_elt) * zji);
    std::vector<Rat> rhs = ei;
    rhs.insert(rhs.end(), ej.begin(), ej.end());
    auto sol = solve(sys, rhs);
    return sol.has_value();
}
}  // namespace

IdempotentClasses idempotent_classes(const DgAlgebra& a, uint64_t seed) {
    int s = static_cast<int>(a.idempotents.size());
    IdempotentClasses out;
    std::vector<int> parent(s);
    for (int i = 0; i < s; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::mt19937_64 rng(seed);

    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            QMatrix zij = cycle_space(a, a.idempotents[i], a.idempotents[j]);
            QMatrix zji = cycle_space(a, a.idempotents[j], a.idempotents[i]);
            if (zij.cols() == 0 || zji.cols() == 0) continue;
            bool eq = false;
            for (int t = 0; t < 64 && !eq; ++t) {
                std::vector<Rat> coeff(zij.cols());
                for (auto& c : coeff) c = Rat(static_cast<long>(rng() % 5) - 2);
                eq = try_witness(a, zij.apply(coeff), zji, a.idempotents[i], a.idempotents[j]);
            }
            if (!eq && zij.cols() <= 4) {
                std::vector<int> g(zij.cols(), 0);
                for (;;) {
                    std::vector<Rat> coeff(zij.cols());
                    for (int k = 0; k < zij.cols(); ++k) coeff[k] = Rat(g[k] - 1);
                    if (try_witness(a, zij.apply(coeff), zji, a.idempotents[i], a.idempotents[j])) {
                        eq = true;
                        break;
                    }
                    int k = 0;
                    while (k < zij.cols() && ++g[k] == 3) g[k++] = 0;
                    if (k == zij.cols()) break;
                }
            } else if (!eq) {
                out.undetermined = true;
            }
            if (eq) parent[find(i)] = find(j);
        }

    std::map<int, int> root_to_class;
    out.class_of.resize(s);
    for (int i = 0; i < s; ++i) {
        int r = find(i);
        if (!root_to_class.count(r)) {
            root_to_class[r] = static_cast<int>(out.representatives.size());
            out.representatives.push_back(i);
        }
        out.class_of[i] = root_to_class[r];
    }
    return out;
}

BlockDecomposition blocks(const DgAlgebra& a) {
    int s = static_cast<int>(a.idempotents.size());
    std::vector<int> parent(s);
    for (int i = 0; i < s; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            if (corner_basis(a, a.idempotents[i], a.idempotents[j]).size() > 0 ||
                corner_basis(a, a.idempotents[j], a.idempotents[i]).size() > 0)
                parent[find(i)] = find(j);
        }
    BlockDecomposition out;
    std::map<int, int> root_to_block;
    out.block_of.resize(s);
    for (int i = 0; i < s; ++i) {
        int r = find(i);
        if (!root_to_block.count(r)) {
            root_to_block[r] = out.count++;
            out.central_idempotents.push_back(std::vector<Rat>(a.dim(), Rat(0)));
        }
        out.block_of[i] = root_to_block[r];
        for (int k = 0; k < a.dim(); ++k) out.central_idempotents[out.block_of[i]][k] += a.idempotents[i][k];
    }
    Subspace rad = radical(a);
    out.semisimple.assign(out.count, true);
    for (int j = 0; j < rad.dim(); ++j) {
        std::vector<Rat> r = rad.basis_vector(j);
        for (int b = 0; b < out.count; ++b) {
            std::vector<Rat> piece = a.multiply(a.multiply(out.central_idempotents[b], r), out.central_idempotents[b]);
            if (!vec_is_zero(piece)) out.semisimple[b] = false;
        }
    }
    return out;
}

std::optional<std::vector<Rat>> find_nontrivial_idempotent(const DgAlgebra& a, uint64_t seed, int max_grid_dim,
                                                           bool* exhaustive) {
    int n = a.dim();
    if (exhaustive) *exhaustive = true;
    auto is_idem = [&](const std::vector<Rat>& x) {
        if (vec_is_zero(x) || x == a.unit) return false;
        return a.multiply(x, x) == x;
    };
    /* commutative case: exact via minimal-polynomial splitting */
    bool commutative = true;
    for (int i = 0; i < n && commutative; ++i)
        for (int j = i + 1; j < n && commutative; ++j)
            commutative = a.multiply(a.basis_element(i), a.basis_element(j)) ==
                          a.multiply(a.basis_element(j), a.basis_element(i));
    if (commutative) {
        auto split = split_commutative(ops_of(a));
        if (split) {
            for (const auto& e : *split)
                if (is_idem(e)) return e;
            return std::nullopt;
        }
        if (exhaustive) *exhaustive = false;
    }
    if (n <= max_grid_dim) {
        std::vector<int> g(n, 0);
        for (;;) {
            std::vector<Rat> x(n);
            for (int k = 0; k < n; ++k) x[k] = Rat(g[k] - 1);
            if (is_idem(x)) return x;
            int k = 0;
            while (k < n && ++g[k] == 3) g[k++] = 0;
            if (k == n) return std::nullopt;
        }
    }
    if (exhaustive) *exhaustive = false;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 256; ++t) {
        std::vector<Rat> x(n);
        for (auto& c : x) c = Rat(static_cast<long>(rng() % 5) - 2);
        if (is_idem(x)) return x;
    }
    return std::nullopt;
}

}  // namespace dgcell
