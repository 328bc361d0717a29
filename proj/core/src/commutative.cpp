#include "dgcell/commutative.hpp"

#include <stdexcept>

namespace dgcell {

AlgebraOps algebra_ops(const DgAlgebra& a) {
    AlgebraOps ops;
    ops.n = a.dim();
    ops.unit = a.unit;
    ops.mul = [&a](const std::vector<Rat>& x, const std::vector<Rat>& y) { return a.multiply(x, y); };
    return ops;
}

bool is_commutative(const DgAlgebra& a) {
    int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.mult[i][j] != a.mult[j][i]) return false;
    return true;
}

std::optional<std::vector<CommIdealDescriptor>> commutative_maxspec(const DgAlgebra& r,
                                                                    const std::vector<Poly>& hints) {
    if (!is_commutative(r)) throw std::invalid_argument("commutative_maxspec: algebra is not commutative");
    AlgebraOps ops = algebra_ops(r);
    auto idems = split_commutative(ops, hints);
    if (!idems) return std::nullopt;

    int n = r.dim();
    std::vector<CommIdealDescriptor> out;
    for (size_t b = 0; b < idems->size(); ++b) {
        const std::vector<Rat>& c = (*idems)[b];
        /* local block B = cR */
        std::vector<std::vector<Rat>> gens;
        for (int i = 0; i < n; ++i) gens.push_back(r.multiply(c, r.basis_element(i)));
        ElementBasis bb = basis_of_span(r, gens);
        InducedAlgebra ind = induced_algebra(r, bb, c, r.name + "_m" + std::to_string(b + 1));
        Subspace rad = radical(ind.alg);
        Subspace rd = rad_dg(ind.alg, rad);

        CommIdealDescriptor d;
        d.name = "m" + std::to_string(b + 1);
        d.idempotent = c;
        d.acyclic = rd.dim() != rad.dim();
        /* ideal = rad_∂(B) ⊕ (1−c)R; both summands are ∂-stable since ∂ kills
         * idempotents of a commutative dg algebra */
        std::vector<std::vector<Rat>> vecs;
        for (int j = 0; j < rd.dim(); ++j) vecs.push_back(ind.to_ambient(rd.basis_vector(j)));
        std::vector<Rat> rest(r.unit);
        for (int i = 0; i < n; ++i) rest[i] -= c[i];
        for (int i = 0; i < n; ++i) vecs.push_back(r.multiply(rest, r.basis_element(i)));
        d.ideal = Subspace::span(n, vecs);
        d.quotient_dim = n - d.ideal.dim();
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace dgcell
