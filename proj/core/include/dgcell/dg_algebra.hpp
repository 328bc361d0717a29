#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgcell/graded.hpp"
#include "dgcell/matrix.hpp"

namespace dgcell {

/* Finite-dimensional dg algebra over Q given by structure constants on a
 * homogeneous basis, a unit, a list of primitive orthogonal idempotents with
 * ∂e = 0, and the matrix of the degree-+1 derivation. */
struct DgAlgebra {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::vector<std::vector<std::vector<Rat>>> mult;  // mult[i][j] = coefficients of b_i * b_j
    std::vector<Rat> unit;
    std::vector<std::string> idempotent_labels;
    std::vector<std::vector<Rat>> idempotents;
    QMatrix diff;  // column j = ∂(b_j)

    int dim() const { return static_cast<int>(labels.size()); }

    std::vector<Rat> multiply(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
    QMatrix left_mult(const std::vector<Rat>& x) const;
    QMatrix right_mult(const std::vector<Rat>& x) const;
    std::vector<Rat> apply_diff(const std::vector<Rat>& x) const { return diff.apply(x); }

    /* Degree of a homogeneous element; nullopt for 0 or non-homogeneous. */
    std::optional<int> element_degree(const std::vector<Rat>& x) const;
    std::vector<Rat> basis_element(int i) const;
};

/* Ordered list of homogeneous elements spanning a subspace, with degrees. */
struct ElementBasis {
    std::vector<std::vector<Rat>> vecs;
    std::vector<int> degs;

    int size() const { return static_cast<int>(vecs.size()); }
    GradedVectorSpace graded_space() const;
    /* index of the i-th vector inside its degree slice of graded_space() */
    int slice_index(int i) const;
    Subspace to_subspace(int ambient) const;
};

/* Canonical homogeneous basis of the span of homogeneous generators, ordered
 * by degree then echelon position. */
ElementBasis basis_of_span(const DgAlgebra& a, const std::vector<std::vector<Rat>>& generators);
/* e A f for idempotent (coefficient-vector) e, f. */
ElementBasis corner_basis(const DgAlgebra& a, const std::vector<Rat>& e, const std::vector<Rat>& f);
/* The middle factor complex (fAe' and friends): differential of A restricted. */
Complex element_complex(const DgAlgebra& a, const ElementBasis& basis);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(const std::string& what) {
        ok = false;
        issues.push_back(what);
    }
};

/* check_primitivity is disabled for the one-object commutative mode, where the
 * unit is deliberately listed as the only (possibly non-primitive) idempotent. */
ValidationReport validate_algebra(const DgAlgebra& a, bool check_primitivity = true);

/* Largest nilpotent ideal via the trace-form kernel (char 0). */
Subspace radical(const DgAlgebra& a);
/* Largest ∂-stable ideal contained in i0, by iterating I ← {x∈I : ∂x∈I}. */
Subspace rad_dg(const DgAlgebra& a, const Subspace& i0);
Subspace center(const DgAlgebra& a);

/* Restriction of A to a multiplicatively closed homogeneous subspace with the
 * given unit; the inclusion matrix recovers ambient coordinates. */
struct InducedAlgebra {
    DgAlgebra alg;
    ElementBasis basis;
    std::vector<Rat> to_ambient(const std::vector<Rat>& local) const;
    std::vector<Rat> from_ambient(const std::vector<Rat>& ambient) const;  // throws if outside
};

InducedAlgebra induced_algebra(const DgAlgebra& a, const ElementBasis& basis, const std::vector<Rat>& unit,
                               const std::string& name);

struct IdempotentClasses {
    std::vector<int> class_of;        // idempotent index -> class id (class ids are 0..)
    std::vector<int> representatives; // lowest idempotent index per class
    bool undetermined = false;        // some pairwise verdict hit the search bound
};

IdempotentClasses idempotent_classes(const DgAlgebra& a, uint64_t seed = 0);

struct BlockDecomposition {
    int count = 0;
    std::vector<int> block_of;                     // idempotent index -> block id
    std::vector<bool> semisimple;                  // per block
    std::vector<std::vector<Rat>> central_idempotents;  // per block
};

BlockDecomposition blocks(const DgAlgebra& a);

/* Grid/sampling search for an idempotent other than 0 and the unit.
 * Exhaustive over coefficients {−1,0,1} for dim ≤ max_grid_dim; above that a
 * sampled search only (a nullopt is then inconclusive). */
std::optional<std::vector<Rat>> find_nontrivial_idempotent(const DgAlgebra& a, uint64_t seed = 0,
                                                           int max_grid_dim = 4, bool* exhaustive = nullptr);

}  // namespace dgcell
