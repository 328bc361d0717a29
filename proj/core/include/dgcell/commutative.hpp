#pragma once

#include <optional>
#include <string>

#include "dgcell/dg_algebra.hpp"
#include "dgcell/poly.hpp"

namespace dgcell {

/* One-object commutative mode: R is a finite-dimensional commutative dg
 * algebra acting on itself, and the cell 2-representations correspond to the
 * maximal ∂-stable ideals of R — one per local block, namely the largest
 * ∂-stable ideal inside the block's radical plus the other blocks. */
struct CommIdealDescriptor {
    std::string name;              // "m1", "m2", … in block order
    std::vector<Rat> idempotent;   // block idempotent, R coordinates
    Subspace ideal;                // maximal ∂-stable ideal of R, R coordinates
    int quotient_dim = 0;          // dim R − dim ideal
    bool acyclic = false;          // quotient acyclic: rad_∂ of the block ≠ its radical
};

AlgebraOps algebra_ops(const DgAlgebra& a);
bool is_commutative(const DgAlgebra& a);

/* Maximal ∂-stable ideals of R via local-block splitting (rational-root and
 * quadratic factorization built in, `hints` for higher degrees).  Throws
 * std::invalid_argument when R is not commutative; nullopt when some minimal
 * polynomial resists factorization. */
std::optional<std::vector<CommIdealDescriptor>> commutative_maxspec(const DgAlgebra& r,
                                                                    const std::vector<Poly>& hints = {});

}  // namespace dgcell
