#pragma once

#include <string>
#include <vector>

#include "dgcell/dg_algebra.hpp"
#include "dgcell/poly.hpp"

namespace dgcell {

/* Parsed and compiled algebra specification.  The input is a single JSON
 * document with a "form" discriminator:
 *
 *   { "field": "Q", "form": "table",
 *     "name": "...", "basis": [...], "degrees": [...],
 *     "mult": [[[rat,...],...],...],        // mult[i][j] = coefficients of b_i·b_j
 *     "unit": [rat,...],
 *     "idempotents": [{"label": "...", "vector": [rat,...]}, ...],
 *     "diff": [[rat,...],...],              // diff[i][j] = coefficient of b_i in ∂b_j
 *     "commutative": false,
 *     "factorizations": [[rat,...], ...] }  // monic factor hints, ascending coefficients
 *
 *   { "field": "Q", "form": "quiver",
 *     "name": "...", "vertices": [...],
 *     "arrows": [{"name","source","target","degree", "diff": combo?}, ...],
 *     "relations": [combo, ...],
 *     "truncation": N }
 *
 * combo := [{"coeff": rat, "path": [names...]}, ...] with paths written in
 * product order (leftmost factor applied last); a single vertex name is the
 * trivial path.  Rationals are strings "p/q" (or "p") or JSON integers.
 *
 * Quiver specs expand paths up to the truncation bound and reduce modulo the
 * two-sided relation ideal by linear algebra on the doubled path space; every
 * path longer than the bound must lie in the visible ideal span (otherwise the
 * algebra is reported as not finite-dimensional at this truncation). */
struct AlgebraSpec {
    DgAlgebra algebra;
    std::vector<Poly> factor_hints;
    bool commutative_mode = false;
    std::string fingerprint;  // FNV-1a 64-bit hash of the compiled algebra, hex
};

/* Both throw std::invalid_argument with an itemized message on schema
 * violations, validation failures, or infinite-dimension detection. */
AlgebraSpec parse_algebra_spec_text(const std::string& text);
AlgebraSpec parse_algebra_spec(const std::string& path);

std::string algebra_fingerprint(const DgAlgebra& a);

}  // namespace dgcell
