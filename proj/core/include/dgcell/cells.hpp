#pragma once

#include <stdexcept>

#include "dgcell/homotopy.hpp"

namespace dgcell {

enum class Side { L, R, J };

/* A computed result contradicting the closed-form classification.  By design
 * this signals an implementation bug, never data. */
class ClassificationContradiction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* F ⪯ G in the weak preorder: some composite (H∘F, F∘H, or H∘F∘H′ per side)
 * has G as a direct summand ignoring the differential.  H ranges over the
 * generators and identities. */
bool weak_leq(const CatContext& ctx, const Gen& f, const Gen& g, Side side);

/* Result of a bounded semi-decision: holds=false means "no witness found at
 * this depth", never a proof of falsehood. */
struct BoundedResult {
    bool holds = false;
    int depth = 0;
};

/* F ≤ G in the strong (dg) preorder, searched over twisted complexes with at
 * most `depth` entries built from the one-sided composite pool, ladder shifts,
 * and connection coefficients on a {−1,0,1} grid. */
BoundedResult strong_leq_bounded(const CatContext& ctx, const Gen& f, const Gen& g, Side side,
                                 int depth = 3);
/* Triangulated preorder: the same search with the homotopy-mode summand test. */
BoundedResult tri_leq_bounded(const CatContext& ctx, const Gen& f, const Gen& g, Side side,
                              int depth = 3);

struct CellStructure {
    std::vector<Gen> generators;
    /* weak relation matrices, rel[i][j] = generators[i] ⪯ generators[j] */
    std::vector<std::vector<bool>> rel_L, rel_R, rel_J;
    /* cell id per generator and canonical cell names ("J0", "J<i>", "L0:<e>", "R0:<e>") */
    std::vector<int> cell_L, cell_R, cell_J;
    std::vector<std::string> names_L, names_R, names_J;

    const std::vector<std::vector<bool>>& rel(Side s) const;
    const std::vector<int>& cell(Side s) const;
    const std::vector<std::string>& names(Side s) const;
};

/* Pairwise weak_leq + strongly-connected components, cross-checked against the
 * closed-form prediction; any mismatch throws ClassificationContradiction. */
CellStructure enumerate_cells(const CatContext& ctx);

/* Maximal dg ideal of the cell's generator-level 2-representation, given by
 * its slice in every ordered Hom space between cell members, with verdicts
 * filled in by cell_rep. */
struct MaxIdealDescriptor {
    std::string cell;
    std::vector<GenList> members;  // single-generator lists
    /* (i,j) -> degree -> subspace of Hom(F_i -> F_j) coordinates */
    std::map<std::pair<int, int>, std::map<int, Subspace>> slices;
    bool certified_maximal = false;

    /* filled by cell_rep */
    std::map<std::pair<int, int>, std::map<int, int>> quotient_dims;
    bool acyclic = false;
    bool equivalent_to_natural = false;
};

/* Cells addressed by name: "L0:<idempotent label>" or "J<i>" (1-based block of
 * a non-semisimple block).  Throws std::invalid_argument for other kinds. */
std::vector<MaxIdealDescriptor> maxspec(const CatContext& ctx, const std::string& cell);

/* Quotient Hom dimensions and verdicts for the chosen maximal ideal; the
 * direct acyclicity computation is cross-checked against the closed-form
 * criterion and a disagreement throws ClassificationContradiction. */
MaxIdealDescriptor cell_rep(const CatContext& ctx, const std::string& cell, int ideal_index = 0);

/* Two-sided cell containing the given left cell, with the non-annihilation
 * hypothesis verified (some product of members keeps a summand in the cell). */
std::string weak_apex(const CatContext& ctx, const CellStructure& cells, const std::string& left_cell);

struct ClassificationReport {
    CellStructure cells;
    std::vector<MaxIdealDescriptor> reps;  // one cell_rep per supported cell
    struct StrongCellInfo {
        std::vector<int> gen_indices;  // indices into cells.generators
        int weak_cell = -1;            // containing weak L-cell id
        int strong_maxspec = 0;
        int weak_maxspec = 0;
    };
    std::vector<StrongCellInfo> strong_cells;  // strong left cells at the given depth
    std::vector<std::string> issues;           // empty = all assertions passed
    bool ok() const { return issues.empty(); }
};

ClassificationReport verify_classification(const CatContext& ctx, int depth = 3);

}  // namespace dgcell
