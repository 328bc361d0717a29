#pragma once

#include <vector>

#include "dgcell/bimodule.hpp"

namespace dgcell {

/* One entry of a one-sided twisted complex: a formal composite of generators
 * together with a shift.  Entries with an empty GenList are zero and are
 * removed by tc_normalize. */
struct TCEntry {
    GenList gens;
    int shift = 0;
    bool operator==(const TCEntry&) const = default;
};

/* One-sided twisted complex: formal sum of shifted (composites of) generator
 * 1-morphisms with a strictly upper-triangular degree-1 connection, i.e.
 * alpha[i][j] : entry j -> entry i may be nonzero only for i < j.  The
 * Maurer-Cartan condition is checked as D² = 0 on the total bimodule. */
struct TwistedComplex {
    const CatContext* ctx = nullptr;
    std::vector<TCEntry> entries;
    std::vector<std::vector<GradedMap>> alpha;
};

TwistedComplex tc_zero(const CatContext& ctx);
TwistedComplex tc_single(const CatContext& ctx, const GenList& gens, int shift = 0);
/* entries as given, zero connection */
TwistedComplex tc_from_entries(const CatContext& ctx, const std::vector<TCEntry>& entries);

/* Total dg bimodule: direct sum of the shifted entry realizations with the
 * connection added to the differential. */
struct TotData {
    Bimodule bim;
    std::vector<Bimodule> parts;
    std::vector<std::map<int, int>> offsets;  // per entry: degree -> slice offset in Tot

    GradedMap include(int i) const;
    GradedMap project(int i) const;
};

TotData tot(const TwistedComplex& x);

/* MC condition, triangularity, shapes, and bimodule identities on Tot */
std::vector<std::string> validate_tc(const TwistedComplex& x);

TwistedComplex tc_normalize(const TwistedComplex& x);  // drop zero entries
bool tc_equal(const TwistedComplex& a, const TwistedComplex& b);  // data equality after normalization

TwistedComplex tc_shift(const TwistedComplex& x, int t);
TwistedComplex tc_direct_sum(const TwistedComplex& a, const TwistedComplex& b);

/* Cone of a degree-0 cycle f : Tot(x) -> Tot(y): entries of y followed by the
 * entries of x shifted by one, connection [[α_y, f],[0, −α_x]]. */
TwistedComplex tc_cone(const TwistedComplex& x, const TwistedComplex& y, const GradedMap& f_tot);

/* Strict horizontal composition: entries are the pairwise composites of the
 * formal generator lists, ordered lexicographically, with the connection given
 * by whiskering the two connections.  Strictly associative and unital as data. */
TwistedComplex tc_hcompose(const TwistedComplex& x, const TwistedComplex& y);

/* Expansion of composite entries into generator entries P(e,f)⟨t−deg z⟩, one
 * per adapted-basis element z of the middle slice complex, conjugating the
 * differential by the explicit isomorphism x⊗y ↦ (−1)^{|z||x|} x⊗z⊗y. */
struct Expansion {
    TwistedComplex tc;
    QMatrix phi;  // flat degree-0 isomorphism Tot(tc) -> Tot(original)
};
Expansion tc_expand_full(const TwistedComplex& x);
TwistedComplex tc_expand(const TwistedComplex& x);

/* generator-level horizontal composition, landing in generator entries */
TwistedComplex hcompose(const CatContext& ctx, const Gen& f, const Gen& g);

/* Hom complex between twisted complexes, computed on the total bimodules. */
HomSpace tc_hom(const TwistedComplex& x, const TwistedComplex& y);

/* dg idempotent splitting for a degree-0 chain idempotent on Tot(x).  When e
 * is the projection onto a subset of entries (so the splitting already exists
 * among twisted complexes), `internal` is set and `sub` holds that complex;
 * the explicit image bimodule with its inclusion/projection is always filled. */
struct Completion {
    bool internal = false;
    TwistedComplex sub;
    Bimodule bim;
    GradedMap incl, proj;
};
Completion split_idempotent(const TwistedComplex& x, const GradedMap& e_tot);

}  // namespace dgcell
