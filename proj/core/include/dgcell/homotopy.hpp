#pragma once

#include "dgcell/twisted.hpp"

namespace dgcell {

/* H⁰ of the Hom complex: degree-0 cycles modulo boundaries, with representing
 * cycles for the classes. */
struct H0 {
    int dim = 0;
    std::vector<GradedMap> basis;
};
H0 h0_hom(const TwistedComplex& x, const TwistedComplex& y);

/* f must be a degree-0 cycle Tot(x) -> Tot(y); true iff f = ∂h. */
bool is_null_homotopic(const TwistedComplex& x, const TwistedComplex& y, const GradedMap& f);

/* id_X is a boundary in End(X). */
bool is_acyclic_object(const TwistedComplex& x);

enum class SummandMode { IgnoreDifferential, Dg, Homotopy };
enum class Verdict { True, False, Inconclusive };

/* Degree-0 endomorphism ring of Tot(g) as an abstract algebra: either the full
 * degree-0 part of End(g) or its subring of cycles.  `basis` columns are the
 * coordinates of the ring basis inside the degree-0 slice of End(g). */
struct EndoRing {
    HomSpace hom;
    bool cycles = false;
    QMatrix basis;
    DgAlgebra ring;  // degrees all 0, zero differential
};
EndoRing endo_ring(const TwistedComplex& g, bool cycles);

/* Span of the composites p∘q, p : X -> G, q : G -> X, per degree of End(G),
 * with p, q unrestricted or restricted to cycles.  Coordinates are taken in
 * the degree slices of End(G) (cycle slices in the restricted variant). */
struct TraceIdealSlice {
    bool cycles_only = false;
    std::map<int, Subspace> span;  // degree -> subspace; absent degree = zero
};
TraceIdealSlice trace_ideal_slice(const TwistedComplex& g, const TwistedComplex& x, bool cycles_only);

/* The endomorphism ring (degree-0 part; degree-0 cycles in dg mode) modulo its
 * radical is a division ring. */
bool has_local_endo_ring(const TwistedComplex& g, SummandMode mode);

/* G is a direct summand of X in the declared sense.  Modes: composites p∘q
 * unrestricted (ignore-∂), restricted to cycles (dg), or cycles modulo
 * boundaries of End(G) (homotopy).  Requires a local endomorphism ring of G in
 * the matching sense; otherwise the verdict is Inconclusive. */
Verdict dg_summand_test(const TwistedComplex& g, const TwistedComplex& x, SummandMode mode);

/* Precomputed End(G) data for running the same summand test against many
 * candidates X. */
struct SummandTester {
    TwistedComplex g;
    SummandMode mode = SummandMode::Dg;
    bool local = false;
    EndoRing ring;
    Subspace rad;
    Subspace boundaries;  // degree-0 boundaries in ring coordinates (homotopy mode)

    Verdict test(const TwistedComplex& x) const;
};
SummandTester make_summand_tester(const TwistedComplex& g, SummandMode mode);

}  // namespace dgcell
