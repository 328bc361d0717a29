#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <dgcell/twisted.hpp>

#include <algorithm>

#include "doctest.h"
#include "test_algebras.hpp"

using namespace dgcell;

namespace {

TwistedComplex cone_of_identity(const TwistedComplex& x) {
    return tc_cone(x, x, GradedMap::identity(tot(x).bim.space));
}

/* a degree-0 cycle in the Hom complex, when one exists */
GradedMap some_cycle(const HomSpace& h) {
    QMatrix k = kernel_basis(h.carrier.d.block(0));
    REQUIRE(k.cols() > 0);
    return h.from_coords(0, k.col(0));
}

std::vector<int> entry_shifts(const TwistedComplex& x) {
    std::vector<int> s;
    for (const auto& e : tc_normalize(x).entries) s.push_back(e.shift);
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("singles, composites, shifts and sums satisfy Maurer-Cartan") {
    for (const auto& alg : testalg::acceptance_algebras()) {
        CAPTURE(alg.name);
        CatContext ctx(alg);
        for (const Gen& g : ctx.generators()) {
            TwistedComplex x = tc_single(ctx, {g});
            CHECK(validate_tc(x).empty());
            CHECK(validate_tc(tc_shift(x, -2)).empty());
            for (const Gen& h : ctx.generators()) {
                GenList c = ctx.compose_lists({g}, {h});
                if (c.empty()) continue;
                TwistedComplex y = tc_from_entries(ctx, {{c, 1}});
                CHECK(validate_tc(y).empty());
                CHECK(validate_tc(tc_direct_sum(x, y)).empty());
            }
        }
    }
}

TEST_CASE("normalization drops zero entries and shift round-trips") {
    CatContext ctx(testalg::qxq());
    Gen p11 = Gen::proj(0, 0), p22 = Gen::proj(1, 1);
    /* P(e1,e1)∘P(e2,e2) has a zero corner slice, so the entry is zero */
    TwistedComplex x = tc_from_entries(ctx, {{{p11}, 0}, {ctx.compose_lists({p11}, {p22}), 0}});
    TwistedComplex n = tc_normalize(x);
    CHECK(n.entries.size() == 1);
    CHECK(tc_equal(x, tc_single(ctx, {p11})));
    TwistedComplex c = cone_of_identity(tc_single(ctx, {p11}));
    CHECK(tc_equal(tc_shift(tc_shift(c, 1), -1), c));
    CHECK_FALSE(tc_equal(tc_shift(c, 1), c));
}

TEST_CASE("tc_hom on singles agrees with the generator Hom oracle") {
    for (const auto& alg : {testalg::lambda0(), testalg::a2()}) {
        CatContext ctx(alg);
        for (const Gen& f : ctx.generators())
            for (const Gen& g : ctx.generators()) {
                HomSpace direct = ctx.hom({f}, {g});
                HomSpace via_tc = tc_hom(tc_single(ctx, {f}), tc_single(ctx, {g}));
                CHECK(via_tc.carrier.space == direct.carrier.space);
            }
    }
}

TEST_CASE("cones are twisted complexes; the cone of the identity is contractible") {
    for (const auto& alg : {testalg::lambda0(), testalg::a2()}) {
        CAPTURE(alg.name);
        CatContext ctx(alg);
        for (const Gen& g : ctx.generators()) {
            TwistedComplex x = tc_single(ctx, {g});
            TwistedComplex c = cone_of_identity(x);
            CHECK(validate_tc(c).empty());
            REQUIRE(c.entries.size() == 2);
            CHECK(c.entries[1].shift == c.entries[0].shift + 1);
            CHECK_FALSE(c.alpha[0][1].is_zero());
            HomSpace endos = tc_hom(c, c);
            for (const auto& [deg, h] : cohomology_all(endos.carrier)) {
                CAPTURE(deg);
                CHECK(h == 0);
            }
        }
    }
}

TEST_CASE("cone of a non-trivial cycle and rejection of non-chain maps") {
    CatContext ctx(testalg::lambda0());
    Gen p = Gen::proj(0, 0);
    TwistedComplex x = tc_single(ctx, {p});
    /* multiplication by x on P(e,e) = Ae ⊗ eA */
    std::vector<Rat> xe = testalg::unitvec(2, 1), e = testalg::unitvec(2, 0);
    GradedMap mx = ctx.carrier_map_pp(p, p, xe, e);
    TwistedComplex c = tc_cone(x, x, mx);
    CHECK(validate_tc(c).empty());
    CHECK_FALSE(c.alpha[0][1].is_zero());

    CatContext ac(testalg::lambda_ac());
    TwistedComplex y = tc_single(ac, {Gen::proj(0, 0)});
    GradedVectorSpace sp = tot(y).bim.space;
    GradedMap bad = GradedMap::zero(sp, sp, 0);
    bad.set_block(0, QMatrix::identity(sp.dim(0)));
    CHECK_THROWS_AS(tc_cone(y, y, bad), std::invalid_argument);
    CHECK_THROWS_AS(tc_cone(y, y, GradedMap::zero(sp, sp, 1)), std::invalid_argument);
}

TEST_CASE("validate_tc flags lower-triangular connections") {
    CatContext ctx(testalg::lambda0());
    TwistedComplex c = cone_of_identity(tc_single(ctx, {Gen::proj(0, 0)}));
    TwistedComplex bad = c;
    bad.alpha[1][0] = shift(c.alpha[0][1], -1, 1);
    CHECK_FALSE(validate_tc(bad).empty());
}

TEST_CASE("horizontal composition preserves Maurer-Cartan, including both connections nonzero") {
    for (const auto& alg : {testalg::lambda0(), testalg::a2()}) {
        CAPTURE(alg.name);
        CatContext ctx(alg);
        std::vector<Gen> projs;
        for (const Gen& g : ctx.generators())
            if (g.kind == Gen::Kind::Projective) projs.push_back(g);
        for (const Gen& f : projs)
            for (const Gen& g : projs)
                for (int tf : {0, 1})
                    for (int tg : {-1, 0}) {
                        CAPTURE(tf);
                        CAPTURE(tg);
                        TwistedComplex cf = cone_of_identity(tc_shift(tc_single(ctx, {f}), tf));
                        TwistedComplex cg = cone_of_identity(tc_shift(tc_single(ctx, {g}), tg));
                        CHECK(validate_tc(tc_hcompose(cf, cg)).empty());
                        CHECK(validate_tc(tc_hcompose(cf, tc_single(ctx, {g}, tg))).empty());
                        CHECK(validate_tc(tc_hcompose(tc_single(ctx, {f}, tf), cg)).empty());
                    }
    }
    /* three-entry factors built as a cone over a cone */
    CatContext ctx(testalg::lambda0());
    Gen p = Gen::proj(0, 0);
    TwistedComplex c1 = cone_of_identity(tc_single(ctx, {p}));
    GradedMap cyc = some_cycle(tc_hom(tc_single(ctx, {p}), c1));
    TwistedComplex c2 = tc_cone(tc_single(ctx, {p}), c1, cyc);
    REQUIRE(c2.entries.size() == 3);
    CHECK(validate_tc(c2).empty());
    CHECK(validate_tc(tc_hcompose(c2, c1)).empty());
    CHECK(validate_tc(tc_hcompose(c1, c2)).empty());
}

TEST_CASE("horizontal composition is strictly associative and unital") {
    CatContext ctx(testalg::a2());
    std::vector<Gen> gens = ctx.generators();
    for (const Gen& f : gens)
        for (const Gen& g : gens)
            for (const Gen& h : gens) {
                TwistedComplex F = tc_single(ctx, {f}), G = tc_single(ctx, {g}), H = tc_single(ctx, {h});
                CHECK(tc_equal(tc_hcompose(tc_hcompose(F, G), H), tc_hcompose(F, tc_hcompose(G, H))));
            }
    /* with nonzero connections and mixed shifts */
    TwistedComplex A = cone_of_identity(tc_single(ctx, {Gen::proj(0, 1)}));
    TwistedComplex B = cone_of_identity(tc_shift(tc_single(ctx, {Gen::proj(1, 0)}), 1));
    TwistedComplex C = cone_of_identity(tc_shift(tc_single(ctx, {Gen::proj(0, 0)}), -1));
    CHECK(validate_tc(tc_hcompose(tc_hcompose(A, B), C)).empty());
    CHECK(tc_equal(tc_hcompose(tc_hcompose(A, B), C), tc_hcompose(A, tc_hcompose(B, C))));

    TwistedComplex one = tc_single(ctx, {Gen::id(0)});
    for (const TwistedComplex& X : {A, B, C}) {
        CHECK(tc_equal(tc_hcompose(one, X), X));
        CHECK(tc_equal(tc_hcompose(X, one), X));
    }
}

TEST_CASE("expansion of composite entries") {
    SUBCASE("lambda0: P∘P splits into two untwisted copies of P") {
        CatContext ctx(testalg::lambda0());
        Gen p = Gen::proj(0, 0);
        TwistedComplex comp = tc_from_entries(ctx, {{{p, p}, 0}});
        Expansion exp = tc_expand_full(comp);
        REQUIRE(exp.tc.entries.size() == 2);
        for (const auto& e : exp.tc.entries) {
            CHECK(e.gens == GenList{p});
            CHECK(e.shift == 0);
        }
        CHECK(exp.tc.alpha[0][1].is_zero());
        CHECK(validate_tc(exp.tc).empty());
        int n = tot(comp).bim.space.total_dim();
        CHECK(exp.phi.rows() == n);
        CHECK(rank(exp.phi) == n);
        CHECK(tc_equal(hcompose(ctx, p, p), exp.tc));
    }
    SUBCASE("lambda_ac: P∘P is a contractible twist P ← P⟨1⟩") {
        CatContext ctx(testalg::lambda_ac());
        Gen p = Gen::proj(0, 0);
        TwistedComplex exp = tc_expand(tc_from_entries(ctx, {{{p, p}, 0}}));
        REQUIRE(exp.entries.size() == 2);
        CHECK(exp.entries[0].shift == 0);
        CHECK(exp.entries[1].shift == 1);
        CHECK_FALSE(exp.alpha[0][1].is_zero());
        CHECK(validate_tc(exp).empty());
        /* expansion of generator entries is the identity */
        CHECK(tc_equal(tc_expand(exp), exp));
    }
    SUBCASE("a2: P(e1,e2)∘P(e2,e1) collapses onto a single P(e1,e1)") {
        CatContext ctx(testalg::a2());
        TwistedComplex exp = hcompose(ctx, Gen::proj(0, 1), Gen::proj(1, 0));
        REQUIRE(exp.entries.size() == 1);
        CHECK(exp.entries[0].gens == GenList{Gen::proj(0, 0)});
        CHECK(exp.entries[0].shift == 0);
        CHECK(validate_tc(exp).empty());
    }
    SUBCASE("triple composites expand consistently regardless of association") {
        CatContext ctx(testalg::lambda_ac());
        Gen p = Gen::proj(0, 0);
        TwistedComplex s1 = tc_single(ctx, {p});
        TwistedComplex s2 = tc_from_entries(ctx, {{{p, p}, 0}});
        TwistedComplex flat = tc_from_entries(ctx, {{{p, p, p}, 0}});
        TwistedComplex la = tc_expand(tc_hcompose(s2, s1));
        TwistedComplex ra = tc_expand(tc_hcompose(s1, s2));
        TwistedComplex fl = tc_expand(flat);
        CHECK(validate_tc(la).empty());
        CHECK(validate_tc(ra).empty());
        CHECK(validate_tc(fl).empty());
        CHECK(entry_shifts(la) == entry_shifts(fl));
        CHECK(entry_shifts(ra) == entry_shifts(fl));
    }
    SUBCASE("expansion of a composite with a connection") {
        CatContext ctx(testalg::a2());
        GenList c = {Gen::proj(0, 1), Gen::proj(1, 0)};
        TwistedComplex cone = cone_of_identity(tc_from_entries(ctx, {{c, 0}}));
        TwistedComplex exp = tc_expand(cone);
        CHECK(validate_tc(exp).empty());
        CHECK(entry_shifts(exp) == std::vector<int>({0, 1}));
        for (const auto& e : exp.entries) CHECK(e.gens.size() == 1);
    }
}

TEST_CASE("idempotent splitting") {
    CatContext ctx(testalg::lambda0());
    Gen p = Gen::proj(0, 0);
    TwistedComplex one = tc_single(ctx, {p});
    TwistedComplex x = tc_direct_sum(one, one);
    TotData t = tot(x);

    SUBCASE("projection onto an entry subset splits internally") {
        GradedMap e = t.include(0).compose(t.project(0));
        Completion res = split_idempotent(x, e);
        CHECK(res.internal);
        CHECK(tc_equal(res.sub, one));
        CHECK(res.bim.validate().empty());
        CHECK(res.bim.space == t.parts[0].space);
    }
    SUBCASE("a skew idempotent splits off an explicit image bimodule") {
        GradedMap s = (t.include(0) + t.include(1)).compose(t.project(0) + t.project(1)) * Rat(1, 2);
        REQUIRE(s.compose(s) == s);
        Completion res = split_idempotent(x, s);
        CHECK_FALSE(res.internal);
        CHECK(res.bim.validate().empty());
        CHECK(res.bim.space == t.parts[0].space);
        CHECK(res.proj.compose(res.incl) == GradedMap::identity(res.bim.space));
        CHECK(res.incl.compose(res.proj) == s);
        /* incl and proj are chain maps for the compressed differential */
        CHECK(res.incl.compose(res.bim.d) == t.bim.d.compose(res.incl));
        CHECK(res.bim.d.compose(res.proj) == res.proj.compose(t.bim.d));
    }
    SUBCASE("non-idempotents and non-chain maps are rejected") {
        CHECK_THROWS_AS(split_idempotent(x, GradedMap::identity(t.bim.space) * Rat(2)),
                        std::invalid_argument);
        CatContext ac(testalg::lambda_ac());
        TwistedComplex y = tc_single(ac, {Gen::proj(0, 0)});
        TotData ty = tot(y);
        GradedMap bad = GradedMap::zero(ty.bim.space, ty.bim.space, 0);
        bad.set_block(0, QMatrix::identity(ty.bim.space.dim(0)));
        CHECK(bad.compose(bad) == bad);
        CHECK_THROWS_AS(split_idempotent(y, bad), std::invalid_argument);
    }
    SUBCASE("splitting an idempotent on a twisted total complex") {
        TwistedComplex c = cone_of_identity(one);
        TwistedComplex xx = tc_direct_sum(c, one);
        TotData txx = tot(xx);
        GradedMap e = txx.include(2).compose(txx.project(2));
        Completion res = split_idempotent(xx, e);
        CHECK(res.internal);
        CHECK(tc_equal(res.sub, one));
        GradedMap ec = txx.include(0).compose(txx.project(0)) + txx.include(1).compose(txx.project(1));
        Completion resc = split_idempotent(xx, ec);
        CHECK(resc.internal);
        CHECK(tc_equal(resc.sub, c));
        CHECK(resc.bim.validate().empty());
    }
}

TEST_CASE("horizontal composition across blocks with vanishing composites") {
    CatContext ctx(testalg::qxq());
    TwistedComplex c1 = cone_of_identity(tc_single(ctx, {Gen::proj(0, 0)}));
    TwistedComplex c2 = cone_of_identity(tc_single(ctx, {Gen::proj(1, 1)}));
    TwistedComplex z = tc_hcompose(c1, c2);
    CHECK(validate_tc(z).empty());
    CHECK(tc_normalize(z).entries.empty());
    CHECK(tc_equal(z, tc_zero(ctx)));
}
