#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dgcell/poly.hpp>

using namespace dgcell;

namespace {
Poly P(std::vector<long> c) {
    std::vector<Rat> r;
    for (long x : c) r.emplace_back(x);
    return Poly::from_coeffs(std::move(r));
}
}  // namespace

TEST_CASE("divmod and gcd") {
    Poly f = P({-1, 0, 1});  // x^2 - 1
    Poly g = P({-1, 1});     // x - 1
    auto [q, r] = divmod(f, g);
    CHECK(r.is_zero());
    CHECK(q == P({1, 1}));
    CHECK(poly_gcd(f, g) == g);
    auto [d, u, v] = poly_xgcd(P({-1, 1}), P({1, 1}));
    CHECK(d.deg() == 0);
    CHECK((u * P({-1, 1}) + v * P({1, 1})) == d);
}

TEST_CASE("squarefree decomposition") {
    Poly f = P({-1, 1}) * P({-1, 1}) * P({1, 1});  // (x-1)^2 (x+1)
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == P({1, 1}));
    CHECK(parts[1] == P({-1, 1}));
}

TEST_CASE("rational roots") {
    Poly f = P({6, -5, 1});  // (x-2)(x-3)
    auto roots = rational_roots(f);
    REQUIRE(roots.size() == 2);
    Poly g = Poly::from_coeffs({Rat(-1, 2), Rat(1)});  // x - 1/2
    auto r2 = rational_roots(g * P({1, 1}));
    CHECK(r2.size() == 2);
}

TEST_CASE("factor: linear, quadratic, hints") {
    auto f1 = factor(P({-1, 0, 1}));
    REQUIRE(f1.has_value());
    CHECK(f1->size() == 2);
    auto f2 = factor(P({1, 0, 1}));  // x^2+1 irreducible
    REQUIRE(f2.has_value());
    CHECK(f2->size() == 1);
    auto f3 = factor(P({0, 0, 1}));  // x^2
    REQUIRE(f3.has_value());
    CHECK(f3->size() == 2);
    /* quartic without hints fails, with hints succeeds */
    Poly quart = P({1, 0, 1}) * P({2, 0, 1});
    CHECK(!factor(quart).has_value());
    auto f4 = factor(quart, {P({2, 0, 1})});
    REQUIRE(f4.has_value());
    CHECK(f4->size() == 2);
}

TEST_CASE("min poly and commutative splitting") {
    /* Q[x]/(x^2-1) in coordinates {1, x} */
    AlgebraOps ops;
    ops.n = 2;
    ops.unit = {Rat(1), Rat(0)};
    ops.mul = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        return std::vector<Rat>{a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
    };
    Poly mp = min_poly(ops, {Rat(0), Rat(1)});
    CHECK(mp == P({-1, 0, 1}));
    auto split = split_commutative(ops);
    REQUIRE(split.has_value());
    CHECK(split->size() == 2);
    for (const auto& e : *split) CHECK(ops.mul(e, e) == e);

    /* Q[x]/(x^2+1): stays one block */
    AlgebraOps gauss = ops;
    gauss.mul = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        return std::vector<Rat>{a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
    };
    auto split2 = split_commutative(gauss);
    REQUIRE(split2.has_value());
    CHECK(split2->size() == 1);

    /* Q[x]/(x^2): local, one block */
    AlgebraOps dual = ops;
    dual.mul = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        return std::vector<Rat>{a[0] * b[0], a[0] * b[1] + a[1] * b[0]};
    };
    auto split3 = split_commutative(dual);
    REQUIRE(split3.has_value());
    CHECK(split3->size() == 1);
}
