#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dgcell/matrix.hpp"

namespace dgcell {

/* Univariate polynomial over Q, coefficient of x^i at index i, normalized so
 * the leading coefficient is nonzero (zero polynomial = empty vector). */
struct Poly {
    std::vector<Rat> c;

    static Poly from_coeffs(std::vector<Rat> coeffs);
    static Poly x_power(int k);
    static Poly constant(const Rat& v);

    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    Rat lead() const { return c.back(); }
    Poly monic() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& s) const;
    bool operator==(const Poly& o) const { return c == o.c; }

    Rat eval(const Rat& v) const;
    Poly derivative() const;
};

/* quotient, remainder */
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic
/* g, u, v with u a + v b = g = gcd */
std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b);

/* f = prod part[i]^(i+1) with part[i] squarefree and pairwise coprime (Yun). */
std::vector<Poly> squarefree_decomposition(const Poly& f);

/* Irreducible factors with multiplicity.  Built-in: rational roots and
 * quadratic discriminants; `hints` may supply further monic factors.  nullopt
 * when a factor of degree >= 3 resists both. */
std::optional<std::vector<Poly>> factor(const Poly& f, const std::vector<Poly>& hints = {});

std::vector<Rat> rational_roots(const Poly& f);

/* Minimal abstract hook for evaluating polynomials in an algebra. */
struct AlgebraOps {
    int n = 0;
    std::vector<Rat> unit;
    std::function<std::vector<Rat>(const std::vector<Rat>&, const std::vector<Rat>&)> mul;
};

std::vector<Rat> eval_poly(const AlgebraOps& ops, const Poly& f, const std::vector<Rat>& v);
Poly min_poly(const AlgebraOps& ops, const std::vector<Rat>& v);

/* Complete orthogonal decomposition 1 = sum of idempotents of a commutative
 * algebra such that each block e·R is local; nullopt if some minimal
 * polynomial cannot be fully factored. */
std::optional<std::vector<std::vector<Rat>>> split_commutative(const AlgebraOps& ops,
                                                               const std::vector<Poly>& hints = {});

}  // namespace dgcell
