#include "dgcell/poly.hpp"

#include <random>
#include <stdexcept>
#include <tuple>

namespace dgcell {

Poly Poly::from_coeffs(std::vector<Rat> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    Poly p;
    p.c = std::move(coeffs);
    return p;
}

Poly Poly::x_power(int k) {
    std::vector<Rat> c(k + 1, Rat(0));
    c[k] = 1;
    return from_coeffs(std::move(c));
}

Poly Poly::constant(const Rat& v) { return from_coeffs({v}); }

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (1 / lead());
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return from_coeffs(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (o * Rat(-1)); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return from_coeffs(std::move(r));
}

Poly Poly::operator*(const Rat& s) const {
    if (s == 0) return Poly();
    std::vector<Rat> r = c;
    for (auto& x : r) x *= s;
    return from_coeffs(std::move(r));
}

Rat Poly::eval(const Rat& v) const {
    Rat r(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * v + *it;
    return r;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Rat> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rat(static_cast<long>(i));
    return from_coeffs(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly division by zero");
    Poly rem = a;
    std::vector<Rat> q(a.deg() >= b.deg() ? a.deg() - b.deg() + 1 : 0, Rat(0));
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        int shift = rem.deg() - b.deg();
        Rat f = rem.lead() / b.lead();
        q[shift] += f;
        rem = rem - (b * f) * Poly::x_power(shift);
    }
    return {Poly::from_coeffs(std::move(q)), rem};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = b;
        b = r;
    }
    return a.monic();
}

std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(1), s1;
    Poly t0, t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rat inv = 1 / r0.lead();
    return {r0 * inv, s0 * inv, t0 * inv};
}

std::vector<Poly> squarefree_decomposition(const Poly& f) {
    std::vector<Poly> parts;
    if (f.deg() <= 0) return parts;
    Poly a = f.monic();
    Poly g = poly_gcd(a, a.derivative());
    Poly w = divmod(a, g).first;
    while (w.deg() > 0) {
        Poly y = poly_gcd(w, g);
        Poly part = divmod(w, y).first;
        parts.push_back(part.monic());
        w = y;
        g = divmod(g, y).first;
    }
    return parts;
}

namespace {
std::vector<mpz_class> divisors(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    std::vector<mpz_class> d;
    if (n == 0) return d;
    for (mpz_class i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
    }
    return d;
}
}  // namespace

std::vector<Rat> rational_roots(const Poly& f) {
    std::vector<Rat> roots;
    if (f.deg() <= 0) return roots;
    Poly g = f;
    /* factor out x */
    if (g.c[0] == 0) {
        roots.push_back(Rat(0));
        while (!g.is_zero() && g.c[0] == 0) g = divmod(g, Poly::x_power(1)).first;
    }
    if (g.deg() <= 0) return roots;
    /* clear denominators */
    mpz_class den_lcm = 1;
    for (const auto& x : g.c) {
        mpz_class d = x.get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    std::vector<mpz_class> ic;
    for (const auto& x : g.c) ic.push_back(mpz_class(x * Rat(den_lcm)));
    for (const auto& p : divisors(ic.front()))
        for (const auto& q : divisors(ic.back()))
            for (int s : {1, -1}) {
                Rat cand(p * s, q);
                cand.canonicalize();
                if (g.eval(cand) == 0) {
                    bool seen = false;
                    for (const auto& r : roots) seen = seen || r == cand;
                    if (!seen) roots.push_back(cand);
                }
            }
    return roots;
}

namespace {
std::optional<std::vector<Poly>> factor_squarefree(const Poly& f_in, const std::vector<Poly>& hints) {
    std::vector<Poly> out;
    Poly f = f_in.monic();
    /* strip rational roots */
    bool progress = true;
    while (f.deg() > 0 && progress) {
        progress = false;
        for (const Rat& r : rational_roots(f)) {
            Poly lin = Poly::from_coeffs({-r, Rat(1)});
            auto [q, rem] = divmod(f, lin);
            if (rem.is_zero()) {
                out.push_back(lin);
                f = q;
                progress = true;
                break;
            }
        }
    }
    while (f.deg() > 0) {
        if (f.deg() == 1) {
            out.push_back(f.monic());
            break;
        }
        if (f.deg() == 2) {
            /* monic x^2 + bx + c; rational roots were already stripped, so if
             * the discriminant is not a rational square this is irreducible */
            Rat b = f.c[1], cc = f.c[0];
            Rat disc = b * b - 4 * cc;
            bool square = false;
            if (disc >= 0) {
                mpz_class sn = sqrt(disc.get_num());
                mpz_class sd = sqrt(disc.get_den());
                square = sn * sn == disc.get_num() && sd * sd == disc.get_den();
            }
            if (!square) {
                out.push_back(f.monic());
                break;
            }
            Rat s(sqrt(disc.get_num()), sqrt(disc.get_den()));
            s.canonicalize();
            Rat r1 = (-b + s) / 2, r2 = (-b - s) / 2;
            out.push_back(Poly::from_coeffs({-r1, Rat(1)}));
            out.push_back(Poly::from_coeffs({-r2, Rat(1)}));
            break;
        }
        bool split = false;
        for (const Poly& h : hints) {
            /* a hint equal to the remaining factor asserts its irreducibility */
            if (h.deg() == f.deg() && h.monic() == f) {
                out.push_back(f);
                split = true;
                f = Poly::constant(Rat(1));
                break;
            }
            if (h.deg() <= 0 || h.deg() >= f.deg()) continue;
            auto [q, rem] = divmod(f, h.monic());
            if (rem.is_zero()) {
                auto sub = factor_squarefree(h.monic(), hints);
                if (!sub) return std::nullopt;
                for (auto& p : *sub) out.push_back(p);
                f = q;
                split = true;
                break;
            }
        }
        if (!split) return std::nullopt;
    }
    return out;
}
}  // namespace

std::optional<std::vector<Poly>> factor(const Poly& f, const std::vector<Poly>& hints) {
    if (f.deg() <= 0) return std::vector<Poly>{};
    std::vector<Poly> out;
    std::vector<Poly> parts = squarefree_decomposition(f);
    for (size_t m = 0; m < parts.size(); ++m) {
        auto fac = factor_squarefree(parts[m], hints);
        if (!fac) return std::nullopt;
        for (const auto& p : *fac)
            for (size_t rep = 0; rep <= m; ++rep) out.push_back(p);
    }
    return out;
}

std::vector<Rat> eval_poly(const AlgebraOps& ops, const Poly& f, const std::vector<Rat>& v) {
    std::vector<Rat> acc(ops.n, Rat(0));
    for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) {
        acc = ops.mul(acc, v);
        for (int i = 0; i < ops.n; ++i) acc[i] += *it * ops.unit[i];
    }
    return acc;
}

Poly min_poly(const AlgebraOps& ops, const std::vector<Rat>& v) {
    std::vector<std::vector<Rat>> powers = {ops.unit};
    for (;;) {
        /* is the last power in the span of the previous ones? */
        QMatrix prev = QMatrix::from_cols(std::vector<std::vector<Rat>>(powers.begin(), powers.end() - 1));
        const std::vector<Rat>& last = powers.back();
        if (powers.size() > 1) {
            auto sol = solve(prev, last);
            if (sol) {
                std::vector<Rat> c(powers.size(), Rat(0));
                for (size_t i = 0; i + 1 < powers.size(); ++i) c[i] = -(*sol)[i];
                c.back() = 1;
                return Poly::from_coeffs(std::move(c));
            }
        }
        powers.push_back(ops.mul(powers.back(), v));
        if (static_cast<int>(powers.size()) > ops.n + 1)
            throw std::runtime_error("min_poly: no relation found (not an algebra element?)");
    }
}

std::optional<std::vector<std::vector<Rat>>> split_commutative(const AlgebraOps& ops, const std::vector<Poly>& hints) {
    std::vector<std::vector<Rat>> blocks = {ops.unit};
    std::mt19937_64 rng(0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t bi = 0; bi < blocks.size() && !changed; ++bi) {
            const std::vector<Rat> e = blocks[bi];
            AlgebraOps sub = ops;
            sub.unit = e;
            /* candidate elements of the block: e·basis, pairwise sums, and a
             * few seeded random combinations */
            std::vector<std::vector<Rat>> cands;
            std::vector<std::vector<Rat>> gens;
            for (int i = 0; i < ops.n; ++i) {
                std::vector<Rat> b(ops.n, Rat(0));
                b[i] = 1;
                gens.push_back(ops.mul(e, b));
            }
            for (const auto& g : gens) cands.push_back(g);
            for (size_t i = 0; i < gens.size(); ++i)
                for (size_t j = i + 1; j < gens.size(); ++j) {
                    std::vector<Rat> s(ops.n);
                    for (int k = 0; k < ops.n; ++k) s[k] = gens[i][k] + gens[j][k];
                    cands.push_back(std::move(s));
                }
            for (int t = 0; t < 8; ++t) {
                std::vector<Rat> s(ops.n, Rat(0));
                for (const auto& g : gens) {
                    long csmall = static_cast<long>(rng() % 5) - 2;
                    for (int k = 0; k < ops.n; ++k) s[k] += Rat(csmall) * g[k];
                }
                cands.push_back(std::move(s));
            }
            int block_dim = rank(QMatrix::from_cols(gens));
            bool certified_local = false;  // some prime-power primitive element found
            bool unknown = false;          // some candidate resisted factorization
            for (const auto& v : cands) {
                Poly mp = min_poly(sub, v);
                auto fac = factor(mp, hints);
                if (!fac) {
                    unknown = true;
                    continue;
                }
                /* group into prime powers */
                std::vector<std::pair<Poly, int>> primes;
                for (const auto& p : *fac) {
                    bool found = false;
                    for (auto& [q, m] : primes)
                        if (q == p) {
                            ++m;
                            found = true;
                        }
                    if (!found) primes.push_back({p, 1});
                }
                if (primes.size() < 2) {
                    /* a primitive element with prime-power minimal polynomial
                     * exhibits the block as Q[x]/(p^m), hence local */
                    if (mp.deg() == block_dim) {
                        certified_local = true;
                        break;
                    }
                    continue;
                }
                /* CRT idempotents for the coprime prime-power factors */
                std::vector<std::vector<Rat>> pieces;
                for (const auto& [p, m] : primes) {
                    Poly q = p;
                    for (int k = 1; k < m; ++k) q = q * p;
                    Poly rest = divmod(mp, q).first;
                    auto [g, u, w] = poly_xgcd(rest, q);
                    (void)w;
                    if (g.deg() != 0) return std::nullopt;  // factors not coprime: factorization bug
                    pieces.push_back(eval_poly(sub, u * rest, v));
                }
                blocks.erase(blocks.begin() + static_cast<long>(bi));
                for (auto& p : pieces) blocks.push_back(std::move(p));
                changed = true;
                break;
            }
            if (!changed && !certified_local && unknown) return std::nullopt;
        }
    }
    return blocks;
}

}  // namespace dgcell
