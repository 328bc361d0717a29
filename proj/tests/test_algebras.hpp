#pragma once

#include <dgcell/dg_algebra.hpp>

/* Shared desk-scale algebras used across the test suites. */
namespace testalg {

using dgcell::DgAlgebra;
using dgcell::QMatrix;
using dgcell::Rat;

inline DgAlgebra make(const std::string& name, std::vector<std::string> labels, std::vector<int> degrees) {
    DgAlgebra a;
    a.name = name;
    a.labels = std::move(labels);
    a.degrees = std::move(degrees);
    int n = a.dim();
    a.mult.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    a.unit.assign(n, Rat(0));
    a.diff = QMatrix(n, n);
    return a;
}

inline void set_prod(DgAlgebra& a, int i, int j, int k, Rat c = Rat(1)) { a.mult[i][j][k] = c; }

inline std::vector<Rat> unitvec(int n, int i) {
    std::vector<Rat> v(n, Rat(0));
    v[i] = 1;
    return v;
}

/* Q[x]/(x^2), deg x = 0, ∂ = 0.  Basis {e, x}. */
inline DgAlgebra lambda0() {
    DgAlgebra a = make("lambda0", {"e", "x"}, {0, 0});
    set_prod(a, 0, 0, 0);
    set_prod(a, 0, 1, 1);
    set_prod(a, 1, 0, 1);
    a.unit = unitvec(2, 0);
    a.idempotent_labels = {"e"};
    a.idempotents = {a.unit};
    return a;
}

/* Acyclic dual numbers: Q[x]/(x^2), deg x = -1, ∂x = e. */
inline DgAlgebra lambda_ac() {
    DgAlgebra a = lambda0();
    a.name = "lambda_ac";
    a.degrees = {0, -1};
    a.diff.at(0, 1) = 1;
    return a;
}

/* Path algebra of 1 --a--> 2.  Basis {e1, e2, a} with a = e2·a·e1. */
inline DgAlgebra a2() {
    DgAlgebra a = make("a2", {"e1", "e2", "a"}, {0, 0, 0});
    set_prod(a, 0, 0, 0);
    set_prod(a, 1, 1, 1);
    set_prod(a, 2, 0, 2);  // a*e1 = a
    set_prod(a, 1, 2, 2);  // e2*a = a
    a.unit = {Rat(1), Rat(1), Rat(0)};
    a.idempotent_labels = {"e1", "e2"};
    a.idempotents = {unitvec(3, 0), unitvec(3, 1)};
    return a;
}

/* Q × Q */
inline DgAlgebra qxq() {
    DgAlgebra a = make("qxq", {"e1", "e2"}, {0, 0});
    set_prod(a, 0, 0, 0);
    set_prod(a, 1, 1, 1);
    a.unit = {Rat(1), Rat(1)};
    a.idempotent_labels = {"e1", "e2"};
    a.idempotents = {unitvec(2, 0), unitvec(2, 1)};
    return a;
}

/* 2x2 matrices over Q, basis {E11, E12, E21, E22}. */
inline DgAlgebra mat2() {
    DgAlgebra a = make("mat2", {"E11", "E12", "E21", "E22"}, {0, 0, 0, 0});
    auto idx = [](int i, int j) { return 2 * i + j; };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    if (j == k) set_prod(a, idx(i, j), idx(k, l), idx(i, l));
    a.unit = {Rat(1), Rat(0), Rat(0), Rat(1)};
    a.idempotent_labels = {"E11", "E22"};
    a.idempotents = {unitvec(4, 0), unitvec(4, 3)};
    return a;
}

/* Λ₀ × Q: basis {e, x, f} */
inline DgAlgebra lambda0_times_q() {
    DgAlgebra a = make("lambda0xQ", {"e", "x", "f"}, {0, 0, 0});
    set_prod(a, 0, 0, 0);
    set_prod(a, 0, 1, 1);
    set_prod(a, 1, 0, 1);
    set_prod(a, 2, 2, 2);
    a.unit = {Rat(1), Rat(0), Rat(1)};
    a.idempotent_labels = {"e", "f"};
    a.idempotents = {unitvec(3, 0), unitvec(3, 2)};
    return a;
}

/* Commutative-mode rings Q[x]/(x^2 - c) with basis {1, x}; primitivity of the
 * unit is intentionally not claimed. */
inline DgAlgebra qx_mod(const Rat& x_squared, const std::string& name) {
    DgAlgebra a = make(name, {"one", "x"}, {0, 0});
    set_prod(a, 0, 0, 0);
    set_prod(a, 0, 1, 1);
    set_prod(a, 1, 0, 1);
    a.mult[1][1][0] = x_squared;
    a.unit = unitvec(2, 0);
    a.idempotent_labels = {"one"};
    a.idempotents = {a.unit};
    return a;
}

inline std::vector<DgAlgebra> acceptance_algebras() {
    return {lambda0(), lambda_ac(), a2(), qxq(), mat2()};
}

}  // namespace testalg
