#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgcell/matrix.hpp"

namespace dgcell {

/* Finitely supported graded vector space over Q with optional basis labels. */
struct GradedVectorSpace {
    std::map<int, int> dims;                           // degree -> dimension, zero entries dropped
    std::map<int, std::vector<std::string>> labels;    // optional, per degree

    void set_dim(int deg, int dim);
    int dim(int deg) const;
    int total_dim() const;
    int min_deg() const;
    int max_deg() const;
    bool operator==(const GradedVectorSpace& o) const { return dims == o.dims; }

    /* Flat indexing: degrees ascending, indices within a degree in order. */
    int flat_index(int deg, int i) const;
    std::pair<int, int> from_flat(int idx) const;
};

/* Homogeneous map of fixed degree n; block k maps V^k to W^{k+n}.
 * Blocks with zero source or target slice are omitted. */
struct GradedMap {
    GradedVectorSpace source, target;
    int degree = 0;
    std::map<int, QMatrix> blocks;  // k -> matrix (dim W^{k+n}) x (dim V^k)

    static GradedMap zero(const GradedVectorSpace& src, const GradedVectorSpace& tgt, int degree);
    static GradedMap identity(const GradedVectorSpace& v);
    /* sign operator x -> (-1)^{deg x} x */
    static GradedMap sign_operator(const GradedVectorSpace& v);

    QMatrix block(int k) const;  // zero matrix of the right shape when absent
    void set_block(int k, QMatrix m);

    bool is_zero() const;
    bool operator==(const GradedMap& o) const;

    GradedMap compose(const GradedMap& inner) const;  // this after inner
    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap operator*(const Rat& s) const;
    GradedMap operator-() const { return *this * Rat(-1); }

    /* Flattened matrix from source flat coordinates to target flat coordinates. */
    QMatrix flat_matrix() const;
    std::vector<Rat> flat_vector() const;  // entries of flat_matrix, row-major; used as Hom coordinates
    std::vector<Rat> apply_flat(const std::vector<Rat>& v) const;

    void check_shapes() const;
};

struct Complex {
    GradedVectorSpace space;
    GradedMap d;  // degree +1, space -> space

    static Complex with_zero_differential(const GradedVectorSpace& v);
    bool validate() const;  // d degree 1 and d^2 = 0
};

/* ∂(f) = d_W ∘ f − (−1)^n f ∘ d_V */
GradedMap map_differential(const GradedMap& f, const Complex& v, const Complex& w);

/* (V⟨t⟩)^k = V^{k+t}; differential picks up the sign (−1)^t. */
GradedVectorSpace shift(const GradedVectorSpace& v, int t);
Complex shift(const Complex& v, int t);
GradedMap shift(const GradedMap& f, int t_source, int t_target);

/* Rebuild a homogeneous map from its flat matrix; entries violating the degree
 * pattern raise. */
GradedMap graded_from_flat(const GradedVectorSpace& src, const GradedVectorSpace& tgt, int degree,
                           const QMatrix& flat);

int cohomology(const Complex& v, int k);
std::map<int, int> cohomology_all(const Complex& v);

/* Adapted basis: d(pair source) = pair target, d(free) = 0. Coordinates are in
 * the given degree slice of V. */
struct AdaptedBasis {
    struct Free {
        int deg;
        std::vector<Rat> vec;
    };
    struct Pair {
        int deg;  // degree of the source b; target d(b) sits in deg+1
        std::vector<Rat> source;
        std::vector<Rat> target;
    };
    std::vector<Free> free;
    std::vector<Pair> pairs;
};

AdaptedBasis decompose_complex(const Complex& v);

/* Tensor product with Koszul differential; within a degree slice the basis is
 * ordered by (left degree ascending, left index, right index). */
GradedVectorSpace tensor(const GradedVectorSpace& a, const GradedVectorSpace& b);
Complex tensor(const Complex& a, const Complex& b);
/* Position of a_{pa,ia} ⊗ b_{pb,ib} inside the (pa+pb) slice of the tensor. */
int tensor_pos(const GradedVectorSpace& a, const GradedVectorSpace& b, int pa, int ia, int pb, int ib);

}  // namespace dgcell
