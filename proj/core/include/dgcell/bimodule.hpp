#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgcell/dg_algebra.hpp"
#include "dgcell/graded.hpp"

namespace dgcell {

/* A generator 1-morphism of 𝒞_A: the identity of a block, or P(e,f) = Ae⊗fA
 * for idempotent representatives e, f. */
struct Gen {
    enum class Kind { Identity, Projective };
    Kind kind = Kind::Identity;
    int block = -1;  // Identity
    int e = -1, f = -1;  // Projective: indices into A.idempotents

    static Gen id(int block) { return {Kind::Identity, block, -1, -1}; }
    static Gen proj(int e, int f) { return {Kind::Projective, -1, e, f}; }
    bool operator==(const Gen& o) const = default;
    bool operator<(const Gen& o) const {
        return std::tuple(kind, block, e, f) < std::tuple(o.kind, o.block, o.e, o.f);
    }
};

/* A formal composite of generators (left to right = outer to inner, i.e.
 * list[0] ∘ list[1] ∘ …).  The empty list denotes the zero 1-morphism. */
using GenList = std::vector<Gen>;

/* Explicit dg A-A-bimodule: graded carrier, one action map per algebra basis
 * element on each side, and the differential. */
struct Bimodule {
    const DgAlgebra* A = nullptr;
    GradedVectorSpace space;
    std::vector<GradedMap> left, right;  // indexed by algebra basis element
    GradedMap d;
    int src_block = -1, tgt_block = -1;

    bool is_zero_object() const { return space.total_dim() == 0; }
    GradedMap left_action(const std::vector<Rat>& x) const;
    GradedMap right_action(const std::vector<Rat>& x) const;
    /* operator identities: Leibniz, associativity, unit (for tests) */
    std::vector<std::string> validate() const;
};

Bimodule shift_bimodule(const Bimodule& m, int t);
Bimodule direct_sum(const Bimodule& a, const Bimodule& b);

/* Realization of a normalized GenList as a tensor product of corner slices:
 * P(e1,f1)∘…∘P(ek,fk) = Ae1 ⊗ f1Ae2 ⊗ … ⊗ fkA, Identity(i) = A_i. */
struct Realization {
    GenList list;
    Bimodule bim;
    std::vector<ElementBasis> factors;
    std::vector<std::vector<int>> tuples;          // lex order over factor indices
    std::vector<std::pair<int, int>> tuple_pos;    // per tuple: (degree, slice index)
    int tuple_index(const std::vector<int>& t) const;
};

/* Graded Hom complex between two bimodules with a chosen basis of morphisms
 * per degree (aligned with the carrier's slices). */
struct HomSpace {
    GradedVectorSpace src_space, tgt_space;
    Complex carrier;
    std::map<int, std::vector<GradedMap>> basis;

    int dim(int deg) const;
    /* coordinates of a homogeneous equivariant map in the degree slice */
    std::vector<Rat> coords_of(const GradedMap& f) const;
    GradedMap from_coords(int deg, const std::vector<Rat>& c) const;
};

/* Degree-n maps φ with φ(a·m·b) = (−1)^{n·deg a} a·φ(m)·b, with the induced
 * differential ∂φ = d∘φ − (−1)^n φ∘d.  This is the certification oracle; the
 * closed forms below are cross-checked against it. */
HomSpace oracle_hom(const Bimodule& m, const Bimodule& n);

class CatContext {
public:
    explicit CatContext(DgAlgebra a, uint64_t seed = 0);

    const DgAlgebra& algebra() const { return *a_; }
    const BlockDecomposition& block_info() const { return blk_; }
    const IdempotentClasses& classes() const { return cls_; }
    const std::vector<int>& idem_reps() const { return reps_; }  // 𝔼 as idempotent indices
    int block_of_idem(int e) const { return blk_.block_of[e]; }
    int num_blocks() const { return blk_.count; }

    std::vector<Gen> generators() const;  // Id per block, then P(e,f) over 𝔼×𝔼
    std::string gen_name(const Gen& g) const;
    Gen gen_by_name(const std::string& name) const;

    int source_block(const Gen& g) const;
    int target_block(const Gen& g) const;

    /* composability-aware concatenation; empty result = zero */
    GenList normalize(const GenList& raw) const;
    GenList compose_lists(const GenList& outer, const GenList& inner) const;

    const Realization& realize(const GenList& gl) const;
    /* cached oracle Hom between realizations of normalized lists */
    const HomSpace& hom(const GenList& src, const GenList& tgt) const;

    /* closed-form Hom data for generator pairs (P/P and Id/Id only) */
    std::map<int, int> closed_hom_dims(const Gen& f, const Gen& g) const;
    bool has_closed_form(const Gen& f, const Gen& g) const;
    /* explicit map P(e,f) -> P(e',f') attached to u ∈ eAe', w ∈ f'Af:
     * x⊗y ↦ (−1)^{n·deg x} xu ⊗ wy */
    GradedMap carrier_map_pp(const Gen& f, const Gen& g, const std::vector<Rat>& u,
                             const std::vector<Rat>& w) const;
    /* explicit map Id_i -> Id_i attached to a central element z */
    GradedMap carrier_map_id(int block, const std::vector<Rat>& z) const;

    /* id_H ⊗ φ : H∘src -> H∘tgt for φ : src -> tgt */
    GradedMap whisker_left(const Gen& h, const GenList& src, const GenList& tgt, const GradedMap& phi) const;
    /* φ ⊗ id_H : src∘H -> tgt∘H */
    GradedMap whisker_right(const GenList& src, const GenList& tgt, const Gen& h, const GradedMap& phi) const;
    /* folds of the single-generator whiskers over a composite */
    GradedMap whisker_left_list(const GenList& h, const GenList& src, const GenList& tgt, const GradedMap& phi) const;
    GradedMap whisker_right_list(const GenList& src, const GenList& tgt, const GenList& h, const GradedMap& phi) const;

    /* the natural 2-representation: evaluation at the projective module Ae_j */
    struct EvalModule {
        Complex cx;
        QMatrix basis_cols;  // columns = flat coordinates inside the bimodule carrier
    };
    EvalModule eval_module(const GenList& gl, int j) const;
    GradedMap eval_morphism(const GenList& src, const GenList& tgt, const GradedMap& phi, int j) const;

    uint64_t seed() const { return seed_; }

private:
    std::shared_ptr<DgAlgebra> a_;
    BlockDecomposition blk_;
    IdempotentClasses cls_;
    std::vector<int> reps_;
    uint64_t seed_;
    mutable std::map<std::string, std::shared_ptr<Realization>> real_cache_;
    mutable std::map<std::string, std::shared_ptr<HomSpace>> hom_cache_;
    std::string key(const GenList& gl) const;
    Realization build_realization(const GenList& gl) const;
};

}  // namespace dgcell
