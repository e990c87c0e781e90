#pragma once

#include "strel/group.hpp"
#include "strel/rnmod.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace strel {

// Right module over the group algebra R_m G: a shape over R_m = Z/p^m plus
// one matrix per group element with act(g)*act(h) = act(g*h).  Construction
// takes matrices for the distinguished generators only, completes them along
// the Cayley table, and verifies the full group law (which also forces every
// generator matrix to be invertible).  Level 0 is reserved for the zero
// module; the ambient ring R_n is kept so modules of different levels can be
// compared after a change of level.
struct GModule {
    RingSpec ring;
    unsigned level = 0;
    FiniteGroup group;
    Shape shape;                // over ring.at_level(max(level, 1))
    std::vector<RnHom> action;  // indexed by group element

    static GModule make(const RingSpec& ring, unsigned level, const FiniteGroup& group,
                        const Shape& shape, const std::vector<RnHom>& gen_action);
    static GModule zero(const RingSpec& ring, const FiniteGroup& group);

    const RnHom& act(std::size_t g) const { return action[g]; }
    std::size_t rank() const { return shape.rank(); }
    bool is_zero() const { return shape.is_zero(); }

    bool operator==(const GModule& o) const;
    bool operator!=(const GModule& o) const { return !(*this == o); }
};

// Equivariant homomorphism; validated on the generators at construction.
struct GHom {
    GModule source, target;
    RnHom underlying;

    static GHom make(GModule s, GModule t, RnHom u);
    static GHom zero(GModule s, GModule t);
    static GHom identity(GModule m);

    GHom then(const GHom& g) const;
    GHom add(const GHom& g) const;
    GHom sub(const GHom& g) const;
    GHom scaled(std::uint64_t c) const;
    bool is_zero() const { return underlying.is_zero(); }

    bool operator==(const GHom& o) const;
};

// Short exact sequence 0 -> A -> B -> C -> 0 of modules at one level,
// optionally with a retraction of i at the underlying-R-module level.
struct SES {
    GHom i, q;
    std::optional<RnHom> r_split;

    // Monomorphism + epimorphism + zero composite + length count, and the
    // retraction identity when a witness is present.
    void validate() const;
};

// --- standard modules ---------------------------------------------------

GModule trivial_module(const RingSpec& ring, const FiniteGroup& G, unsigned m);
GModule regular_module(const RingSpec& ring, const FiniteGroup& G, unsigned m);
// A_m tensor N with the group acting on the left factor; N lives over R_m.
GModule induce_shape(const RingSpec& ring, const FiniteGroup& G, unsigned m, const Shape& N);

// Augmentation A_m -> k (trivial(1) viewed at level m), sum of coordinates mod p.
GHom augmentation_hom(const RingSpec& ring, const FiniteGroup& G, unsigned m);

// W_i: cokernel of the norm embedding k -> A_i, 1 |-> p^(i-1) * (sum of all
// group elements), where k is the level-1 trivial module viewed at level i.
struct CosyzygyW {
    GModule w;
    GHom norm;        // k (viewed at level i) -> regular(i), injective
    GHom projection;  // regular(i) -> w
};
CosyzygyW cosyzygy_w(const RingSpec& ring, const FiniteGroup& G, unsigned i);

// The R-split sequence 0 -> R_(m-1) -> (module iso to W_m) -> cosyzygy of
// R_m -> 0, built by dualizing the augmentation/kernel maps of A_m; m >= 2.
SES magic_sequence(const RingSpec& ring, const FiniteGroup& G, unsigned m);

// --- level changes -------------------------------------------------------

// Re-views M over R_m without changing its elements; needs m >= largest
// exponent (the embedding of module categories along R_m ->> R_level).
GModule view_at_level(const GModule& M, unsigned m);

// M tensor R_m for m <= level: exponents clipped to min(lambda, m).
GModule base_change(const GModule& M, unsigned m);
GHom base_change_hom(const GHom& f, unsigned m);

// The quotient map M -> base_change(M, m), with the target re-viewed at
// level(M) so the result is a hom of modules at one level.
GHom bc_unit(const GModule& M, unsigned m);

// --- additive and tensor structure ---------------------------------------

struct GDirectSum {
    GModule sum;
    GHom inj1, inj2, proj1, proj2;
};
GDirectSum direct_sum_g(const GModule& A, const GModule& B);

// Diagonal action on the tensor product over the smaller of the two rings.
GModule tensor_g(const GModule& A, const GModule& B);
GHom tensor_g_hom(const GHom& f, const GHom& g);
GHom tensor_swap(const GModule& A, const GModule& B);  // A(x)B -> B(x)A

GModule dual_g(const GModule& M);
GHom dual_g_hom(const GHom& f);  // dual(target) -> dual(source)

// --- induction, unit, counit ---------------------------------------------

GModule induce_restrict(const GModule& M);  // A_m tensor (underlying M)
GHom unit_hom(const GModule& M);            // x |-> sum_g g (x) x*g^(-1)
GHom counit_hom(const GModule& M);          // g (x) x |-> x*g

// --- kernels, cokernels, images ------------------------------------------

struct GSub {
    GModule sub;
    GHom inclusion;
    SubmoduleData data;  // membership solver for the underlying submodule
};
struct GQuot {
    GModule quot;
    GHom projection;
    RMatrix section;  // coordinate lifts, not a module hom
};
struct GImage {
    GModule image;
    GHom inclusion;
    GHom onto;
};

GSub kernel_g(const GHom& f);
GQuot cokernel_g(const GHom& f);
GImage image_g(const GHom& f);
// Quotient by the G-submodule generated by the given rows.
GQuot quotient_by_g(const GModule& M, const RMatrix& rows);

Shape fixed_point_shape(const GModule& M);
Shape coinvariant_shape(const GModule& M);

// --- hom spaces and isomorphism testing -----------------------------------

// Spanning set of the equivariant homs, in the canonical order produced by
// the Howell form of the constraint system.  Modules of different levels are
// first re-viewed at the larger level.
std::vector<GHom> hom_space(const GModule& M, const GModule& N);

enum class IsoStatus { Yes, No, Unknown };

struct IsoResult {
    IsoStatus status = IsoStatus::Unknown;
    std::optional<GHom> witness;  // verified invertible equivariant map
    std::optional<GHom> inverse;
};

// No only on provable grounds (distinguishing invariants, or an exhausted
// hom space); Yes only with a verified two-sided inverse.  Randomized
// attempts draw from mt19937_64 seeded as given, so results are
// reproducible across platforms.
IsoResult is_isomorphic(const GModule& M, const GModule& N, std::uint64_t seed, unsigned budget);

// --- multiplication functor and F -----------------------------------------

// P_k(M) = p^k M at level(M) - k: coordinates with exponent > k survive with
// exponent reduced by k; 0 <= k <= level.
GModule mult_functor(const GModule& M, unsigned k);
GHom mult_functor_hom(const GHom& f, unsigned k);

// Canonical identification mult(M,k) (x) mult(N,k) -> mult(M (x) N, k).  A
// product coordinate survives multiplication exactly when both factors do,
// with matching exponents and restricted action, so the identification is a
// bijection given by a coordinate permutation.
GHom mult_monoidal(const GModule& M, const GModule& N, unsigned k);

// F(X) for X at level 1: the cokernel of (syzygy of X inside the induced
// cover) embedded into the free level-n induced module by p^(n-1).  The
// construction asserts that base_change(F(X), n-1) admits a trace witness.
GModule functor_f(const GModule& X);

// Trace preimage: u with sum_g act(g) . u . act(g^(-1)) = identity, if any.
std::optional<RnHom> higman_witness(const GModule& M);

}  // namespace strel
