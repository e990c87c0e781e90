#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace strel;

namespace {

// Exhaustive reference for hom_space.  Feasible when |N|^rank(M) stays small;
// every pair below keeps that count under 2^20 candidate matrices.  Inputs at
// different levels are compared in the common ambient level.
void check_hom_space(const GModule& M0, const GModule& N0) {
    unsigned L = std::max({M0.level, N0.level, 1u});
    GModule M = view_at_level(M0, L), N = view_at_level(N0, L);
    std::set<std::vector<std::uint64_t>> brute = oracle::all_homs_brute(M, N);
    std::set<std::vector<std::uint64_t>> spanned =
        oracle::span_of_homs(hom_space(M, N), M, N);
    CHECK(brute == spanned);
}

}  // namespace

TEST_CASE("group construction and parsing") {
    FiniteGroup C4 = FiniteGroup::parse("cyclic:4");
    CHECK(C4.order == 4);
    CHECK(C4.mul(3, 2) == 1);
    CHECK(C4.inverse(3) == 1);
    FiniteGroup S3 = FiniteGroup::symmetric3();
    CHECK(S3.order == 6);
    bool abelian = true;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b)
            if (S3.mul(a, b) != S3.mul(b, a)) abelian = false;
    CHECK(!abelian);
    CHECK_THROWS_AS(FiniteGroup::parse("cyclic:0"), ConstraintError);
    CHECK_THROWS_AS(FiniteGroup::parse("dihedral:3"), ParseError);
}

TEST_CASE("regular, trivial, cosyzygy shapes at (2,2,C2)") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule A2 = regular_module(R, C2, 2);
    CHECK(A2.shape.exps == std::vector<unsigned>({2, 2}));
    CHECK(A2.act(1).mat.at(0, 1) == 1);
    CHECK(A2.act(1).mat.at(0, 0) == 0);
    CHECK(trivial_module(R, C2, 1).shape.exps == std::vector<unsigned>{1});
    CHECK(cosyzygy_w(R, C2, 2).w.shape.exps == std::vector<unsigned>({2, 1}));
    CHECK(cosyzygy_w(R, C2, 1).w.shape.exps == std::vector<unsigned>{1});
    GHom aug = augmentation_hom(R, C2, 2);
    CHECK(kernel_g(aug).sub.shape.exps == std::vector<unsigned>({2, 1}));
    CHECK_THROWS_AS(cosyzygy_w(R, C2, 3), ConstraintError);
}

TEST_CASE("group law verification rejects a non-action") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    Shape s = Shape::make(R, {2});
    RMatrix m(R, 1, 1);
    m.at(0, 0) = 2;  // not invertible, cannot be a group action
    CHECK_THROWS_AS(GModule::make(R, 2, C2, s, {RnHom::make(s, s, m)}), ConstraintError);
    RMatrix m2(R, 1, 1);
    m2.at(0, 0) = 3;  // invertible and 3^2 = 9 = 1 mod 4: lawful involution
    GModule ok = GModule::make(R, 2, C2, s, {RnHom::make(s, s, m2)});
    CHECK(ok.act(1).mat.at(0, 0) == 3);
    CHECK(ok.act(0) == GHom::identity(ok).underlying);
}

TEST_CASE("magic sequence at (2,2,C2) and (3,2,C3)") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    SES ms = magic_sequence(R, C2, 2);
    ms.validate();
    CHECK(ms.i.source.shape.exps == std::vector<unsigned>{1});
    CHECK(ms.i.target.shape.exps == std::vector<unsigned>({2, 1}));
    CHECK(ms.r_split.has_value());

    RingSpec R3 = RingSpec::make(3, 2);
    FiniteGroup C3 = FiniteGroup::cyclic(3);
    SES ms3 = magic_sequence(R3, C3, 2);
    ms3.validate();
    CHECK(ms3.i.target.shape.exps == std::vector<unsigned>({2, 2, 1}));
    CHECK(ms3.r_split.has_value());
    CHECK(is_isomorphic(ms3.i.target, cosyzygy_w(R3, C3, 2).w, 5, 64).status == IsoStatus::Yes);
}

TEST_CASE("higman witnesses for free vs trivial modules") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    CHECK(higman_witness(regular_module(R, C2, 1)).has_value());
    CHECK(higman_witness(regular_module(R, C2, 2)).has_value());
    CHECK(!higman_witness(trivial_module(R, C2, 1)).has_value());
    CHECK(!higman_witness(trivial_module(R, C2, 2)).has_value());
    FiniteGroup S3 = FiniteGroup::symmetric3();
    CHECK(higman_witness(regular_module(R, S3, 1)).has_value());
    CHECK(!higman_witness(trivial_module(R, S3, 1)).has_value());
    GModule Z = GModule::zero(R, C2);
    CHECK(higman_witness(Z).has_value());
}

TEST_CASE("unit, counit, bc_unit") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule T2 = trivial_module(R, C2, 2);
    GHom uc = unit_hom(T2).then(counit_hom(T2));
    CHECK(uc.underlying.mat.at(0, 0) == 2);  // multiplication by |G|
    GImage im = image_g(counit_hom(regular_module(R, C2, 2)));
    CHECK(im.image.shape == regular_module(R, C2, 2).shape);
    GHom bu = bc_unit(T2, 1);
    CHECK(bu.target.shape.exps == std::vector<unsigned>{1});
    CHECK(kernel_g(bu).sub.shape.exps == std::vector<unsigned>{1});
    CHECK_THROWS_AS(base_change(T2, 3), ConstraintError);
}

TEST_CASE("mult functor and F at small parameters") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule T2 = trivial_module(R, C2, 2);
    GModule k1 = trivial_module(R, C2, 1);
    CHECK(mult_functor(T2, 1).shape.exps == std::vector<unsigned>{1});
    CHECK(mult_functor(k1, 1).is_zero());
    CHECK(mult_functor(T2, 0) == T2);
    GModule FX = functor_f(k1);
    CHECK(is_isomorphic(mult_functor(FX, 1), k1, 12345, 64).status == IsoStatus::Yes);
    CHECK(functor_f(GModule::zero(R, C2)).is_zero());
}

TEST_CASE("tensor with the unit and duality") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule T2 = trivial_module(R, C2, 2);
    GModule A2 = regular_module(R, C2, 2);
    GModule w2 = cosyzygy_w(R, C2, 2).w;
    CHECK(is_isomorphic(tensor_g(T2, A2), A2, 999, 64).status == IsoStatus::Yes);
    CHECK(dual_g(dual_g(w2)) == w2);
    CHECK(is_isomorphic(dual_g(A2), A2, 7, 64).status == IsoStatus::Yes);
    GHom sw = tensor_swap(w2, A2);
    CHECK(kernel_hom(sw.underlying).sub.is_zero());
    // associativity up to isomorphism
    GModule l = tensor_g(tensor_g(w2, A2), T2);
    GModule r = tensor_g(w2, tensor_g(A2, T2));
    CHECK(l.shape.exps == r.shape.exps);
    CHECK(is_isomorphic(l, r, 3, 64).status == IsoStatus::Yes);
}

TEST_CASE("fixed points and coinvariants") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    CHECK(fixed_point_shape(regular_module(R, C2, 1)).exps == std::vector<unsigned>{1});
    CHECK(coinvariant_shape(regular_module(R, C2, 1)).exps == std::vector<unsigned>{1});
    CHECK(fixed_point_shape(regular_module(R, C2, 2)).exps == std::vector<unsigned>{2});
}

TEST_CASE("isomorphism testing distinguishes equal shapes with different actions") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule A2 = regular_module(R, C2, 2);
    GModule tt = direct_sum_g(trivial_module(R, C2, 2), trivial_module(R, C2, 2)).sum;
    CHECK(A2.shape == tt.shape);
    CHECK(is_isomorphic(A2, tt, 11, 128).status == IsoStatus::No);
    CHECK(is_isomorphic(A2, A2, 11, 16).status == IsoStatus::Yes);
    GModule Z = GModule::zero(R, C2);
    CHECK(is_isomorphic(Z, GModule::zero(R, C2), 1, 4).status == IsoStatus::Yes);
    CHECK(is_isomorphic(Z, trivial_module(R, C2, 1), 1, 4).status == IsoStatus::No);
    CHECK(hom_space(Z, trivial_module(R, C2, 1)).empty());
}

TEST_CASE("hom_space against exhaustive enumeration at (2,2,C2)") {
    RingSpec R = RingSpec::make(2, 2);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule k1 = trivial_module(R, C2, 1);
    GModule t2 = trivial_module(R, C2, 2);
    GModule w1 = cosyzygy_w(R, C2, 1).w;
    GModule w2 = cosyzygy_w(R, C2, 2).w;
    GModule a1 = regular_module(R, C2, 1);
    GModule a2 = regular_module(R, C2, 2);
    check_hom_space(k1, k1);
    check_hom_space(k1, t2);
    check_hom_space(t2, k1);
    check_hom_space(t2, t2);
    check_hom_space(w1, w2);
    check_hom_space(w2, w2);
    check_hom_space(w2, a2);
    check_hom_space(a2, w2);
    check_hom_space(a2, a2);
    check_hom_space(a1, w2);
    check_hom_space(w2, a1);
    check_hom_space(a1, a2);
    check_hom_space(direct_sum_g(k1, w1).sum, w2);
}

TEST_CASE("hom_space against exhaustive enumeration at (2,3,C2)") {
    RingSpec R = RingSpec::make(2, 3);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule w2 = cosyzygy_w(R, C2, 2).w;
    GModule w3 = cosyzygy_w(R, C2, 3).w;
    GModule a3 = regular_module(R, C2, 3);
    check_hom_space(w2, w2);
    check_hom_space(w3, w3);
    check_hom_space(w2, w3);
    check_hom_space(w3, w2);
    check_hom_space(a3, a3);
    check_hom_space(a3, w3);
    check_hom_space(w3, a3);
}

TEST_CASE("hom_space against exhaustive enumeration at (3,2,C3) and S3") {
    RingSpec R = RingSpec::make(3, 2);
    FiniteGroup C3 = FiniteGroup::cyclic(3);
    GModule k = trivial_module(R, C3, 1);
    GModule t2 = trivial_module(R, C3, 2);
    GModule w1 = cosyzygy_w(R, C3, 1).w;
    GModule a1 = regular_module(R, C3, 1);
    check_hom_space(k, k);
    check_hom_space(k, a1);
    check_hom_space(a1, k);
    check_hom_space(a1, a1);
    check_hom_space(w1, w1);
    check_hom_space(w1, a1);
    check_hom_space(a1, w1);
    check_hom_space(t2, regular_module(R, C3, 2));
    check_hom_space(k, cosyzygy_w(R, C3, 2).w);

    RingSpec R2 = RingSpec::make(2, 1);
    FiniteGroup S3 = FiniteGroup::symmetric3();
    GModule ks = trivial_module(R2, S3, 1);
    GModule as = regular_module(R2, S3, 1);
    check_hom_space(ks, ks);
    check_hom_space(ks, as);
    check_hom_space(as, ks);
}

TEST_CASE("induced modules and equivariance of mult_functor_hom") {
    RingSpec R = RingSpec::make(2, 3);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    GModule ind = induce_shape(R, C2, 3, Shape::make(R, {3, 1}));
    CHECK(ind.rank() == 4);
    CHECK(higman_witness(ind).has_value());
    std::mt19937_64 eng(321);
    GModule w3 = cosyzygy_w(R, C2, 3).w;
    GModule w2v = view_at_level(cosyzygy_w(R, C2, 2).w, 3);
    std::vector<GHom> hs = hom_space(w3, w2v);
    for (const GHom& h : hs) {
        GHom ph = mult_functor_hom(h, 1);
        CHECK(ph.source.shape == mult_functor(w3, 1).shape);
        for (std::size_t g = 0; g < 2; ++g)
            CHECK(ph.source.act(g).then(ph.underlying) == ph.underlying.then(ph.target.act(g)));
    }
    (void)eng;
}

TEST_CASE("mult_monoidal is a bijection on atom pairs") {
    RingSpec R = RingSpec::make(2, 3);
    FiniteGroup C2 = FiniteGroup::cyclic(2);
    std::vector<GModule> pool{view_at_level(trivial_module(R, C2, 2), 3),
                              cosyzygy_w(R, C2, 3).w, regular_module(R, C2, 3),
                              view_at_level(cosyzygy_w(R, C2, 1).w, 3)};
    for (unsigned k = 0; k <= 2; ++k)
        for (const GModule& M : pool)
            for (const GModule& N : pool) {
                GHom u = mult_monoidal(M, N, k);
                CHECK(u.source.shape == u.target.shape);
                CHECK(kernel_g(u).sub.is_zero());
            }
}
