#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "strel/rnmod.hpp"

using namespace strel;
using oracle::Vec;

namespace {

RnHom random_hom(const Shape& s, const Shape& t, std::mt19937_64& eng) {
    HomSystem sys(s, t);
    std::vector<std::uint64_t> u(sys.param_count());
    for (std::uint64_t& v : u) v = eng();
    return sys.from_params(u);
}

}  // namespace

TEST_CASE("shape validation") {
    RingSpec R = RingSpec::make(2, 2);
    CHECK(Shape::make(R, {2, 2, 1}).rank() == 3);
    CHECK(Shape::zero(R).rank() == 0);
    CHECK(Shape::make(R, {2, 1}).str() == "[2,1] over Z/2^2");
    CHECK_THROWS_AS(Shape::make(R, {1, 2}), ConstraintError);  // must be weakly decreasing
    CHECK_THROWS_AS(Shape::make(R, {3}), ConstraintError);     // exceeds n
    CHECK_THROWS_AS(Shape::make(R, {2, 0}), ConstraintError);  // zero exponent
}

TEST_CASE("hom congruence is enforced and columns are reduced") {
    RingSpec R = RingSpec::make(2, 3);
    Shape s = Shape::make(R, {1});
    Shape t = Shape::make(R, {3});
    RMatrix bad(R, 1, 1);
    bad.at(0, 0) = 2;  // needs divisibility by p^{3-1} = 4
    CHECK_THROWS_AS(RnHom::make(s, t, bad), ConstraintError);
    RMatrix ok(R, 1, 1);
    ok.at(0, 0) = 4;
    RnHom h = RnHom::make(s, t, ok);
    CHECK(h.mat.at(0, 0) == 4);
    // entries into a Z/p^1 column are stored reduced
    RMatrix big(R, 1, 1);
    big.at(0, 0) = 7;
    RnHom g = RnHom::make(t, s, big);
    CHECK(g.mat.at(0, 0) == 1);
    // composition must match at the middle shape
    CHECK_THROWS_AS(h.then(h), ConstraintError);
    CHECK(h.then(g).mat.at(0, 0) == 0);  // 4 then reduce mod 2
}

TEST_CASE("submodule and quotient of Z/4 + Z/2 by the diagonal") {
    RingSpec R = RingSpec::make(2, 2);
    Shape M = Shape::make(R, {2, 1});
    RMatrix g(R, 1, 2);
    g.at(0, 0) = 2;
    g.at(0, 1) = 1;
    QuotientData q = quotient_by(M, g);
    CHECK(q.quot.exps == std::vector<unsigned>{2});
    Vec img = q.projection.apply({2, 1});
    CHECK(img[0] == 0);

    SubmoduleData sd = submodule(M, g);
    CHECK(sd.sub.exps == std::vector<unsigned>{1});
    std::optional<Vec> e = sd.express({2, 1});
    REQUIRE(e.has_value());
    CHECK(sd.inclusion.apply(*e) == Vec{2, 1});
    CHECK(!sd.express({1, 0}).has_value());
}

TEST_CASE("kernel, cokernel, image of multiplication by 4 on Z/8") {
    RingSpec R = RingSpec::make(2, 3);
    Shape F = Shape::make(R, {3});
    RMatrix fm(R, 1, 1);
    fm.at(0, 0) = 4;
    RnHom f = RnHom::make(F, F, fm);
    CHECK(kernel_hom(f).sub.exps == std::vector<unsigned>{2});
    CHECK(cokernel_hom(f).quot.exps == std::vector<unsigned>{2});
    CHECK(image_hom(f).image.exps == std::vector<unsigned>{1});
}

TEST_CASE("kernel and image sizes are complementary on random homs") {
    std::mt19937_64 eng(411);
    RingSpec R = RingSpec::make(2, 3);
    Shape s = Shape::make(R, {3, 2, 1});
    Shape t = Shape::make(R, {2, 2});
    auto size_of = [&](const std::vector<unsigned>& exps) {
        std::uint64_t c = 1;
        for (unsigned e : exps) c *= R.pow_of_p(e);
        return c;
    };
    for (unsigned i = 0; i < 40; ++i) {
        RnHom f = random_hom(s, t, eng);
        ImageData im = image_hom(f);
        SubmoduleData k = kernel_hom(f);
        CHECK(size_of(k.sub.exps) * size_of(im.image.exps) == size_of(s.exps));
        // the image inclusion composed after the surjection reproduces f
        CHECK(im.onto.then(im.inclusion) == f);
        // kernel really dies
        CHECK(k.inclusion.then(f) == RnHom::zero(k.sub, t));
    }
}

TEST_CASE("direct sum injections and projections") {
    RingSpec R = RingSpec::make(3, 2);
    Shape a = Shape::make(R, {2, 1});
    Shape b = Shape::make(R, {1, 1});
    DirectSum d = direct_sum(a, b);
    CHECK(d.sum.exps == std::vector<unsigned>({2, 1, 1, 1}));
    CHECK(d.inj1.then(d.proj1) == RnHom::identity(a));
    CHECK(d.inj2.then(d.proj2) == RnHom::identity(b));
    CHECK(d.inj1.then(d.proj2) == RnHom::zero(a, b));
    CHECK(d.inj2.then(d.proj1) == RnHom::zero(b, a));
    RnHom glue = d.proj1.then(d.inj1).add(d.proj2.then(d.inj2));
    CHECK(glue == RnHom::identity(d.sum));
}

TEST_CASE("tensor shapes, functoriality, swap-free invariants") {
    RingSpec R = RingSpec::make(2, 2);
    Shape M = Shape::make(R, {2, 1});
    TensorShape t = tensor_rn(M, M);
    CHECK(t.prod.exps == std::vector<unsigned>({2, 1, 1, 1}));
    RnHom idt = tensor_hom(t, t, RnHom::identity(M), RnHom::identity(M));
    CHECK(idt == RnHom::identity(t.prod));

    std::mt19937_64 eng(52);
    RingSpec R8 = RingSpec::make(2, 3);
    Shape A = Shape::make(R8, {3, 1});
    Shape B = Shape::make(R8, {2, 2});
    Shape C = Shape::make(R8, {2, 1});
    TensorShape taa = tensor_rn(A, A);
    TensorShape tbb = tensor_rn(B, B);
    TensorShape tcc = tensor_rn(C, C);
    CHECK(tensor_rn(A, B).prod.exps == tensor_rn(B, A).prod.exps);
    for (unsigned i = 0; i < 25; ++i) {
        RnHom f = random_hom(A, B, eng), fp = random_hom(B, C, eng);
        RnHom g = random_hom(A, B, eng), gp = random_hom(B, C, eng);
        RnHom lhs = tensor_hom(taa, tcc, f.then(fp), g.then(gp));
        RnHom rhs = tensor_hom(taa, tbb, f, g).then(tensor_hom(tbb, tcc, fp, gp));
        CHECK(lhs == rhs);
        // additivity in the left argument
        RnHom sum = tensor_hom(taa, tbb, f.add(g), f);
        CHECK(sum == tensor_hom(taa, tbb, f, f).add(tensor_hom(taa, tbb, g, f)));
    }
}

TEST_CASE("dual is a contravariant involution") {
    RingSpec R = RingSpec::make(2, 3);
    Shape S1 = Shape::make(R, {3, 2, 1});
    Shape S2 = Shape::make(R, {2, 2, 1});
    HomSystem sys(S1, S2);
    std::vector<RnHom> basis = sys.kernel_basis();
    CHECK(!basis.empty());
    for (const RnHom& h : basis) CHECK(dual_hom(dual_hom(h)) == h);
    std::mt19937_64 eng(8);
    for (unsigned i = 0; i < 25; ++i) {
        RnHom f = random_hom(S1, S2, eng);
        RnHom g = random_hom(S2, S1, eng);
        CHECK(dual_hom(f.then(g)) == dual_hom(g).then(dual_hom(f)));
        CHECK(dual_hom(f).source.exps == S2.exps);
        CHECK(dual_hom(f).target.exps == S1.exps);
    }
}

TEST_CASE("hom system solves affine constraints") {
    RingSpec R = RingSpec::make(2, 3);
    Shape S1 = Shape::make(R, {3, 2, 1});
    Shape S2 = Shape::make(R, {2, 2, 1});
    DirectSum ds = direct_sum(S1, S2);
    HomSystem hs(ds.sum, S2);
    RMatrix fm(R, 3, 3);
    fm.at(0, 0) = 2;
    RnHom f = RnHom::make(S1, S2, fm);
    hs.add_left(ds.inj1, f);
    HomSystem::AffineOutcome out = hs.solve_affine();
    REQUIRE(out.solution.has_value());
    CHECK(ds.inj1.then(*out.solution) == f);

    // an unsatisfiable system reports a residual: 0 . P = id has no solution
    HomSystem bad(S1, S2);
    RnHom idm(RnHom::identity(S2));
    bad.add_left(RnHom::zero(S2, S1), idm);
    HomSystem::AffineOutcome nope = bad.solve_affine();
    CHECK(!nope.solution.has_value());
}

TEST_CASE("kernel basis spans exactly the homs annihilated by the constraints") {
    // All homs S1 -> S2 commuting with multiplication by 3 on both sides is
    // everything; commuting with mismatched scalars forces divisibility.
    RingSpec R = RingSpec::make(2, 2);
    Shape S1 = Shape::make(R, {2});
    Shape S2 = Shape::make(R, {2});
    HomSystem sys(S1, S2);
    sys.add_commute(RnHom::identity(S1).scaled(3), RnHom::identity(S2).scaled(1));
    // 3x = x forces 2x = 0, i.e. x in {0, 2} inside Z/4
    std::vector<RnHom> basis = sys.kernel_basis();
    std::set<std::uint64_t> span{0};
    for (bool grew = true; grew;) {
        grew = false;
        for (const RnHom& b : basis)
            for (std::uint64_t v : std::set<std::uint64_t>(span))
                grew |= span.insert(R.add(v, b.mat.at(0, 0))).second;
    }
    CHECK(span == std::set<std::uint64_t>({0, 2}));
}
