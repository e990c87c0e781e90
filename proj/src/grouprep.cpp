#include "strel/grouprep.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <utility>

namespace strel {

namespace {

Shape empty_shape_at(const RingSpec& ring, unsigned level) {
    return Shape::zero(ring.at_level(std::max(level, 1u)));
}

GModule empty_module_at(const RingSpec& ring, const FiniteGroup& G, unsigned level) {
    Shape s = empty_shape_at(ring, level);
    std::vector<RnHom> gens(G.gens.size(), RnHom::identity(s));
    return GModule::make(ring, level, G, s, gens);
}

// Transport the ambient action onto a submodule that is closed under it.
GModule transport_sub(const GModule& amb, const SubmoduleData& K) {
    std::vector<RnHom> gens;
    for (std::size_t s : amb.group.gens) {
        RMatrix m(K.sub.ring, K.sub.rank(), K.sub.rank());
        for (std::size_t i = 0; i < K.sub.rank(); ++i) {
            auto moved = amb.act(s).apply(K.inclusion.mat.row(i));
            auto c = K.express(moved);
            require(c.has_value(), "submodule is not closed under the group action");
            for (std::size_t j = 0; j < K.sub.rank(); ++j) m.at(i, j) = (*c)[j];
        }
        gens.push_back(RnHom::make(K.sub, K.sub, m));
    }
    return GModule::make(amb.ring, amb.level, amb.group, K.sub, gens);
}

// Transport the ambient action onto a quotient by a G-stable submodule:
// lift along the section, act, project.
GModule transport_quot(const GModule& amb, const QuotientData& Q) {
    std::vector<RnHom> gens;
    for (std::size_t s : amb.group.gens) {
        RMatrix m(Q.quot.ring, Q.quot.rank(), Q.quot.rank());
        for (std::size_t i = 0; i < Q.quot.rank(); ++i) {
            auto moved = amb.act(s).apply(Q.section.row(i));
            auto c = Q.projection.apply(moved);
            for (std::size_t j = 0; j < Q.quot.rank(); ++j) m.at(i, j) = c[j];
        }
        gens.push_back(RnHom::make(Q.quot, Q.quot, m));
    }
    return GModule::make(amb.ring, amb.level, amb.group, Q.quot, gens);
}

struct GTensor {
    GModule a, b;  // inputs re-viewed at the common level
    TensorShape ts;
    GModule mod;
};

GTensor tensor_full(const GModule& A, const GModule& B) {
    require(A.ring == B.ring, "tensor factors live over different rings");
    require(A.group == B.group, "tensor factors live over different groups");
    unsigned L = std::max({A.level, B.level, 1u});
    GTensor t;
    t.a = view_at_level(A, L);
    t.b = view_at_level(B, L);
    t.ts = tensor_rn(t.a.shape, t.b.shape);
    std::vector<RnHom> gens;
    for (std::size_t s : A.group.gens)
        gens.push_back(tensor_hom(t.ts, t.ts, t.a.act(s), t.b.act(s)));
    t.mod = GModule::make(A.ring, L, A.group, t.ts.prod, gens);
    return t;
}

}  // namespace

GModule GModule::make(const RingSpec& ring, unsigned level, const FiniteGroup& group,
                      const Shape& shape, const std::vector<RnHom>& gen_action) {
    require(level <= ring.n, "module level exceeds the ambient ring");
    require(shape.ring == ring.at_level(std::max(level, 1u)),
            "module shape is over the wrong ring level");
    if (level == 0) require(shape.is_zero(), "a level-0 module must be zero");
    require(gen_action.size() == group.gens.size(),
            "one action matrix is required per group generator");
    for (const RnHom& h : gen_action)
        require(h.source == shape && h.target == shape, "generator action has the wrong shape");

    std::vector<RnHom> act(group.order, RnHom::identity(shape));
    std::vector<char> known(group.order, 0);
    known[0] = 1;
    std::deque<std::size_t> bfs{0};
    while (!bfs.empty()) {
        std::size_t g = bfs.front();
        bfs.pop_front();
        for (std::size_t gi = 0; gi < group.gens.size(); ++gi) {
            std::size_t h = group.mul(g, group.gens[gi]);
            if (known[h]) continue;
            act[h] = act[g].then(gen_action[gi]);
            known[h] = 1;
            bfs.push_back(h);
        }
    }
    for (std::size_t g = 0; g < group.order; ++g)
        require(known[g], "generators do not reach the whole group");
    // A(g)A(s) = A(gs) on generators s propagates to the full group law by
    // induction on the word length of the second factor.
    for (std::size_t g = 0; g < group.order; ++g)
        for (std::size_t gi = 0; gi < group.gens.size(); ++gi)
            require(act[g].then(gen_action[gi]) == act[group.mul(g, group.gens[gi])],
                    "generator matrices do not satisfy the group relations");

    GModule M;
    M.ring = ring;
    M.level = level;
    M.group = group;
    M.shape = shape;
    M.action = std::move(act);
    return M;
}

GModule GModule::zero(const RingSpec& ring, const FiniteGroup& group) {
    return empty_module_at(ring, group, 0);
}

bool GModule::operator==(const GModule& o) const {
    return ring == o.ring && level == o.level && group == o.group && shape == o.shape &&
           action == o.action;
}

GHom GHom::make(GModule s, GModule t, RnHom u) {
    require(s.ring == t.ring, "hom between modules over different rings");
    require(s.level == t.level, "hom between modules at different levels");
    require(s.group == t.group, "hom between modules over different groups");
    require(u.source == s.shape && u.target == t.shape, "underlying map has the wrong shape");
    for (std::size_t g : s.group.gens)
        require(s.act(g).then(u) == u.then(t.act(g)), "map is not equivariant");
    GHom f;
    f.source = std::move(s);
    f.target = std::move(t);
    f.underlying = std::move(u);
    return f;
}

GHom GHom::zero(GModule s, GModule t) {
    RnHom u = RnHom::zero(s.shape, t.shape);
    return make(std::move(s), std::move(t), std::move(u));
}

GHom GHom::identity(GModule m) {
    RnHom u = RnHom::identity(m.shape);
    GModule c = m;
    return make(std::move(c), std::move(m), std::move(u));
}

GHom GHom::then(const GHom& g) const {
    require(target == g.source, "composition through mismatched modules");
    return make(source, g.target, underlying.then(g.underlying));
}

GHom GHom::add(const GHom& g) const {
    require(source == g.source && target == g.target, "sum of homs with different ends");
    return make(source, target, underlying.add(g.underlying));
}

GHom GHom::sub(const GHom& g) const {
    require(source == g.source && target == g.target, "difference of homs with different ends");
    return make(source, target, underlying.sub(g.underlying));
}

GHom GHom::scaled(std::uint64_t c) const { return make(source, target, underlying.scaled(c)); }

bool GHom::operator==(const GHom& o) const {
    return source == o.source && target == o.target && underlying == o.underlying;
}

void SES::validate() const {
    require(i.target == q.source, "sequence maps do not share the middle module");
    require(i.then(q).is_zero(), "composite of the sequence maps is nonzero");
    require(kernel_hom(i.underlying).sub.is_zero(), "first sequence map is not injective");
    require(cokernel_hom(q.underlying).quot.is_zero(), "second sequence map is not surjective");
    require(i.source.shape.length() + q.target.shape.length() == i.target.shape.length(),
            "lengths of the ends do not add up to the middle");
    if (r_split) {
        require(r_split->source == i.target.shape && r_split->target == i.source.shape,
                "retraction has the wrong shape");
        require(i.underlying.then(*r_split) == RnHom::identity(i.source.shape),
                "retraction does not split the inclusion");
    }
}

GModule trivial_module(const RingSpec& ring, const FiniteGroup& G, unsigned m) {
    if (m == 0) return GModule::zero(ring, G);
    require(m <= ring.n, "module level exceeds the ambient ring");
    Shape s = Shape::make(ring.at_level(m), {m});
    std::vector<RnHom> gens(G.gens.size(), RnHom::identity(s));
    return GModule::make(ring, m, G, s, gens);
}

GModule regular_module(const RingSpec& ring, const FiniteGroup& G, unsigned m) {
    if (m == 0) return GModule::zero(ring, G);
    require(m <= ring.n, "module level exceeds the ambient ring");
    return induce_shape(ring, G, m, Shape::make(ring.at_level(m), {m}));
}

GModule induce_shape(const RingSpec& ring, const FiniteGroup& G, unsigned m, const Shape& N) {
    if (m == 0) {
        require(N.is_zero(), "cannot induce a nonzero shape to level 0");
        return GModule::zero(ring, G);
    }
    require(m <= ring.n, "module level exceeds the ambient ring");
    require(N.ring == ring.at_level(m), "induced shape must live at the target level");
    std::size_t o = G.order, r = N.rank();
    std::vector<unsigned> exps(r * o);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t g = 0; g < o; ++g) exps[j * o + g] = N.exps[j];
    Shape s = Shape::make(N.ring, std::move(exps));
    std::vector<RnHom> gens;
    for (std::size_t sg : G.gens) {
        RMatrix mat(s.ring, r * o, r * o);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t g = 0; g < o; ++g) mat.at(j * o + g, j * o + G.mul(g, sg)) = 1;
        gens.push_back(RnHom::make(s, s, mat));
    }
    return GModule::make(ring, m, G, s, gens);
}

GHom augmentation_hom(const RingSpec& ring, const FiniteGroup& G, unsigned m) {
    require(m >= 1 && m <= ring.n, "augmentation level out of range");
    GModule A = regular_module(ring, G, m);
    GModule k = view_at_level(trivial_module(ring, G, 1), m);
    RMatrix c(A.shape.ring, G.order, 1);
    for (std::size_t g = 0; g < G.order; ++g) c.at(g, 0) = 1;
    return GHom::make(A, k, RnHom::make(A.shape, k.shape, c));
}

CosyzygyW cosyzygy_w(const RingSpec& ring, const FiniteGroup& G, unsigned i) {
    require(i >= 1 && i <= ring.n, "cosyzygy level out of range");
    GModule k = view_at_level(trivial_module(ring, G, 1), i);
    GModule A = regular_module(ring, G, i);
    RMatrix c(A.shape.ring, 1, G.order);
    std::uint64_t v = A.shape.ring.pow_of_p(i - 1);
    for (std::size_t g = 0; g < G.order; ++g) c.at(0, g) = v;
    GHom norm = GHom::make(k, A, RnHom::make(k.shape, A.shape, c));
    GQuot Q = cokernel_g(norm);
    return {Q.quot, norm, Q.projection};
}

SES magic_sequence(const RingSpec& ring, const FiniteGroup& G, unsigned m) {
    require(m >= 2 && m <= ring.n, "sequence level out of range");
    GHom aug = augmentation_hom(ring, G, m);
    GSub K1 = kernel_g(aug);

    // K1 sits inside A_m with coordinate sums divisible by p; dividing the
    // sum by p is an equivariant map onto the trivial module one level down.
    GModule T = view_at_level(trivial_module(ring, G, m - 1), m);
    const RingSpec& R = K1.sub.shape.ring;
    RMatrix c(R, K1.sub.rank(), 1);
    for (std::size_t i = 0; i < K1.sub.rank(); ++i) {
        std::uint64_t sum = 0;
        for (std::size_t j = 0; j < G.order; ++j)
            sum = R.add(sum, K1.inclusion.underlying.mat.at(i, j));
        require(sum % ring.p == 0, "kernel row with coordinate sum not divisible by p");
        c.at(i, 0) = (sum / ring.p) % R.pow_of_p(m - 1);
    }
    GHom phi = GHom::make(K1.sub, T, RnHom::make(K1.sub.shape, T.shape, c));
    GSub K2 = kernel_g(phi);

    SES ses;
    ses.i = dual_g_hom(phi);
    ses.q = dual_g_hom(K2.inclusion);
    HomSystem hs(ses.i.target.shape, ses.i.source.shape);
    hs.add_left(ses.i.underlying, RnHom::identity(ses.i.source.shape));
    ses.r_split = hs.solve_affine().solution;
    require(ses.r_split.has_value(), "no retraction found for the inclusion");
    ses.validate();
    return ses;
}

GModule view_at_level(const GModule& M, unsigned m) {
    require(m <= M.ring.n, "view level exceeds the ambient ring");
    if (m == 0) {
        require(M.shape.is_zero(), "cannot view a nonzero module at level 0");
        return GModule::zero(M.ring, M.group);
    }
    require(M.shape.is_zero() || M.shape.exps.front() <= m,
            "view level is below an exponent of the module");
    Shape s = Shape::make(M.ring.at_level(m), M.shape.exps);
    std::vector<RnHom> gens;
    for (std::size_t sg : M.group.gens) gens.push_back(RnHom::make(s, s, M.act(sg).mat));
    return GModule::make(M.ring, m, M.group, s, gens);
}

GModule base_change(const GModule& M, unsigned m) {
    require(m <= M.level, "base change must not raise the level");
    if (m == 0) return GModule::zero(M.ring, M.group);
    std::vector<unsigned> exps;
    for (unsigned e : M.shape.exps) exps.push_back(std::min(e, m));
    Shape s = Shape::make(M.ring.at_level(m), std::move(exps));
    std::vector<RnHom> gens;
    for (std::size_t sg : M.group.gens) gens.push_back(RnHom::make(s, s, M.act(sg).mat));
    return GModule::make(M.ring, m, M.group, s, gens);
}

GHom base_change_hom(const GHom& f, unsigned m) {
    GModule S = base_change(f.source, m);
    GModule T = base_change(f.target, m);
    if (m == 0) return GHom::zero(S, T);
    return GHom::make(S, T, RnHom::make(S.shape, T.shape, f.underlying.mat));
}

GHom bc_unit(const GModule& M, unsigned m) {
    if (M.level == 0) return GHom::identity(M);
    GModule B = view_at_level(base_change(M, m), M.level);
    RMatrix u(M.shape.ring, M.rank(), B.rank());
    for (std::size_t i = 0; i < B.rank(); ++i) u.at(i, i) = 1;
    return GHom::make(M, B, RnHom::make(M.shape, B.shape, u));
}

GDirectSum direct_sum_g(const GModule& A, const GModule& B) {
    require(A.ring == B.ring, "direct sum over different rings");
    require(A.level == B.level, "direct sum at different levels");
    require(A.group == B.group, "direct sum over different groups");
    DirectSum d = direct_sum(A.shape, B.shape);
    std::vector<RnHom> gens;
    for (std::size_t sg : A.group.gens)
        gens.push_back(d.proj1.then(A.act(sg)).then(d.inj1)
                           .add(d.proj2.then(B.act(sg)).then(d.inj2)));
    GModule S = GModule::make(A.ring, A.level, A.group, d.sum, gens);
    GDirectSum out{S, GHom::make(A, S, d.inj1), GHom::make(B, S, d.inj2),
                   GHom::make(S, A, d.proj1), GHom::make(S, B, d.proj2)};
    return out;
}

GModule tensor_g(const GModule& A, const GModule& B) { return tensor_full(A, B).mod; }

GHom tensor_g_hom(const GHom& f, const GHom& g) {
    GTensor s = tensor_full(f.source, g.source);
    GTensor t = tensor_full(f.target, g.target);
    require(s.mod.level == t.mod.level, "tensor of homs with mismatched levels");
    RnHom u = tensor_hom(s.ts, t.ts,
                         RnHom::make(s.a.shape, t.a.shape, f.underlying.mat),
                         RnHom::make(s.b.shape, t.b.shape, g.underlying.mat));
    return GHom::make(s.mod, t.mod, u);
}

GHom tensor_swap(const GModule& A, const GModule& B) {
    GTensor s = tensor_full(A, B);
    GTensor t = tensor_full(B, A);
    std::size_t r1 = s.ts.rank1, r2 = s.ts.rank2;
    RMatrix u(s.mod.shape.ring, s.mod.rank(), t.mod.rank());
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < r2; ++j) u.at(s.ts.pos[i * r2 + j], t.ts.pos[j * r1 + i]) = 1;
    return GHom::make(s.mod, t.mod, RnHom::make(s.mod.shape, t.mod.shape, u));
}

GModule dual_g(const GModule& M) {
    std::vector<RnHom> gens;
    for (std::size_t sg : M.group.gens) gens.push_back(dual_hom(M.act(M.group.inverse(sg))));
    return GModule::make(M.ring, M.level, M.group, M.shape, gens);
}

GHom dual_g_hom(const GHom& f) {
    return GHom::make(dual_g(f.target), dual_g(f.source), dual_hom(f.underlying));
}

GModule induce_restrict(const GModule& M) {
    if (M.level == 0) return GModule::zero(M.ring, M.group);
    return induce_shape(M.ring, M.group, M.level, M.shape);
}

GHom unit_hom(const GModule& M) {
    GModule I = induce_restrict(M);
    std::size_t o = M.group.order, r = M.rank();
    RMatrix u(M.shape.ring, r, r * o);
    for (std::size_t g = 0; g < o; ++g) {
        const RMatrix& ag = M.act(M.group.inverse(g)).mat;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) u.at(i, j * o + g) = ag.at(i, j);
    }
    return GHom::make(M, I, RnHom::make(M.shape, I.shape, u));
}

GHom counit_hom(const GModule& M) {
    GModule I = induce_restrict(M);
    std::size_t o = M.group.order, r = M.rank();
    RMatrix e(M.shape.ring, r * o, r);
    for (std::size_t g = 0; g < o; ++g) {
        const RMatrix& ag = M.act(g).mat;
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < r; ++i) e.at(j * o + g, i) = ag.at(j, i);
    }
    return GHom::make(I, M, RnHom::make(I.shape, M.shape, e));
}

GSub kernel_g(const GHom& f) {
    SubmoduleData K = kernel_hom(f.underlying);
    GModule sub = transport_sub(f.source, K);
    GHom inc = GHom::make(sub, f.source, K.inclusion);
    return {std::move(sub), std::move(inc), std::move(K)};
}

GQuot cokernel_g(const GHom& f) {
    QuotientData Q = cokernel_hom(f.underlying);
    GModule quot = transport_quot(f.target, Q);
    return {quot, GHom::make(f.target, quot, Q.projection), Q.section};
}

GImage image_g(const GHom& f) {
    SubmoduleData I = submodule(f.target.shape, f.underlying.mat);
    GModule img = transport_sub(f.target, I);
    GHom inc = GHom::make(img, f.target, I.inclusion);
    GHom onto = GHom::make(f.source, img,
                           RnHom::make(f.source.shape, I.sub, I.gens_to_normal));
    require(onto.underlying.then(inc.underlying) == f.underlying,
            "image factorization failed to reproduce the map");
    return {img, inc, onto};
}

GQuot quotient_by_g(const GModule& M, const RMatrix& rows) {
    require(rows.cols == M.rank(), "generating rows have the wrong width");
    RMatrix closed(M.shape.ring, rows.rows * M.group.order, M.rank());
    for (std::size_t g = 0; g < M.group.order; ++g)
        for (std::size_t r = 0; r < rows.rows; ++r) {
            auto moved = M.act(g).apply(rows.row(r));
            for (std::size_t j = 0; j < M.rank(); ++j) closed.at(g * rows.rows + r, j) = moved[j];
        }
    QuotientData Q = quotient_by(M.shape, closed);
    GModule quot = transport_quot(M, Q);
    return {quot, GHom::make(M, quot, Q.projection), Q.section};
}

Shape fixed_point_shape(const GModule& M) {
    std::size_t r = M.rank(), ng = M.group.gens.size();
    if (r == 0 || ng == 0) return M.shape;
    const RingSpec& R = M.shape.ring;
    RMatrix stack(R, r + ng * r, ng * r);
    for (std::size_t gi = 0; gi < ng; ++gi) {
        RMatrix d = M.act(M.group.gens[gi]).mat.sub(RMatrix::identity(R, r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) stack.at(i, gi * r + j) = d.at(i, j);
    }
    for (std::size_t c = 0; c < ng * r; ++c)
        stack.at(r + c, c) = R.pow_of_p(M.shape.exps[c % r]) % R.modulus;
    RMatrix K = left_kernel(stack);
    RMatrix X(R, K.rows, r);
    for (std::size_t i = 0; i < K.rows; ++i)
        for (std::size_t j = 0; j < r; ++j) X.at(i, j) = K.at(i, j);
    return submodule(M.shape, X).sub;
}

Shape coinvariant_shape(const GModule& M) {
    std::size_t r = M.rank(), ng = M.group.gens.size();
    if (r == 0 || ng == 0) return M.shape;
    const RingSpec& R = M.shape.ring;
    RMatrix rows(R, ng * r, r);
    for (std::size_t gi = 0; gi < ng; ++gi) {
        RMatrix d = M.act(M.group.gens[gi]).mat.sub(RMatrix::identity(R, r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) rows.at(gi * r + i, j) = d.at(i, j);
    }
    return quotient_by_g(M, rows).quot.shape;
}

std::vector<GHom> hom_space(const GModule& M, const GModule& N) {
    require(M.ring == N.ring, "hom space over different rings");
    require(M.group == N.group, "hom space over different groups");
    unsigned L = std::max({M.level, N.level, 1u});
    GModule A = view_at_level(M, L);
    GModule B = view_at_level(N, L);
    HomSystem hs(A.shape, B.shape);
    for (std::size_t sg : A.group.gens) hs.add_commute(A.act(sg), B.act(sg));
    std::vector<GHom> out;
    for (RnHom& h : hs.kernel_basis()) out.push_back(GHom::make(A, B, std::move(h)));
    return out;
}

namespace {

// Additive order of a nonzero hom: p^max(mu_j - val(c_ij)).
std::uint64_t hom_order(const RnHom& h) {
    const RingSpec& R = h.source.ring;
    unsigned t = 0;
    for (std::size_t i = 0; i < h.mat.rows; ++i)
        for (std::size_t j = 0; j < h.mat.cols; ++j) {
            std::uint64_t c = h.mat.at(i, j);
            if (c == 0) continue;
            unsigned need = h.target.exps[j] - R.valuation(c);
            t = std::max(t, need);
        }
    return R.pow_of_p(t);  // a count of multiples, not a ring element
}

}  // namespace

IsoResult is_isomorphic(const GModule& M, const GModule& N, std::uint64_t seed, unsigned budget) {
    require(M.ring == N.ring, "isomorphism test over different rings");
    require(M.group == N.group, "isomorphism test over different groups");
    IsoResult res;
    if (M.is_zero() != N.is_zero()) {
        res.status = IsoStatus::No;
        return res;
    }
    unsigned L = std::max({M.level, N.level, 1u});
    GModule A = view_at_level(M, L);
    GModule B = view_at_level(N, L);
    if (M.is_zero()) {
        res.status = IsoStatus::Yes;
        res.witness = GHom::zero(A, B);
        res.inverse = GHom::zero(B, A);
        return res;
    }
    if (A.shape != B.shape || fixed_point_shape(A) != fixed_point_shape(B) ||
        coinvariant_shape(A) != coinvariant_shape(B)) {
        res.status = IsoStatus::No;
        return res;
    }

    std::vector<GHom> H = hom_space(A, B);
    if (H.empty()) {
        res.status = IsoStatus::No;
        return res;
    }
    std::vector<std::uint64_t> ord;
    for (const GHom& h : H) ord.push_back(hom_order(h.underlying));

    auto combo = [&](const std::vector<std::uint64_t>& c) {
        RnHom u = RnHom::zero(A.shape, B.shape);
        for (std::size_t r = 0; r < H.size(); ++r)
            if (c[r]) u = u.add(H[r].underlying.scaled(c[r]));
        return u;
    };
    auto bijective = [&](const RnHom& u) { return kernel_hom(u).sub.is_zero(); };
    auto finish = [&](const RnHom& u) {
        HomSystem hs(B.shape, A.shape);
        hs.add_left(u, RnHom::identity(A.shape));
        auto v = hs.solve_affine().solution;
        require(v.has_value(), "bijective map has no right inverse");
        require(u.then(*v) == RnHom::identity(A.shape) && v->then(u) == RnHom::identity(B.shape),
                "inverse verification failed");
        res.status = IsoStatus::Yes;
        res.witness = GHom::make(A, B, u);
        res.inverse = GHom::make(B, A, *v);
        return res;
    };

    constexpr std::uint64_t kEnumCap = 6561;
    std::uint64_t total = 1;
    bool small = true;
    for (std::uint64_t o : ord) {
        if (total > kEnumCap / o) {
            small = false;
            break;
        }
        total *= o;
    }
    if (small && total <= kEnumCap) {
        std::vector<std::uint64_t> c(H.size(), 0);
        for (std::uint64_t step = 1; step < total; ++step) {
            std::size_t r = 0;
            while (true) {
                c[r] += 1;
                if (c[r] < ord[r]) break;
                c[r] = 0;
                ++r;
            }
            RnHom u = combo(c);
            if (bijective(u)) return finish(u);
        }
        res.status = IsoStatus::No;  // every hom was inspected
        return res;
    }

    // Unit-coefficient sweep when feasible, then random draws.
    const std::uint64_t p = A.shape.ring.p;
    std::uint64_t ptot = 1;
    bool psmall = true;
    for (std::size_t r = 0; r < H.size(); ++r) {
        if (ptot > kEnumCap / p) {
            psmall = false;
            break;
        }
        ptot *= p;
    }
    if (psmall && ptot <= kEnumCap) {
        std::vector<std::uint64_t> c(H.size(), 0);
        for (std::uint64_t step = 1; step < ptot; ++step) {
            std::size_t r = 0;
            while (true) {
                c[r] += 1;
                if (c[r] < p) break;
                c[r] = 0;
                ++r;
            }
            RnHom u = combo(c);
            if (bijective(u)) return finish(u);
        }
    }
    std::mt19937_64 eng(seed);
    for (unsigned t = 0; t < budget; ++t) {
        std::vector<std::uint64_t> c(H.size());
        bool all_zero = true;
        for (std::size_t r = 0; r < H.size(); ++r) {
            c[r] = eng() % ord[r];
            all_zero = all_zero && c[r] == 0;
        }
        if (all_zero) continue;
        RnHom u = combo(c);
        if (bijective(u)) return finish(u);
    }
    res.status = IsoStatus::Unknown;
    return res;
}

GModule mult_functor(const GModule& M, unsigned k) {
    require(k <= M.level, "multiplication depth exceeds the module level");
    if (k == 0) return M;
    unsigned L = M.level - k;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < M.rank(); ++j)
        if (M.shape.exps[j] > k) keep.push_back(j);
    if (L == 0 || keep.empty()) return empty_module_at(M.ring, M.group, L);
    std::vector<unsigned> exps;
    for (std::size_t j : keep) exps.push_back(M.shape.exps[j] - k);
    Shape s = Shape::make(M.ring.at_level(L), std::move(exps));
    std::vector<RnHom> gens;
    for (std::size_t sg : M.group.gens) {
        RMatrix m(s.ring, keep.size(), keep.size());
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b)
                m.at(a, b) = M.act(sg).mat.at(keep[a], keep[b]);
        gens.push_back(RnHom::make(s, s, m));
    }
    return GModule::make(M.ring, L, M.group, s, gens);
}

GHom mult_functor_hom(const GHom& f, unsigned k) {
    GModule S = mult_functor(f.source, k);
    GModule T = mult_functor(f.target, k);
    if (S.is_zero() || T.is_zero()) return GHom::zero(S, T);
    std::vector<std::size_t> ks, kt;
    for (std::size_t j = 0; j < f.source.rank(); ++j)
        if (f.source.shape.exps[j] > k) ks.push_back(j);
    for (std::size_t j = 0; j < f.target.rank(); ++j)
        if (f.target.shape.exps[j] > k) kt.push_back(j);
    RMatrix m(S.shape.ring, ks.size(), kt.size());
    for (std::size_t a = 0; a < ks.size(); ++a)
        for (std::size_t b = 0; b < kt.size(); ++b)
            m.at(a, b) = f.underlying.mat.at(ks[a], kt[b]);
    return GHom::make(S, T, RnHom::make(S.shape, T.shape, m));
}

GHom mult_monoidal(const GModule& M, const GModule& N, unsigned k) {
    GTensor big = tensor_full(M, N);
    GModule B = mult_functor(big.mod, k);
    GTensor A = tensor_full(mult_functor(M, k), mult_functor(N, k));
    if (B.level < A.mod.level) B = view_at_level(B, A.mod.level);  // both sides zero

    std::vector<std::size_t> sm, sn;
    for (std::size_t j = 0; j < M.rank(); ++j)
        if (M.shape.exps[j] > k) sm.push_back(j);
    for (std::size_t j = 0; j < N.rank(); ++j)
        if (N.shape.exps[j] > k) sn.push_back(j);
    std::vector<std::size_t> col(big.mod.rank(), 0);
    std::size_t next = 0;
    for (std::size_t q = 0; q < big.mod.rank(); ++q)
        if (big.mod.shape.exps[q] > k) col[q] = next++;

    RMatrix u(A.mod.shape.ring, A.mod.rank(), B.rank());
    for (std::size_t a = 0; a < sm.size(); ++a)
        for (std::size_t b = 0; b < sn.size(); ++b) {
            std::size_t q = big.ts.pos[sm[a] * N.rank() + sn[b]];
            u.at(A.ts.pos[a * sn.size() + b], col[q]) = 1;
        }
    return GHom::make(A.mod, B, RnHom::make(A.mod.shape, B.shape, u));
}

GModule functor_f(const GModule& X) {
    unsigned n = X.ring.n;
    if (X.is_zero()) return empty_module_at(X.ring, X.group, n);
    require(X.level == 1, "input must live at level 1");
    GSub K = kernel_g(counit_hom(X));
    std::size_t r = X.rank(), o = X.group.order;
    GModule In = induce_shape(X.ring, X.group, n,
                              Shape::make(X.ring.at_level(n), std::vector<unsigned>(r, n)));
    GModule Kn = view_at_level(K.sub, n);
    std::uint64_t scale = X.ring.pow_of_p(n - 1);
    RMatrix em(Kn.shape.ring, Kn.rank(), r * o);
    for (std::size_t i = 0; i < Kn.rank(); ++i)
        for (std::size_t j = 0; j < r * o; ++j)
            em.at(i, j) = scale * K.inclusion.underlying.mat.at(i, j);
    GHom emb = GHom::make(Kn, In, RnHom::make(Kn.shape, In.shape, em));
    GModule FX = cokernel_g(emb).quot;
    require(higman_witness(base_change(FX, n - 1)).has_value(),
            "image module fails the trace criterion one level down");
    return FX;
}

std::optional<RnHom> higman_witness(const GModule& M) {
    HomSystem hs(M.shape, M.shape);
    std::vector<std::pair<RnHom, RnHom>> pairs;
    for (std::size_t g = 0; g < M.group.order; ++g)
        pairs.emplace_back(M.act(g), M.act(M.group.inverse(g)));
    hs.add_conjugation_sum(pairs, RnHom::identity(M.shape));
    return hs.solve_affine().solution;
}

}  // namespace strel
