#include "strel/rnmod.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace strel {

namespace {

unsigned shift_for(const Shape& s, const Shape& t, std::size_t i, std::size_t j) {
    unsigned li = s.exps[i], mj = t.exps[j];
    return mj > li ? mj - li : 0;
}

// Reduce every entry of column j mod p^mu_j.
RMatrix reduce_columns(const Shape& t, RMatrix m) {
    for (std::size_t j = 0; j < m.cols; ++j) {
        std::uint64_t q = t.coord_mod(j);
        for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) %= q;
    }
    return m;
}

}  // namespace

Shape Shape::make(RingSpec ring, std::vector<unsigned> exps) {
    for (std::size_t i = 0; i < exps.size(); ++i) {
        require(exps[i] >= 1 && exps[i] <= ring.n, "shape exponent out of range [1, n]");
        require(i == 0 || exps[i - 1] >= exps[i], "shape exponents must be weakly decreasing");
    }
    Shape s;
    s.ring = ring;
    s.exps = std::move(exps);
    return s;
}

unsigned Shape::length() const {
    unsigned t = 0;
    for (unsigned e : exps) t += e;
    return t;
}

std::string Shape::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
    os << "] over Z/" << ring.p << "^" << ring.n;
    return os.str();
}

RnHom RnHom::make(const Shape& s, const Shape& t, RMatrix m) {
    require(s.ring == t.ring, "hom between shapes over different rings");
    require(m.rows == s.rank() && m.cols == t.rank(), "hom matrix has wrong dimensions");
    m.ring = s.ring;
    m = reduce_columns(t, std::move(m));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            unsigned sh = shift_for(s, t, i, j);
            require(s.ring.valuation(m.at(i, j)) >= sh,
                    "hom entry not divisible by the required power of p");
        }
    RnHom f;
    f.source = s;
    f.target = t;
    f.mat = std::move(m);
    return f;
}

RnHom RnHom::identity(const Shape& s) {
    return make(s, s, RMatrix::identity(s.ring, s.rank()));
}

RnHom RnHom::zero(const Shape& s, const Shape& t) {
    return make(s, t, RMatrix(s.ring, s.rank(), t.rank()));
}

RnHom RnHom::then(const RnHom& g) const {
    require(target == g.source, "composition with mismatched shapes");
    return make(source, g.target, mat.mul(g.mat));
}

RnHom RnHom::add(const RnHom& g) const {
    require(source == g.source && target == g.target, "sum of homs with mismatched shapes");
    return make(source, target, mat.add(g.mat));
}

RnHom RnHom::sub(const RnHom& g) const {
    require(source == g.source && target == g.target, "difference of homs with mismatched shapes");
    return make(source, target, mat.sub(g.mat));
}

RnHom RnHom::scaled(std::uint64_t c) const { return make(source, target, mat.scaled(c)); }

RnHom RnHom::negated() const { return scaled(source.ring.neg(1)); }

std::vector<std::uint64_t> RnHom::apply(const std::vector<std::uint64_t>& x) const {
    std::vector<std::uint64_t> y = mat.apply_row(x);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] %= target.coord_mod(j);
    return y;
}

DirectSum direct_sum(const Shape& a, const Shape& b) {
    require(a.ring == b.ring, "direct sum over different rings");
    struct Slot {
        unsigned exp;
        int side;
        std::size_t idx;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < a.rank(); ++i) slots.push_back({a.exps[i], 0, i});
    for (std::size_t j = 0; j < b.rank(); ++j) slots.push_back({b.exps[j], 1, j});
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& x, const Slot& y) { return x.exp > y.exp; });

    DirectSum d;
    std::vector<unsigned> exps;
    d.pos1.resize(a.rank());
    d.pos2.resize(b.rank());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        exps.push_back(slots[k].exp);
        (slots[k].side == 0 ? d.pos1[slots[k].idx] : d.pos2[slots[k].idx]) = k;
    }
    d.sum = Shape::make(a.ring, std::move(exps));

    RMatrix i1(a.ring, a.rank(), d.sum.rank());
    RMatrix i2(a.ring, b.rank(), d.sum.rank());
    RMatrix q1(a.ring, d.sum.rank(), a.rank());
    RMatrix q2(a.ring, d.sum.rank(), b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) i1.at(i, d.pos1[i]) = q1.at(d.pos1[i], i) = 1;
    for (std::size_t j = 0; j < b.rank(); ++j) i2.at(j, d.pos2[j]) = q2.at(d.pos2[j], j) = 1;
    d.inj1 = RnHom::make(a, d.sum, std::move(i1));
    d.inj2 = RnHom::make(b, d.sum, std::move(i2));
    d.proj1 = RnHom::make(d.sum, a, std::move(q1));
    d.proj2 = RnHom::make(d.sum, b, std::move(q2));
    return d;
}

TensorShape tensor_rn(const Shape& a, const Shape& b) {
    require(a.ring == b.ring, "tensor product over different rings");
    struct Slot {
        unsigned exp;
        std::size_t flat;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j)
            slots.push_back({std::min(a.exps[i], b.exps[j]), i * b.rank() + j});
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& x, const Slot& y) { return x.exp > y.exp; });

    TensorShape t;
    t.rank1 = a.rank();
    t.rank2 = b.rank();
    t.pos.resize(slots.size());
    std::vector<unsigned> exps;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        exps.push_back(slots[k].exp);
        t.pos[slots[k].flat] = k;
    }
    t.prod = Shape::make(a.ring, std::move(exps));
    return t;
}

std::vector<std::uint64_t> TensorShape::pure(const std::vector<std::uint64_t>& x,
                                             const std::vector<std::uint64_t>& y) const {
    require(x.size() == rank1 && y.size() == rank2, "pure tensor with wrong coordinate counts");
    std::vector<std::uint64_t> z(prod.rank(), 0);
    for (std::size_t i = 0; i < rank1; ++i)
        for (std::size_t j = 0; j < rank2; ++j) {
            std::size_t k = pos[i * rank2 + j];
            z[k] = prod.ring.mul(x[i], y[j]) % prod.coord_mod(k);
        }
    return z;
}

RnHom tensor_hom(const TensorShape& src, const TensorShape& dst, const RnHom& f, const RnHom& g) {
    require(f.source.rank() == src.rank1 && g.source.rank() == src.rank2 &&
                f.target.rank() == dst.rank1 && g.target.rank() == dst.rank2,
            "tensor of homs with mismatched factor shapes");
    const RingSpec& R = f.source.ring;
    RMatrix m(R, src.prod.rank(), dst.prod.rank());
    for (std::size_t i = 0; i < src.rank1; ++i)
        for (std::size_t j = 0; j < src.rank2; ++j) {
            std::size_t r = src.pos[i * src.rank2 + j];
            for (std::size_t k = 0; k < dst.rank1; ++k)
                for (std::size_t l = 0; l < dst.rank2; ++l)
                    m.at(r, dst.pos[k * dst.rank2 + l]) = R.mul(f.mat.at(i, k), g.mat.at(j, l));
        }
    return RnHom::make(src.prod, dst.prod, std::move(m));
}

RnHom dual_hom(const RnHom& f) {
    const Shape& s = f.source;
    const Shape& t = f.target;
    const RingSpec& R = s.ring;
    RMatrix m(R, t.rank(), s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < t.rank(); ++j) {
            unsigned li = s.exps[i], mj = t.exps[j];
            unsigned down = mj > li ? mj - li : 0;
            unsigned up = li > mj ? li - mj : 0;
            std::uint64_t c = f.mat.at(i, j);
            std::uint64_t base = c / R.pow_of_p(down);  // exact by the hom congruence
            m.at(j, i) = R.mul(base, R.pow_of_p(up)) % R.pow_of_p(li);
        }
    return RnHom::make(t, s, std::move(m));
}

SubmoduleData submodule(const Shape& M, const RMatrix& gens) {
    require(gens.cols == M.rank(), "submodule generators with wrong width");
    const RingSpec& R = M.ring;
    RMatrix G = reduce_columns(M, gens);
    G.ring = R;

    RMatrix diag(R, M.rank(), M.rank());
    for (std::size_t j = 0; j < M.rank(); ++j) diag.at(j, j) = R.pow_of_p(M.exps[j]) % R.modulus;
    RMatrix stacked = RMatrix::vstack(G, diag);

    // Relations among the generators: z with z * G = 0 inside M, i.e. the
    // G-part of the left kernel of [G; diag].
    RMatrix ker = left_kernel(stacked);
    RMatrix rel(R, ker.rows, G.rows);
    for (std::size_t i = 0; i < ker.rows; ++i)
        for (std::size_t j = 0; j < G.rows; ++j) rel.at(i, j) = ker.at(i, j);

    CokernelShape ck = cokernel_shape(rel);

    SubmoduleData out{Shape::make(R, ck.exponents), RnHom(), std::move(G), ck.to_normal,
                      RowSolver(stacked)};
    out.inclusion = RnHom::make(out.sub, M, ck.from_normal.mul(out.gens));
    return out;
}

std::optional<std::vector<std::uint64_t>> SubmoduleData::express(
    const std::vector<std::uint64_t>& y) const {
    auto z = membership.solve(y);
    if (!z) return std::nullopt;
    std::vector<std::uint64_t> head(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(gens.rows));
    std::vector<std::uint64_t> c = gens_to_normal.apply_row(head);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] %= sub.coord_mod(j);
    return c;
}

QuotientData quotient_by(const Shape& M, const RMatrix& gens) {
    require(gens.cols == M.rank(), "quotient generators with wrong width");
    const RingSpec& R = M.ring;
    RMatrix G = reduce_columns(M, gens);
    G.ring = R;
    RMatrix diag(R, M.rank(), M.rank());
    for (std::size_t j = 0; j < M.rank(); ++j) diag.at(j, j) = R.pow_of_p(M.exps[j]) % R.modulus;

    CokernelShape ck = cokernel_shape(RMatrix::vstack(G, diag));
    QuotientData out;
    out.quot = Shape::make(R, ck.exponents);
    out.projection = RnHom::make(M, out.quot, ck.to_normal);
    out.section = ck.from_normal;
    return out;
}

SubmoduleData kernel_hom(const RnHom& f) {
    const RingSpec& R = f.source.ring;
    RMatrix diag(R, f.target.rank(), f.target.rank());
    for (std::size_t j = 0; j < f.target.rank(); ++j)
        diag.at(j, j) = R.pow_of_p(f.target.exps[j]) % R.modulus;
    RMatrix ker = left_kernel(RMatrix::vstack(f.mat, diag));
    RMatrix xpart(R, ker.rows, f.source.rank());
    for (std::size_t i = 0; i < ker.rows; ++i)
        for (std::size_t j = 0; j < f.source.rank(); ++j) xpart.at(i, j) = ker.at(i, j);
    return submodule(f.source, xpart);
}

QuotientData cokernel_hom(const RnHom& f) { return quotient_by(f.target, f.mat); }

ImageData image_hom(const RnHom& f) {
    SubmoduleData sd = submodule(f.target, f.mat);
    ImageData out{sd.sub, sd.inclusion, RnHom::make(f.source, sd.sub, sd.gens_to_normal)};
    require(out.onto.then(out.inclusion) == f, "image factorization failed to reproduce the map");
    return out;
}

HomSystem::HomSystem(const Shape& src, const Shape& dst)
    : src_(src), dst_(dst), nsrc_(src.rank()), ndst_(dst.rank()) {
    require(src.ring == dst.ring, "hom system over different rings");
    shift_.resize(nsrc_ * ndst_);
    for (std::size_t i = 0; i < nsrc_; ++i)
        for (std::size_t j = 0; j < ndst_; ++j) shift_[pidx(i, j)] = shift_for(src_, dst_, i, j);
}

void HomSystem::new_equations(std::size_t k) {
    neq_ += k;
    for (std::size_t q = 0; q < k; ++q) eq_cols_.emplace_back(param_count(), 0);
    rhs_.resize(neq_, 0);
}

// L . P = R: for each (x, j), sum_i L_xi * c_ij = R_xj mod p^mu_j.
void HomSystem::add_left(const RnHom& L, const RnHom& R) {
    require(L.target == src_ && R.source == L.source && R.target == dst_,
            "left-composition constraint with mismatched shapes");
    const RingSpec& ring = src_.ring;
    for (std::size_t x = 0; x < L.source.rank(); ++x)
        for (std::size_t j = 0; j < ndst_; ++j) {
            std::size_t q = neq_;
            new_equations(1);
            std::uint64_t lift = ring.pow_of_p(ring.n - dst_.exps[j]);
            for (std::size_t i = 0; i < nsrc_; ++i)
                eq_cols_[q][pidx(i, j)] = ring.mul(
                    ring.mul(L.mat.at(x, i), ring.pow_of_p(shift_[pidx(i, j)])), lift);
            rhs_[q] = ring.mul(R.mat.at(x, j), lift);
        }
}

// P . G = R: for each (i, y), sum_j c_ij * G_jy = R_iy mod p^rho_y.
void HomSystem::add_right(const RnHom& G, const RnHom& R) {
    require(G.source == dst_ && R.source == src_ && R.target == G.target,
            "right-composition constraint with mismatched shapes");
    const RingSpec& ring = src_.ring;
    for (std::size_t i = 0; i < nsrc_; ++i)
        for (std::size_t y = 0; y < G.target.rank(); ++y) {
            std::size_t q = neq_;
            new_equations(1);
            std::uint64_t lift = ring.pow_of_p(ring.n - G.target.exps[y]);
            for (std::size_t j = 0; j < ndst_; ++j)
                eq_cols_[q][pidx(i, j)] = ring.mul(
                    ring.mul(G.mat.at(j, y), ring.pow_of_p(shift_[pidx(i, j)])), lift);
            rhs_[q] = ring.mul(R.mat.at(i, y), lift);
        }
}

// L . P - P . G = 0 with L an endo of src and G an endo of dst.
void HomSystem::add_commute(const RnHom& L, const RnHom& G) {
    require(L.source == src_ && L.target == src_ && G.source == dst_ && G.target == dst_,
            "commutation constraint needs endomorphisms of source and target");
    const RingSpec& ring = src_.ring;
    for (std::size_t x = 0; x < nsrc_; ++x)
        for (std::size_t j = 0; j < ndst_; ++j) {
            std::size_t q = neq_;
            new_equations(1);
            std::uint64_t lift = ring.pow_of_p(ring.n - dst_.exps[j]);
            for (std::size_t i = 0; i < nsrc_; ++i)
                eq_cols_[q][pidx(i, j)] = ring.add(
                    eq_cols_[q][pidx(i, j)],
                    ring.mul(ring.mul(L.mat.at(x, i), ring.pow_of_p(shift_[pidx(i, j)])), lift));
            for (std::size_t y = 0; y < ndst_; ++y)
                eq_cols_[q][pidx(x, y)] = ring.sub(
                    eq_cols_[q][pidx(x, y)],
                    ring.mul(ring.mul(G.mat.at(y, j), ring.pow_of_p(shift_[pidx(x, y)])), lift));
        }
}

// sum_k A_k . P . B_k = R with A_k endos of src and B_k homs dst -> dst.
void HomSystem::add_conjugation_sum(const std::vector<std::pair<RnHom, RnHom>>& pairs,
                                    const RnHom& R) {
    require(R.source == src_ && R.target == dst_, "conjugation-sum constraint target mismatch");
    const RingSpec& ring = src_.ring;
    for (const auto& [A, B] : pairs)
        require(A.source == src_ && A.target == src_ && B.source == dst_ && B.target == dst_,
                "conjugation-sum constraint with mismatched shapes");
    for (std::size_t x = 0; x < nsrc_; ++x)
        for (std::size_t j = 0; j < ndst_; ++j) {
            std::size_t q = neq_;
            new_equations(1);
            std::uint64_t lift = ring.pow_of_p(ring.n - dst_.exps[j]);
            for (const auto& [A, B] : pairs)
                for (std::size_t i = 0; i < nsrc_; ++i)
                    for (std::size_t y = 0; y < ndst_; ++y) {
                        std::uint64_t c = ring.mul(A.mat.at(x, i), B.mat.at(y, j));
                        c = ring.mul(ring.mul(c, ring.pow_of_p(shift_[pidx(i, y)])), lift);
                        eq_cols_[q][pidx(i, y)] = ring.add(eq_cols_[q][pidx(i, y)], c);
                    }
            rhs_[q] = ring.mul(R.mat.at(x, j), lift);
        }
}

RnHom HomSystem::from_params(const std::vector<std::uint64_t>& u) const {
    require(u.size() == param_count(), "parameter vector with wrong length");
    RMatrix m(src_.ring, nsrc_, ndst_);
    for (std::size_t i = 0; i < nsrc_; ++i)
        for (std::size_t j = 0; j < ndst_; ++j)
            m.at(i, j) = src_.ring.mul(u[pidx(i, j)], src_.ring.pow_of_p(shift_[pidx(i, j)]));
    return RnHom::make(src_, dst_, std::move(m));
}

namespace {

// Parameters-as-rows matrix: column q holds the coefficients of equation q.
RMatrix system_matrix(const RingSpec& ring, std::size_t nparams,
                      const std::vector<std::vector<std::uint64_t>>& eq_cols) {
    RMatrix m(ring, nparams, eq_cols.size());
    for (std::size_t q = 0; q < eq_cols.size(); ++q)
        for (std::size_t pnum = 0; pnum < nparams; ++pnum) m.at(pnum, q) = eq_cols[q][pnum];
    return m;
}

}  // namespace

HomSystem::AffineOutcome HomSystem::solve_affine() const {
    RowSolver solver(system_matrix(src_.ring, param_count(), eq_cols_));
    auto out = solver.solve_detailed(rhs_);
    AffineOutcome res;
    if (out.x) {
        res.solution = from_params(*out.x);
    } else {
        res.failed_equation = out.failed_col;
        res.residual = std::move(out.residual);
    }
    return res;
}

std::vector<RnHom> HomSystem::kernel_basis() const {
    RMatrix ker = left_kernel(system_matrix(src_.ring, param_count(), eq_cols_));
    std::vector<RnHom> basis;
    basis.reserve(ker.rows);
    for (std::size_t i = 0; i < ker.rows; ++i) {
        RnHom h = from_params(ker.row(i));
        if (!h.is_zero()) basis.push_back(std::move(h));
    }
    return basis;
}

}  // namespace strel
