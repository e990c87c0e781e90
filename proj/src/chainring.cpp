#include "strel/chainring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace strel {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

RingSpec RingSpec::make(std::uint64_t p, unsigned n) {
    require(is_prime(p), "ring: p must be prime, got " + std::to_string(p));
    require(n >= 1, "ring: n must be positive");
    std::uint64_t m = 1;
    for (unsigned i = 0; i < n; ++i) {
        m *= p;
        require(m < (std::uint64_t{1} << 31), "ring: p^n exceeds the desk-scale bound 2^31");
    }
    RingSpec r;
    r.p = p;
    r.n = n;
    r.modulus = m;
    r.pow2 = (p == 2);
    r.mask = m - 1;
    r.recip = r.pow2 ? 0 : std::numeric_limits<std::uint64_t>::max() / m;
    return r;
}

std::uint64_t RingSpec::pow_of_p(unsigned v) const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < v; ++i) r *= p;
    return r;
}

unsigned RingSpec::valuation(std::uint64_t x) const {
    if (x == 0) return n;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

std::uint64_t RingSpec::unit_inverse(std::uint64_t x) const {
    x %= modulus;
    if (x % p == 0) throw NonUnitError("unit_inverse: " + std::to_string(x) + " is not a unit mod " + std::to_string(modulus));
    // extended Euclid on (modulus, x)
    std::int64_t r0 = static_cast<std::int64_t>(modulus), r1 = static_cast<std::int64_t>(x);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    std::int64_t inv = t0 % static_cast<std::int64_t>(modulus);
    if (inv < 0) inv += static_cast<std::int64_t>(modulus);
    return static_cast<std::uint64_t>(inv);
}

RMatrix RMatrix::identity(RingSpec r, std::size_t k) {
    RMatrix m(r, k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

RMatrix RMatrix::from_rows(RingSpec r, std::size_t cc,
                           const std::vector<std::vector<std::uint64_t>>& rws) {
    RMatrix m(r, rws.size(), cc);
    for (std::size_t i = 0; i < rws.size(); ++i) {
        require(rws[i].size() == cc, "matrix: ragged row");
        for (std::size_t j = 0; j < cc; ++j) m.at(i, j) = rws[i][j] % r.modulus;
    }
    return m;
}

bool RMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
}

std::vector<std::uint64_t> RMatrix::row(std::size_t i) const {
    return std::vector<std::uint64_t>(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
                                      a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

RMatrix RMatrix::mul(const RMatrix& o) const {
    require(ring == o.ring && cols == o.rows, "matrix multiply: shape/ring mismatch");
    RMatrix out(ring, rows, o.cols);
    // lazy accumulation: products are < 2^62, spill before the sum can overflow
    constexpr std::uint64_t kSpill = std::uint64_t{1} << 63;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
            std::uint64_t aik = at(i, k);
            if (aik == 0) continue;
            const std::uint64_t* src = o.a.data() + k * o.cols;
            std::uint64_t* dst = out.a.data() + i * o.cols;
            for (std::size_t j = 0; j < o.cols; ++j) {
                std::uint64_t t = dst[j] + aik * src[j];
                if (t >= kSpill) t = ring.reduce_wide(t);
                dst[j] = t;
            }
        }
        std::uint64_t* dst = out.a.data() + i * o.cols;
        for (std::size_t j = 0; j < o.cols; ++j) dst[j] = ring.reduce_wide(dst[j]);
    }
    return out;
}

RMatrix RMatrix::add(const RMatrix& o) const {
    require(ring == o.ring && rows == o.rows && cols == o.cols, "matrix add: shape mismatch");
    RMatrix out(ring, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) out.a[i] = ring.add(a[i], o.a[i]);
    return out;
}

RMatrix RMatrix::sub(const RMatrix& o) const {
    require(ring == o.ring && rows == o.rows && cols == o.cols, "matrix sub: shape mismatch");
    RMatrix out(ring, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) out.a[i] = ring.sub(a[i], o.a[i]);
    return out;
}

RMatrix RMatrix::scaled(std::uint64_t c) const {
    RMatrix out(ring, rows, cols);
    c %= ring.modulus;
    for (std::size_t i = 0; i < a.size(); ++i) out.a[i] = ring.mul(a[i], c);
    return out;
}

RMatrix RMatrix::transposed() const {
    RMatrix out(ring, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
    return out;
}

std::vector<std::uint64_t> RMatrix::apply_row(const std::vector<std::uint64_t>& x) const {
    require(x.size() == rows, "apply_row: length mismatch");
    std::vector<std::uint64_t> y(cols, 0);
    constexpr std::uint64_t kSpill = std::uint64_t{1} << 63;
    for (std::size_t i = 0; i < rows; ++i) {
        std::uint64_t xi = x[i] % ring.modulus;
        if (xi == 0) continue;
        const std::uint64_t* src = a.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t t = y[j] + xi * src[j];
            if (t >= kSpill) t = ring.reduce_wide(t);
            y[j] = t;
        }
    }
    for (auto& v : y) v = ring.reduce_wide(v);
    return y;
}

RMatrix RMatrix::hstack(const RMatrix& A, const RMatrix& B) {
    require(A.ring == B.ring && A.rows == B.rows, "hstack: shape mismatch");
    RMatrix out(A.ring, A.rows, A.cols + B.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) out.at(i, j) = A.at(i, j);
        for (std::size_t j = 0; j < B.cols; ++j) out.at(i, A.cols + j) = B.at(i, j);
    }
    return out;
}

RMatrix RMatrix::vstack(const RMatrix& A, const RMatrix& B) {
    require(A.ring == B.ring && A.cols == B.cols, "vstack: shape mismatch");
    RMatrix out(A.ring, A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), out.a.begin());
    std::copy(B.a.begin(), B.a.end(), out.a.begin() + static_cast<std::ptrdiff_t>(A.a.size()));
    return out;
}

namespace {

using Row = std::vector<std::uint64_t>;

bool row_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
}

void row_submul(const RingSpec& R, Row& dst, const Row& src, std::uint64_t q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < dst.size(); ++j) {
        if (src[j] == 0) continue;
        std::uint64_t t = R.reduce_wide(q * src[j]);
        dst[j] = R.sub(dst[j], t);
    }
}

void row_scale(const RingSpec& R, Row& dst, std::uint64_t c) {
    for (auto& x : dst) x = R.reduce_wide(x * c);
}

struct Pivot {
    std::size_t row;
    std::size_t col;
    unsigned val;
};

// In-place echelon form: strictly increasing pivot columns, each pivot entry
// normalized to p^v, entries below pivots cleared, zero rows dropped.
std::vector<Pivot> echelonize(const RingSpec& R, std::vector<Row>& rows, std::size_t cols) {
    std::vector<Pivot> piv;
    std::size_t top = 0;
    for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
        std::size_t best = npos;
        unsigned bestv = R.n + 1;
        for (std::size_t r = top; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            unsigned v = R.valuation(rows[r][c]);
            if (v < bestv) {
                bestv = v;
                best = r;
            }
        }
        if (best == npos) continue;
        std::swap(rows[top], rows[best]);
        std::uint64_t pv = R.pow_of_p(bestv);
        std::uint64_t unit = rows[top][c] / pv;  // exact: canonical rep has valuation bestv
        if (unit != 1) row_scale(R, rows[top], R.unit_inverse(unit));
        for (std::size_t r = top + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            row_submul(R, rows[r], rows[top], rows[r][c] / pv);
        }
        piv.push_back({top, c, bestv});
        ++top;
    }
    rows.resize(top);
    return piv;
}

// Greedy reduction of s against echelon rows.  Returns true when s reduces to
// zero; otherwise leaves in s the residual whose leading column has no usable
// pivot.
bool reduce_against(const RingSpec& R, const std::vector<Row>& rows,
                    const std::vector<Pivot>& piv, Row& s, std::size_t* fail_col = nullptr) {
    std::vector<std::size_t> pivot_at(s.size(), npos);
    std::vector<unsigned> val_at(s.size(), 0);
    for (const auto& pv : piv) {
        pivot_at[pv.col] = pv.row;
        val_at[pv.col] = pv.val;
    }
    for (std::size_t c = 0; c < s.size(); ++c) {
        if (s[c] == 0) continue;
        std::uint64_t pw = pivot_at[c] == npos ? 0 : R.pow_of_p(val_at[c]);
        if (pivot_at[c] == npos || s[c] % pw != 0) {
            if (fail_col) *fail_col = c;
            return false;
        }
        row_submul(R, s, rows[pivot_at[c]], s[c] / pw);
    }
    return true;
}

std::vector<Row> matrix_rows(const RMatrix& A) {
    std::vector<Row> rows;
    rows.reserve(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) {
        Row r = A.row(i);
        if (!row_zero(r)) rows.push_back(std::move(r));
    }
    return rows;
}

// Echelonize and then saturate: for every pivot p^v with v > 0 the shifted row
// p^(n-v) * row must lie in the span of the later rows, otherwise its residual
// is appended and the pass repeats.  Terminates because each appended residual
// strictly improves the pivot profile.
std::vector<Pivot> howell_rows(const RingSpec& R, std::vector<Row>& rows, std::size_t cols) {
    std::vector<Pivot> piv;
    for (;;) {
        piv = echelonize(R, rows, cols);
        std::vector<Row> extra;
        for (const auto& pv : piv) {
            if (pv.val == 0) continue;
            Row s = rows[pv.row];
            row_scale(R, s, R.pow_of_p(R.n - pv.val));
            if (row_zero(s)) continue;
            if (!reduce_against(R, rows, piv, s)) extra.push_back(std::move(s));
        }
        if (extra.empty()) break;
        for (auto& e : extra) rows.push_back(std::move(e));
    }
    // reduce entries above each pivot below p^v
    for (const auto& pv : piv) {
        std::uint64_t pw = R.pow_of_p(pv.val);
        for (std::size_t r = 0; r < pv.row; ++r) {
            std::uint64_t q = rows[r][pv.col] / pw;
            if (q) row_submul(R, rows[r], rows[pv.row], q);
        }
    }
    return piv;
}

}  // namespace

RMatrix howell_form(const RMatrix& A) {
    std::vector<Row> rows = matrix_rows(A);
    howell_rows(A.ring, rows, A.cols);
    return RMatrix::from_rows(A.ring, A.cols, rows);
}

RMatrix left_kernel(const RMatrix& A) {
    RMatrix aug = RMatrix::hstack(A, RMatrix::identity(A.ring, A.rows));
    RMatrix H = howell_form(aug);
    std::vector<Row> tail;
    for (std::size_t i = 0; i < H.rows; ++i) {
        bool lhs_zero = true;
        for (std::size_t j = 0; j < A.cols; ++j)
            if (H.at(i, j) != 0) { lhs_zero = false; break; }
        if (!lhs_zero) continue;
        Row t(H.a.begin() + static_cast<std::ptrdiff_t>(i * H.cols + A.cols),
              H.a.begin() + static_cast<std::ptrdiff_t>((i + 1) * H.cols));
        tail.push_back(std::move(t));
    }
    return howell_form(RMatrix::from_rows(A.ring, A.rows, tail));
}

RowSolver::RowSolver(const RMatrix& A) : acols_(A.cols), arows_(A.rows) {
    H_ = howell_form(RMatrix::hstack(A, RMatrix::identity(A.ring, A.rows)));
    pivot_row_.assign(acols_, npos);
    pivot_val_.assign(acols_, 0);
    for (std::size_t i = 0; i < H_.rows; ++i) {
        std::size_t c = 0;
        while (c < H_.cols && H_.at(i, c) == 0) ++c;
        if (c < acols_) {
            pivot_row_[c] = i;
            pivot_val_[c] = H_.ring.valuation(H_.at(i, c));
        }
    }
}

RowSolver::Outcome RowSolver::solve_detailed(const std::vector<std::uint64_t>& b) const {
    require(b.size() == acols_, "solve: rhs length mismatch");
    const RingSpec& R = H_.ring;
    Row r(b);
    for (auto& x : r) x %= R.modulus;
    Row x(arows_, 0);
    for (std::size_t c = 0; c < acols_; ++c) {
        if (r[c] == 0) continue;
        if (pivot_row_[c] == npos) return Outcome{std::nullopt, c, r};
        std::uint64_t pw = R.pow_of_p(pivot_val_[c]);
        if (r[c] % pw != 0) return Outcome{std::nullopt, c, r};
        std::uint64_t q = r[c] / pw;
        std::size_t hrow = pivot_row_[c];
        for (std::size_t j = c; j < acols_; ++j) {
            std::uint64_t t = R.reduce_wide(q * H_.at(hrow, j));
            r[j] = R.sub(r[j], t);
        }
        for (std::size_t j = 0; j < arows_; ++j) {
            std::uint64_t t = R.reduce_wide(q * H_.at(hrow, acols_ + j));
            x[j] = R.add(x[j], t);
        }
    }
    return Outcome{std::move(x), 0, {}};
}

std::optional<std::vector<std::uint64_t>> RowSolver::solve(const std::vector<std::uint64_t>& b) const {
    return solve_detailed(b).x;
}

std::vector<std::uint64_t> RowSolver::reduce(const std::vector<std::uint64_t>& b) const {
    require(b.size() == acols_, "reduce: row length mismatch");
    const RingSpec& R = H_.ring;
    Row r(b);
    for (auto& x : r) x %= R.modulus;
    for (std::size_t c = 0; c < acols_; ++c) {
        if (r[c] == 0 || pivot_row_[c] == npos) continue;
        std::uint64_t pw = R.pow_of_p(pivot_val_[c]);
        std::uint64_t q = r[c] / pw;
        if (q == 0) continue;
        std::size_t hrow = pivot_row_[c];
        for (std::size_t j = c; j < acols_; ++j) {
            std::uint64_t t = R.reduce_wide(q * H_.at(hrow, j));
            r[j] = R.sub(r[j], t);
        }
    }
    return r;
}

namespace {

struct OpTracker {
    RMatrix U, V, Vinv;
    RMatrix A;

    explicit OpTracker(const RMatrix& M)
        : U(RMatrix::identity(M.ring, M.rows)),
          V(RMatrix::identity(M.ring, M.cols)),
          Vinv(RMatrix::identity(M.ring, M.cols)),
          A(M) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
        for (std::size_t c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
        for (std::size_t r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
        for (std::size_t c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    void scale_row(std::size_t i, std::uint64_t u) {
        const RingSpec& R = A.ring;
        for (std::size_t c = 0; c < A.cols; ++c) A.at(i, c) = R.mul(A.at(i, c), u);
        for (std::size_t c = 0; c < U.cols; ++c) U.at(i, c) = R.mul(U.at(i, c), u);
    }
    // row_r -= q * row_k
    void row_submul(std::size_t r, std::size_t k, std::uint64_t q) {
        if (q == 0) return;
        const RingSpec& R = A.ring;
        for (std::size_t c = 0; c < A.cols; ++c)
            A.at(r, c) = R.sub(A.at(r, c), R.reduce_wide(q * A.at(k, c)));
        for (std::size_t c = 0; c < U.cols; ++c)
            U.at(r, c) = R.sub(U.at(r, c), R.reduce_wide(q * U.at(k, c)));
    }
    // col_c -= q * col_k;  Vinv row_k += q * row_c
    void col_submul(std::size_t c, std::size_t k, std::uint64_t q) {
        if (q == 0) return;
        const RingSpec& R = A.ring;
        for (std::size_t r = 0; r < A.rows; ++r)
            A.at(r, c) = R.sub(A.at(r, c), R.reduce_wide(q * A.at(r, k)));
        for (std::size_t r = 0; r < V.rows; ++r)
            V.at(r, c) = R.sub(V.at(r, c), R.reduce_wide(q * V.at(r, k)));
        for (std::size_t j = 0; j < Vinv.cols; ++j)
            Vinv.at(k, j) = R.add(Vinv.at(k, j), R.reduce_wide(q * Vinv.at(c, j)));
    }
};

}  // namespace

Diagonalization diagonalize(const RMatrix& M) {
    const RingSpec& R = M.ring;
    OpTracker t(M);
    std::vector<unsigned> vals;
    std::size_t k = 0;
    while (k < M.rows && k < M.cols) {
        std::size_t bi = npos, bj = npos;
        unsigned bestv = R.n + 1;
        for (std::size_t i = k; i < M.rows; ++i)
            for (std::size_t j = k; j < M.cols; ++j) {
                if (t.A.at(i, j) == 0) continue;
                unsigned v = R.valuation(t.A.at(i, j));
                if (v < bestv) {
                    bestv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi == npos) break;
        t.swap_rows(k, bi);
        t.swap_cols(k, bj);
        std::uint64_t pw = R.pow_of_p(bestv);
        std::uint64_t unit = t.A.at(k, k) / pw;
        if (unit != 1) t.scale_row(k, R.unit_inverse(unit));
        for (std::size_t r = k + 1; r < M.rows; ++r) t.row_submul(r, k, t.A.at(r, k) / pw);
        for (std::size_t c = k + 1; c < M.cols; ++c) t.col_submul(c, k, t.A.at(k, c) / pw);
        vals.push_back(bestv);
        ++k;
    }
    Diagonalization d{std::move(t.U), std::move(t.V), std::move(t.Vinv), std::move(t.A), std::move(vals)};
    // paranoia: the accumulated transforms must reproduce the diagonal exactly
    require(d.U.mul(M).mul(d.V) == d.D, "diagonalize: transform bookkeeping failed");
    require(d.V.mul(d.Vinv) == RMatrix::identity(M.ring, M.cols), "diagonalize: V inverse bookkeeping failed");
    return d;
}

CokernelShape cokernel_shape(const RMatrix& relations) {
    const RingSpec& R = relations.ring;
    Diagonalization d = diagonalize(relations);
    // column j of the diagonal leaves a cyclic summand Z/p^e with e = pivot
    // valuation (e = n for columns without a pivot); unit pivots leave nothing
    std::vector<unsigned> exps(relations.cols, R.n);
    for (std::size_t j = 0; j < d.pivot_vals.size(); ++j) exps[j] = d.pivot_vals[j];
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < relations.cols; ++j)
        if (exps[j] >= 1) keep.push_back(j);
    std::stable_sort(keep.begin(), keep.end(),
                     [&](std::size_t a, std::size_t b) { return exps[a] > exps[b]; });

    CokernelShape out;
    out.U = d.U;
    out.V = d.V;
    out.to_normal = RMatrix(R, relations.cols, keep.size());
    out.from_normal = RMatrix(R, keep.size(), relations.cols);
    for (std::size_t jj = 0; jj < keep.size(); ++jj) {
        std::size_t j = keep[jj];
        out.exponents.push_back(exps[j]);
        std::uint64_t m = R.pow_of_p(exps[j]);
        for (std::size_t i = 0; i < relations.cols; ++i)
            out.to_normal.at(i, jj) = d.V.at(i, j) % m;
        for (std::size_t c = 0; c < relations.cols; ++c)
            out.from_normal.at(jj, c) = d.Vinv.at(j, c);
    }
    return out;
}

}  // namespace strel
