#pragma once

// Brute-force reference implementations used to validate the exact linear
// algebra and hom-space code against full enumeration on small inputs.

#include <cstdint>
#include <set>
#include <vector>

#include "strel/chainring.hpp"
#include "strel/grouprep.hpp"

namespace oracle {

using Vec = std::vector<std::uint64_t>;

// Every element of the row span of A, by closure under row additions.
inline std::set<Vec> span_of(const strel::RMatrix& A) {
    std::set<Vec> s;
    s.insert(Vec(A.cols, 0));
    for (;;) {
        std::set<Vec> next = s;
        for (std::size_t i = 0; i < A.rows; ++i) {
            Vec r = A.row(i);
            for (const Vec& v : s) {
                Vec w(A.cols);
                for (std::size_t j = 0; j < A.cols; ++j) w[j] = A.ring.add(v[j], r[j]);
                next.insert(w);
            }
        }
        if (next.size() == s.size()) return s;
        s.swap(next);
    }
}

// Visit every rows x cols matrix over the ring.
template <typename F>
void for_all_matrices(const strel::RingSpec& R, std::size_t rows, std::size_t cols, F&& f) {
    Vec e(rows * cols, 0);
    for (;;) {
        strel::RMatrix A(R, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) A.at(i, j) = e[i * cols + j];
        f(A);
        std::size_t i = 0;
        while (i < e.size() && ++e[i] == R.modulus) {
            e[i] = 0;
            ++i;
        }
        if (i == e.size()) return;
    }
}

// Visit every vector of the given length over the ring.
template <typename F>
void for_all_vectors(const strel::RingSpec& R, std::size_t len, F&& f) {
    Vec e(len, 0);
    for (;;) {
        f(e);
        std::size_t i = 0;
        while (i < len && ++e[i] == R.modulus) {
            e[i] = 0;
            ++i;
        }
        if (i == len) return;
    }
}

// Number of elements x of a direct sum of Z/p^{exps[i]} with p^t * x == 0.
inline std::uint64_t count_killed_by(const strel::RingSpec& R, const std::vector<unsigned>& exps,
                                     unsigned t) {
    std::uint64_t c = 1;
    for (unsigned e : exps) c *= R.pow_of_p(e < t ? e : t);
    return c;
}

// All equivariant lawful homs M -> N found by enumerating every candidate
// matrix.  Feasible only when |N| ^ rank(M) is small; callers guard sizes.
inline std::set<std::vector<std::uint64_t>> all_homs_brute(const strel::GModule& M,
                                                           const strel::GModule& N) {
    using namespace strel;
    std::set<std::vector<std::uint64_t>> out;
    const RingSpec& R = M.shape.ring;
    std::size_t rm = M.rank(), rn = N.rank();
    Vec e(rm * rn, 0);
    for (;;) {
        RMatrix C(R, rm, rn);
        for (std::size_t i = 0; i < rm; ++i)
            for (std::size_t j = 0; j < rn; ++j)
                C.at(i, j) = e[i * rn + j] % R.pow_of_p(N.shape.exps[j]);
        bool lawful = true;
        for (std::size_t i = 0; i < rm && lawful; ++i)
            for (std::size_t j = 0; j < rn && lawful; ++j) {
                unsigned lo = M.shape.exps[i], hi = N.shape.exps[j];
                if (hi > lo && C.at(i, j) % R.pow_of_p(hi - lo) != 0) lawful = false;
            }
        if (lawful) {
            RnHom h = RnHom::make(M.shape, N.shape, C);
            bool equiv = true;
            for (std::size_t g = 0; g < M.group.order && equiv; ++g)
                if (!(M.act(g).then(h) == h.then(N.act(g)))) equiv = false;
            if (equiv) out.insert(h.mat.a);
        }
        std::size_t i = 0;
        bool done = false;
        while (true) {
            if (i == e.size()) {
                done = true;
                break;
            }
            std::size_t j = i % rn;
            if (++e[i] == R.pow_of_p(N.shape.exps[j])) {
                e[i] = 0;
                ++i;
            } else {
                break;
            }
        }
        if (done) return out;
    }
}

// Z-span of a hom basis as a set of matrix payloads.
inline std::set<std::vector<std::uint64_t>> span_of_homs(const std::vector<strel::GHom>& basis,
                                                         const strel::GModule& M,
                                                         const strel::GModule& N) {
    using namespace strel;
    std::set<std::vector<std::uint64_t>> s;
    s.insert(RnHom::zero(M.shape, N.shape).mat.a);
    for (;;) {
        std::set<std::vector<std::uint64_t>> next = s;
        for (const GHom& b : basis) {
            for (const std::vector<std::uint64_t>& v : s) {
                RMatrix C = b.underlying.mat;
                const RingSpec& R = M.shape.ring;
                std::vector<std::uint64_t> w(v.size());
                for (std::size_t t = 0; t < v.size(); ++t) {
                    std::size_t j = t % (N.rank() ? N.rank() : 1);
                    w[t] = R.add(v[t], C.a[t]) % R.pow_of_p(N.shape.exps[j]);
                }
                next.insert(w);
            }
        }
        if (next.size() == s.size()) return s;
        s.swap(next);
    }
}

}  // namespace oracle
