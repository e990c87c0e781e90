#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed external input (bad JSON, bad flags).  CLI exit code 2.
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed input that violates a mathematical precondition.  CLI exit code 3.
class ConstraintError : public Error {
public:
    using Error::Error;
};

class NonUnitError : public ConstraintError {
public:
    using ConstraintError::ConstraintError;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ConstraintError(msg);
}

// Arithmetic in Z/p^n for a prime p.  Elements are canonical representatives
// in [0, p^n).  The modulus is kept below 2^31 so that any product of two
// elements fits in a 64-bit word; reduction uses a precomputed reciprocal.
struct RingSpec {
    std::uint64_t p = 2;
    unsigned n = 1;
    std::uint64_t modulus = 2;
    std::uint64_t recip = 0;   // floor(2^64 / modulus), unused when modulus is a power of two
    std::uint64_t mask = 1;    // modulus - 1 when p == 2
    bool pow2 = true;

    static RingSpec make(std::uint64_t p, unsigned n);

    RingSpec at_level(unsigned m) const { return make(p, m); }

    bool operator==(const RingSpec& o) const { return p == o.p && n == o.n; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

    std::uint64_t reduce_wide(std::uint64_t t) const {
        if (pow2) return t & mask;
        std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t) * recip) >> 64);
        std::uint64_t r = t - q * modulus;
        while (r >= modulus) r -= modulus;
        return r;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= modulus ? s - modulus : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + modulus - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : modulus - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce_wide(a * b); }

    // Integer power p^v for v <= n, not reduced: pow_of_p(n) == modulus.
    // Reduce mod `modulus` before storing the result as a ring element.
    std::uint64_t pow_of_p(unsigned v) const;

    // Largest v <= n with p^v dividing x; valuation(0) = n.
    unsigned valuation(std::uint64_t x) const;

    // Inverse of a unit; throws NonUnitError when p divides x.
    std::uint64_t unit_inverse(std::uint64_t x) const;
};

struct RMatrix {
    RingSpec ring;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint64_t> a;

    RMatrix() = default;
    RMatrix(RingSpec r, std::size_t rr, std::size_t cc)
        : ring(r), rows(rr), cols(cc), a(rr * cc, 0) {}

    static RMatrix identity(RingSpec r, std::size_t k);
    static RMatrix from_rows(RingSpec r, std::size_t cc,
                             const std::vector<std::vector<std::uint64_t>>& rws);

    std::uint64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const RMatrix& o) const {
        return ring == o.ring && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const RMatrix& o) const { return !(*this == o); }

    bool is_zero() const;

    std::vector<std::uint64_t> row(std::size_t i) const;

    RMatrix mul(const RMatrix& o) const;
    RMatrix add(const RMatrix& o) const;
    RMatrix sub(const RMatrix& o) const;
    RMatrix scaled(std::uint64_t c) const;
    RMatrix negated() const { return scaled(ring.neg(1)); }
    RMatrix transposed() const;

    // x (length rows) acting on the left: returns x * A.
    std::vector<std::uint64_t> apply_row(const std::vector<std::uint64_t>& x) const;

    static RMatrix hstack(const RMatrix& A, const RMatrix& B);
    static RMatrix vstack(const RMatrix& A, const RMatrix& B);
};

// Canonical Howell normal form of the row span of A.
//
//  - each pivot entry is exactly p^v for some v,
//  - pivot columns strictly increase and zero rows are dropped,
//  - entries above a pivot p^v are reduced mod p^v,
//  - the span property: any member of the row span whose leading nonzero
//    coordinate sits at column c is an integral combination of the rows with
//    pivot column >= c.
//
// Two matrices have equal row spans iff their Howell forms are identical.
RMatrix howell_form(const RMatrix& A);

// Generators (in Howell form) of { x : x * A = 0 }.
RMatrix left_kernel(const RMatrix& A);

// Reusable solver for x * A = b against a fixed A.  Keeps the Howell form of
// [A | I] so repeated right-hand sides cost one greedy reduction each.
class RowSolver {
public:
    explicit RowSolver(const RMatrix& A);

    struct Outcome {
        std::optional<std::vector<std::uint64_t>> x;
        // Populated when unsolvable: the column where greedy reduction against
        // the Howell form got stuck, and the residual row at that point.
        std::size_t failed_col = 0;
        std::vector<std::uint64_t> residual;
    };

    Outcome solve_detailed(const std::vector<std::uint64_t>& b) const;
    std::optional<std::vector<std::uint64_t>> solve(const std::vector<std::uint64_t>& b) const;

    // Canonical coset representative of b modulo the row span: sweep the
    // pivot columns left to right, reducing each entry below its pivot's
    // p-power.  reduce(b) is zero iff b lies in the span, and
    // reduce(b + s) == reduce(b) for every span element s.
    std::vector<std::uint64_t> reduce(const std::vector<std::uint64_t>& b) const;

    const RMatrix& howell() const { return H_; }
    std::size_t lhs_cols() const { return acols_; }

private:
    RMatrix H_;          // Howell form of [A | I]
    std::size_t acols_ = 0;
    std::size_t arows_ = 0;
    std::vector<std::size_t> pivot_row_;   // per column of A, row index or npos
    std::vector<unsigned> pivot_val_;
};

struct Diagonalization {
    RMatrix U, V, Vinv;             // U*A*V = D with U, V invertible
    RMatrix D;
    std::vector<unsigned> pivot_vals;  // valuations of the diagonal pivots, weakly increasing
};

Diagonalization diagonalize(const RMatrix& A);

// Normal form of R^cols / rowspan(relations) as a direct sum of cyclic modules.
struct CokernelShape {
    std::vector<unsigned> exponents;  // weakly decreasing, entries in [1, n]
    RMatrix to_normal;    // cols x rank: coordinates of the projection R^cols -> quotient
    RMatrix from_normal;  // rank x cols: lifts of the quotient basis
    RMatrix U, V;         // change of basis with U*relations*V diagonal
};

CokernelShape cokernel_shape(const RMatrix& relations);

}  // namespace strel
