#pragma once

#include "strel/chainring.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace strel {

// Finite module over Z/p^m in normal form: a direct sum of cyclic pieces
// Z/p^e with weakly decreasing exponents e in [1, m].  The zero module is the
// empty list.
struct Shape {
    RingSpec ring;
    std::vector<unsigned> exps;

    static Shape make(RingSpec ring, std::vector<unsigned> exps);
    static Shape zero(RingSpec ring) { return make(ring, {}); }

    std::size_t rank() const { return exps.size(); }
    unsigned length() const;
    bool is_zero() const { return exps.empty(); }
    std::uint64_t coord_mod(std::size_t j) const { return ring.pow_of_p(exps[j]); }

    bool operator==(const Shape& o) const { return ring == o.ring && exps == o.exps; }
    bool operator!=(const Shape& o) const { return !(*this == o); }

    std::string str() const;
};

// Module homomorphism between shapes, acting on row vectors from the right:
// y_j = sum_i x_i * c_ij.  Entry c_ij is stored reduced mod p^mu_j and must be
// divisible by p^max(mu_j - lambda_i, 0), which is exactly well-definedness on
// the cyclic generators.
struct RnHom {
    Shape source, target;
    RMatrix mat;

    static RnHom make(const Shape& s, const Shape& t, RMatrix m);
    static RnHom identity(const Shape& s);
    static RnHom zero(const Shape& s, const Shape& t);

    RnHom then(const RnHom& g) const;  // diagrammatic: apply *this, then g
    RnHom add(const RnHom& g) const;
    RnHom sub(const RnHom& g) const;
    RnHom scaled(std::uint64_t c) const;
    RnHom negated() const;

    bool is_zero() const { return mat.is_zero(); }
    std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const;

    bool operator==(const RnHom& o) const {
        return source == o.source && target == o.target && mat == o.mat;
    }
};

// Biproduct with the two exponent lists merged and re-sorted.
struct DirectSum {
    Shape sum;
    RnHom inj1, inj2, proj1, proj2;
    std::vector<std::size_t> pos1, pos2;  // coordinate of each summand slot in `sum`
};
DirectSum direct_sum(const Shape& a, const Shape& b);

// Tensor product: coordinate pairs (i, j) in lexicographic order (i outer),
// pair exponent min(lambda_i, mu_j), then stably sorted into a valid shape.
// pos[i * rank2 + j] is the coordinate of e_i (x) e_j in `prod`.
struct TensorShape {
    Shape prod;
    std::size_t rank1 = 0, rank2 = 0;
    std::vector<std::size_t> pos;

    std::vector<std::uint64_t> pure(const std::vector<std::uint64_t>& x,
                                    const std::vector<std::uint64_t>& y) const;
};
TensorShape tensor_rn(const Shape& a, const Shape& b);
RnHom tensor_hom(const TensorShape& src, const TensorShape& dst, const RnHom& f, const RnHom& g);

// Duality M* = Hom(M, Z/p^n), using the generator p^(n-e) of
// Hom(Z/p^e, Z/p^n) as the basis of each dual coordinate.  The dual shape
// equals the original shape and dual_hom is a contravariant involution.
RnHom dual_hom(const RnHom& f);

// Submodule of M generated by the rows of `gens`, in normal form.
struct SubmoduleData {
    Shape sub;
    RnHom inclusion;       // sub -> M
    RMatrix gens;          // the generating rows inside M
    RMatrix gens_to_normal;  // coefficient rows -> sub coordinates
    RowSolver membership;  // solves z * [gens; diag] = y

    // Coordinates in `sub` of an element y of M known to lie in the submodule.
    std::optional<std::vector<std::uint64_t>> express(const std::vector<std::uint64_t>& y) const;
};
SubmoduleData submodule(const Shape& M, const RMatrix& gens);

// Quotient of M by the submodule generated by the rows of `gens`.
struct QuotientData {
    Shape quot;
    RnHom projection;  // M -> quot
    RMatrix section;   // quot coordinates -> lifts in M (plain transport, not a hom)
};
QuotientData quotient_by(const Shape& M, const RMatrix& gens);

SubmoduleData kernel_hom(const RnHom& f);
QuotientData cokernel_hom(const RnHom& f);

struct ImageData {
    Shape image;
    RnHom inclusion;  // image -> target
    RnHom onto;       // source -> image
};
ImageData image_hom(const RnHom& f);

// Linear/affine systems over the parameter space of homs M -> N.  A hom is
// determined by free parameters u_ij mod p^min(lambda_i, mu_j) via
// c_ij = p^max(mu_j - lambda_i, 0) * u_ij; every R-linear condition becomes a
// linear equation in u after lifting it from mod p^e to mod p^L.
class HomSystem {
public:
    HomSystem(const Shape& src, const Shape& dst);

    // L . P = R  with L : X -> src known
    void add_left(const RnHom& L, const RnHom& R);
    // P . G = R  with G : dst -> Y known
    void add_right(const RnHom& G, const RnHom& R);
    // L . P = P . G  (src = dst use case: equivariance)
    void add_commute(const RnHom& L, const RnHom& G);
    // sum_k  A_k . P . B_k = R
    void add_conjugation_sum(const std::vector<std::pair<RnHom, RnHom>>& pairs, const RnHom& R);

    struct AffineOutcome {
        std::optional<RnHom> solution;
        std::size_t failed_equation = 0;
        std::vector<std::uint64_t> residual;
    };
    AffineOutcome solve_affine() const;
    std::vector<RnHom> kernel_basis() const;  // spanning set of the homogeneous solutions

    RnHom from_params(const std::vector<std::uint64_t>& u) const;
    std::size_t param_count() const { return nsrc_ * ndst_; }

private:
    Shape src_, dst_;
    std::size_t nsrc_, ndst_;
    std::vector<unsigned> shift_;  // max(mu_j - lambda_i, 0) per parameter
    std::size_t neq_ = 0;
    std::vector<std::vector<std::uint64_t>> eq_cols_;  // per equation: coefficient per parameter
    std::vector<std::uint64_t> rhs_;

    std::size_t pidx(std::size_t i, std::size_t j) const { return i * ndst_ + j; }
    void new_equations(std::size_t k);
};

}  // namespace strel
