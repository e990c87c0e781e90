#pragma once

#include "strel/grouprep.hpp"

namespace strel {

// Outcome of the trace test for weak projectivity.  A positive verdict
// carries a preimage u with sum_g act(g).u.act(g^-1) = identity, re-verified
// exactly; a negative verdict carries the point where greedy reduction of the
// linear system against its Howell form got stuck.
struct StableVerdict {
    bool weakly_projective = false;
    std::optional<RnHom> witness;
    std::size_t failed_equation = 0;
    std::vector<std::uint64_t> residual;
};

StableVerdict is_weakly_projective(const GModule& M);

// 0 -> M -> induced -> sigma -> 0, split over the base ring by projecting
// onto the identity-element block of the induced module.
struct Suspension {
    GModule sigma;
    SES seq;
};
Suspension suspend(const GModule& M);

// 0 -> omega -> induced -> M -> 0 along the counit; the retraction of the
// kernel inclusion is built from the coordinate section x |-> e (x) x.
struct Desuspension {
    GModule omega;
    SES seq;
};
Desuspension desuspend(const GModule& M);

// Mapping cone of f: M -> N: the cokernel of (unit, -f): M -> induced(M) (+) N,
// with the triangle maps N -> cone -> sigma(M).
struct ConeData {
    GModule cone;
    GHom from_target;    // N -> cone
    GHom to_suspension;  // cone -> sigma(M)
};
ConeData cone(const GHom& f);

// Retraction of s.i over the base ring, if one exists (s must be exact).
std::optional<RnHom> check_r_split(const SES& s);

bool is_stably_zero(const GModule& M);
bool is_stably_iso(const GHom& f);

// Vanishing of the level-i piece of M under the one-level filtration: base
// change to level i, cone of the unit onto level i-1, drop to level 1 by
// multiplication, then test weak projectivity there.  The level-1 test uses
// the free-rank criterion for cyclic groups of order p and the trace test
// otherwise; either branch is exact.  M is stably zero iff every level
// vanishes.
bool level_obstruction_vanishes(const GModule& M, unsigned i);

struct StableIsoResult {
    IsoStatus status = IsoStatus::Unknown;
    std::optional<GHom> witness;  // a map whose cone is weakly projective
};

// Yes only with a verified witness; No only when both zero-tests disagree or
// the whole hom space was exhausted; randomized attempts are seeded.
StableIsoResult stably_isomorphic(const GModule& M, const GModule& N, std::uint64_t seed,
                                  unsigned budget);

}  // namespace strel
