#pragma once

#include <string>

#include "strel/stable.hpp"

namespace strel {

// Levels at which a module survives stably.  The classification of thick
// ideals by such sets is complete for cyclic groups of prime order (exact);
// for other groups the set is still well defined but only an invariant.
struct SupportSet {
    unsigned n = 0;                 // ambient level of the module tested
    std::vector<unsigned> members;  // ascending
    bool exact = false;
    bool contains(unsigned i) const;
    std::string str() const;  // "{1,3}", "{}" when empty
};

// The level-i piece of X: base change to level i and, above the bottom
// level, the desuspended cone of the unit onto level i-1.
GModule component_obstruction(const GModule& X, unsigned i);

SupportSet support(const GModule& X);

// Membership in the i-th prime: the level-i piece vanishes stably.  Only
// cyclic groups of prime order carry this classification.
bool in_prime(const GModule& X, unsigned i);

// The level-i piece dropped to a module over the residue group algebra.
GModule residue_model(const GModule& X, unsigned i);

struct PrimeDescriptor {
    unsigned i = 0;
    std::vector<GModule> generators;  // cosyzygies W_j for j != i, viewed at level n
};

// One prime per level 1..n for a cyclic group of prime order, generated by
// the cosyzygies away from that level.  Verifies that cosyzygies at distinct
// levels annihilate each other under tensor before returning.
std::vector<PrimeDescriptor> spc_points(const RingSpec& ring, const FiniteGroup& G);

}  // namespace strel
