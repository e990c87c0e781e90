#include "strel/spectrum.hpp"

#include <algorithm>

namespace strel {

bool SupportSet::contains(unsigned i) const {
    return std::find(members.begin(), members.end(), i) != members.end();
}

std::string SupportSet::str() const {
    std::string s = "{";
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(members[k]);
    }
    return s + "}";
}

GModule component_obstruction(const GModule& X, unsigned i) {
    require(i >= 1 && i <= X.level, "component level out of range");
    GModule Y = base_change(X, i);
    if (i == 1) return Y;
    return desuspend(cone(bc_unit(Y, i - 1)).cone).omega;
}

SupportSet support(const GModule& X) {
    SupportSet s;
    s.n = X.level;
    s.exact = X.group.order == X.ring.p;
    for (unsigned i = 1; i <= X.level; ++i)
        if (!level_obstruction_vanishes(X, i)) s.members.push_back(i);
    return s;
}

bool in_prime(const GModule& X, unsigned i) {
    require(X.group.order == X.ring.p,
            "prime membership is defined for cyclic groups of prime order only");
    require(i >= 1 && i <= X.ring.n, "prime index out of range");
    if (i > X.level) return true;  // pieces above the module's level vanish
    return level_obstruction_vanishes(X, i);
}

GModule residue_model(const GModule& X, unsigned i) {
    return mult_functor(component_obstruction(X, i), i - 1);
}

std::vector<PrimeDescriptor> spc_points(const RingSpec& ring, const FiniteGroup& G) {
    require(G.order == ring.p, "spectrum points are computed for cyclic groups of prime order");
    std::vector<GModule> w;
    w.reserve(ring.n);
    for (unsigned j = 1; j <= ring.n; ++j)
        w.push_back(view_at_level(cosyzygy_w(ring, G, j).w, ring.n));
    for (unsigned a = 0; a < ring.n; ++a)
        for (unsigned b = a + 1; b < ring.n; ++b)
            require(is_weakly_projective(tensor_g(w[a], w[b])).weakly_projective,
                    "cosyzygies at distinct levels must annihilate each other");
    std::vector<PrimeDescriptor> out;
    for (unsigned i = 1; i <= ring.n; ++i) {
        PrimeDescriptor d;
        d.i = i;
        for (unsigned j = 1; j <= ring.n; ++j)
            if (j != i) d.generators.push_back(w[j - 1]);
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace strel
