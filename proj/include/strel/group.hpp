#pragma once

#include "strel/chainring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace strel {

// Finite group presented by its Cayley table over element indices
// 0..order-1, identity at index 0, with a distinguished generating set.
// Construction validates the full group law.
struct FiniteGroup {
    std::size_t order = 1;
    std::vector<std::size_t> table;  // row-major: table[g * order + h] = g*h
    std::vector<std::size_t> inv;
    std::vector<std::size_t> gens;
    std::string token;  // "cyclic:m" when built from the token, else empty

    static FiniteGroup from_table(std::size_t order, const std::vector<std::size_t>& table,
                                  std::vector<std::size_t> gens);
    static FiniteGroup cyclic(std::size_t m);
    static FiniteGroup symmetric3();
    // Accepts "cyclic:m" for m >= 1.
    static FiniteGroup parse(const std::string& token);

    std::size_t mul(std::size_t g, std::size_t h) const { return table[g * order + h]; }
    std::size_t inverse(std::size_t g) const { return inv[g]; }

    // Prime order (such a group is necessarily cyclic).
    bool is_prime_order() const;

    bool operator==(const FiniteGroup& o) const {
        return order == o.order && table == o.table && gens == o.gens;
    }
    bool operator!=(const FiniteGroup& o) const { return !(*this == o); }
};

}  // namespace strel
