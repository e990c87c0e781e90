#include "strel/group.hpp"

#include <algorithm>
#include <array>

namespace strel {

namespace {

bool prime_size(std::size_t m) {
    if (m < 2) return false;
    for (std::size_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::size_t order, const std::vector<std::size_t>& table,
                                    std::vector<std::size_t> gens) {
    require(order >= 1, "group order must be positive");
    require(table.size() == order * order, "Cayley table has wrong size");
    for (std::size_t x : table) require(x < order, "Cayley table entry out of range");

    FiniteGroup G;
    G.order = order;
    G.table = table;

    for (std::size_t g = 0; g < order; ++g)
        require(G.mul(0, g) == g && G.mul(g, 0) == g, "identity must sit at index 0");
    for (std::size_t g = 0; g < order; ++g) {
        std::vector<bool> seen_row(order, false), seen_col(order, false);
        for (std::size_t h = 0; h < order; ++h) {
            std::size_t r = G.mul(g, h), c = G.mul(h, g);
            require(!seen_row[r] && !seen_col[c], "Cayley table row or column repeats an entry");
            seen_row[r] = seen_col[c] = true;
        }
    }
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b)
            for (std::size_t c = 0; c < order; ++c)
                require(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)),
                        "Cayley table is not associative");

    G.inv.assign(order, 0);
    for (std::size_t g = 0; g < order; ++g)
        for (std::size_t h = 0; h < order; ++h)
            if (G.mul(g, h) == 0) {
                require(G.mul(h, g) == 0, "one-sided inverse in Cayley table");
                G.inv[g] = h;
            }

    for (std::size_t s : gens) require(s < order, "generator index out of range");
    std::vector<bool> reached(order, false);
    reached[0] = true;
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t a = frontier.back();
        frontier.pop_back();
        for (std::size_t s : gens) {
            std::size_t b = G.mul(a, s);
            if (!reached[b]) {
                reached[b] = true;
                frontier.push_back(b);
            }
        }
    }
    require(std::all_of(reached.begin(), reached.end(), [](bool v) { return v; }),
            "generators do not generate the group");
    G.gens = std::move(gens);
    return G;
}

FiniteGroup FiniteGroup::cyclic(std::size_t m) {
    require(m >= 1, "cyclic group order must be positive");
    std::vector<std::size_t> table(m * m);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) table[g * m + h] = (g + h) % m;
    std::vector<std::size_t> gens;
    if (m > 1) gens.push_back(1);
    FiniteGroup G = from_table(m, table, std::move(gens));
    G.token = "cyclic:" + std::to_string(m);
    return G;
}

FiniteGroup FiniteGroup::symmetric3() {
    // permutations of {0,1,2}: e, (01), (02), (12), (012), (021)
    const std::array<std::array<std::size_t, 3>, 6> perms = {{
        {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1},
    }};
    auto index_of = [&](const std::array<std::size_t, 3>& q) -> std::size_t {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == q) return i;
        throw ConstraintError("symmetric3: composition left the element list");
    };
    std::vector<std::size_t> table(36);
    for (std::size_t g = 0; g < 6; ++g)
        for (std::size_t h = 0; h < 6; ++h) {
            std::array<std::size_t, 3> c{};  // apply g, then h
            for (std::size_t x = 0; x < 3; ++x) c[x] = perms[h][perms[g][x]];
            table[g * 6 + h] = index_of(c);
        }
    return from_table(6, table, {1, 4});
}

FiniteGroup FiniteGroup::parse(const std::string& token) {
    const std::string prefix = "cyclic:";
    if (token.rfind(prefix, 0) != 0)
        throw ParseError("unrecognized group token: " + token);
    const std::string num = token.substr(prefix.size());
    if (num.empty() || num.size() > 9 ||
        !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("malformed cyclic group token: " + token);
    return cyclic(static_cast<std::size_t>(std::stoul(num)));
}

bool FiniteGroup::is_prime_order() const { return prime_size(order); }

}  // namespace strel
