#include "strel/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace strel {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::uint64_t uint_of(const json& j, const char* what) {
    if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

unsigned small_uint(const json& j, const char* what) {
    std::uint64_t v = uint_of(j, what);
    if (v > 1u << 20) throw ParseError(std::string(what) + " is out of range");
    return static_cast<unsigned>(v);
}

std::vector<std::uint64_t> uint_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<std::uint64_t> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(uint_of(e, what));
    return out;
}

FiniteGroup group_of(const json& j, const std::vector<std::size_t>& gens) {
    if (j.is_string()) {
        FiniteGroup g = FiniteGroup::parse(j.get<std::string>());
        if (g.gens == gens) return g;
        FiniteGroup h = FiniteGroup::from_table(g.order, g.table, gens);
        h.token = g.token;
        return h;
    }
    if (!j.is_object()) throw ParseError("group must be a token string or an object");
    std::uint64_t order = uint_of(field(j, "order"), "group order");
    std::vector<std::uint64_t> raw = uint_list(field(j, "table"), "group table");
    std::vector<std::size_t> table(raw.begin(), raw.end());
    return FiniteGroup::from_table(static_cast<std::size_t>(order), table, gens);
}

}  // namespace

GModule read_module(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw ParseError("module file must be a JSON object");

    const json& jr = field(j, "ring");
    if (!jr.is_object()) throw ParseError("ring must be an object");
    RingSpec ring = RingSpec::make(uint_of(field(jr, "p"), "ring p"),
                                   small_uint(field(jr, "n"), "ring n"));

    unsigned level = small_uint(field(j, "level"), "level");
    require(level <= ring.n, "level exceeds the ambient ring");

    const json& ja = field(j, "action");
    if (!ja.is_object()) throw ParseError("action must be an object");
    std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> acts;
    for (auto it = ja.begin(); it != ja.end(); ++it) {
        std::size_t idx = 0;
        try {
            std::size_t pos = 0;
            idx = std::stoul(it.key(), &pos);
            if (pos != it.key().size()) throw std::invalid_argument(it.key());
        } catch (const std::exception&) {
            throw ParseError("action key \"" + it.key() + "\" is not an element index");
        }
        acts.emplace_back(idx, uint_list(it.value(), "action matrix"));
    }
    std::sort(acts.begin(), acts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::size_t> gens;
    for (const auto& [idx, mat] : acts) gens.push_back(idx);

    FiniteGroup group = group_of(field(j, "group"), gens);
    for (std::size_t g : gens)
        require(g < group.order, "action key names an element outside the group");

    std::vector<unsigned> exps;
    for (std::uint64_t e : uint_list(field(j, "shape"), "shape")) {
        if (e > 1u << 20) throw ParseError("shape exponent is out of range");
        exps.push_back(static_cast<unsigned>(e));
    }
    Shape shape = Shape::make(ring.at_level(std::max(level, 1u)), exps);
    if (level == 0) require(shape.is_zero(), "a level-0 module must have empty shape");

    std::size_t r = shape.exps.size();
    std::vector<RnHom> gen_action;
    for (const auto& [idx, flat] : acts) {
        if (flat.size() != r * r) throw ParseError("action matrix has the wrong size");
        RMatrix m(shape.ring, r, r);
        for (std::size_t k = 0; k < flat.size(); ++k) m.at(k / r, k % r) = flat[k];
        gen_action.push_back(RnHom::make(shape, shape, std::move(m)));
    }
    return GModule::make(ring, level, group, shape, gen_action);
}

GModule read_module_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_module(in);
}

std::string write_module(const GModule& M) {
    json j;
    j["ring"] = {{"p", M.ring.p}, {"n", M.ring.n}};
    j["level"] = M.level;
    if (!M.group.token.empty()) {
        j["group"] = M.group.token;
    } else {
        j["group"] = {{"order", M.group.order}, {"table", M.group.table}};
    }
    j["shape"] = M.shape.exps;
    json act = json::object();
    for (std::size_t g : M.group.gens) {
        const RMatrix& m = M.act(g).mat;
        std::vector<std::uint64_t> flat;
        flat.reserve(m.rows * m.cols);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t k = 0; k < m.cols; ++k) flat.push_back(m.at(i, k));
        act[std::to_string(g)] = std::move(flat);
    }
    j["action"] = std::move(act);
    return j.dump(2) + "\n";
}

void write_module_file(const GModule& M, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + path);
    out << write_module(M);
    require(static_cast<bool>(out), "cannot write " + path);
}

}  // namespace strel
