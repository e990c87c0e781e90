#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strel/spectrum.hpp"

namespace strel {

inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr unsigned kDefaultBudget = 256;

struct CheckReport {
    std::string id;
    std::string params;
    std::string status;  // "pass" | "fail" | "unknown"
    std::string witness;
    std::string paper_ref;
    std::uint64_t wall_ms = 0;
};

struct SuiteRequest {
    std::uint64_t p = 2;
    unsigned n = 2;
    std::string group = "cyclic:2";
    std::uint64_t seed = kDefaultSeed;
    unsigned budget = kDefaultBudget;
};

// Registered suite ids in execution order; "all" runs every one of them.
std::vector<std::string> suite_names();
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteRequest& req);

bool all_pass(const std::vector<CheckReport>& reports);
std::string text_report(const std::vector<CheckReport>& reports);
// Machine reports omit wall time so identical runs emit identical bytes.
std::string machine_report(const std::vector<CheckReport>& reports);

// Seeded module source for the randomized suites: either the cokernel of a
// random map between induced modules or a small direct sum of standard
// pieces, all at the requested level.
GModule random_module(const RingSpec& ring, const FiniteGroup& G, unsigned level,
                      std::mt19937_64& eng);

}  // namespace strel
