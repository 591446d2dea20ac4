#pragma once

#include <cstdint>
#include <optional>

#include "coverfam/family.hpp"

namespace coverfam {

struct SearchConfig {
    int s = 2;
    int q = 1;
    CoverTarget target;
    enum class Mode { ExactMax, DecideAtLeast, RandomGreedy } mode = Mode::ExactMax;
    int r = 0;                      // DecideAtLeast threshold
    uint64_t seed = 0;
    uint64_t node_budget = 50'000'000; // extension attempts, counted per worker
    int worker_count = 1;
    long long enumeration_cap = 10'000'000; // max s^q for exact enumeration
    std::optional<Family> hint;     // seed witness for DecideAtLeast

    SearchConfig(int s_, int q_, CoverTarget t) : s(s_), q(q_), target(std::move(t)) {}
    static SearchConfig exact(int s, int q);
    static SearchConfig at_least(int s, int q, int r);
    static SearchConfig greedy(int s, int q, uint64_t seed, uint64_t samples = 2000);
};

struct SearchCertificate {
    Family family;
    enum class Claim { Maximum, AtLeast } claim;
    int value = 0;
    bool incomplete = false;        // budget ran out; claim downgraded to AtLeast
    uint64_t nodes_explored = 0;
    SearchConfig provenance;

    // Re-verifies on construction; a failing family is an internal error,
    // never a returned value.
    SearchCertificate(Family f, Claim c, int value, bool incomplete, uint64_t nodes,
                      SearchConfig cfg);
};

struct DecideResult {
    std::optional<SearchCertificate> certificate; // present iff a witness was found
    bool refuted = false;                         // completed search proved < r
    bool incomplete = false;                      // budget exhausted, no conclusion
    uint64_t nodes_explored = 0;
};

// Exhaustive maximum-family search. Row 0 is fixed to the all-zero word
// (covering depends only on differences); remaining rows extend in
// lexicographic order over the statically filtered candidate words; per-pair
// cover masks complete incrementally with early exit.
SearchCertificate exact_max(const SearchConfig& cfg);

// Witness of size >= r, or refutation by exhaustion, or Incomplete on budget
// exhaustion. A hint family short-circuits the search when it verifies.
DecideResult decide_at_least(const SearchConfig& cfg, int r);

// Seeded sampling: accept a random word whenever it stays covering against
// all accepted rows. Deterministic given the seed.
SearchCertificate random_greedy(const SearchConfig& cfg);

} // namespace coverfam
