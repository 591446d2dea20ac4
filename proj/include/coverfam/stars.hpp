#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverfam/errors.hpp"

namespace coverfam {

// Biregular bipartite graph: every A1 vertex has degree d1, every A2 vertex
// degree d2. Checked on construction.
struct BipartiteGraph {
    int n1 = 0, n2 = 0;
    int d1 = 0, d2 = 0;
    std::vector<std::vector<int>> adjacency; // per A1 vertex, sorted A2 neighbors

    BipartiteGraph(int n1_, int n2_, std::vector<std::vector<int>> adj);

    static BipartiteGraph load(const std::string& path);
    void save(const std::string& path) const;
};

// Vertex-disjoint stars with centers in A1 covering every A2 vertex.
struct StarForest {
    std::vector<int> assignment; // A2 vertex -> A1 center
    std::vector<int> centers;    // the sampled set S, sorted
    int attempts_used = 0;
    int guaranteed_min_size = 1;
};

// Guaranteed minimum leaves per star: max(1, floor(d1 / (4 ln(2 n2)))).
// "log" in the lemma is the natural logarithm (the proof's union bound
// (1-p)^d2 < e^{-p d2} = 1/(2n2) forces base e).
int star_min_size(const BipartiteGraph& g);

// Randomized star decomposition:
//  1. sample S from A1 with p = ln(2 n2)/d2 clamped to (0,1];
//  2. require every A2 vertex to have between 1 and 4 ln(2 n2) neighbors in
//     S, resampling up to max_retries times;
//  3. give every center at least star_min_size leaves by an exact feasible
//     flow (lower bounds realized as saturating source capacities);
//  4. attach each remaining A2 vertex to its smallest adjacent center.
// Throws Randomness when retries exhaust and Internal (HallViolation) when
// the flow cannot satisfy the lower bounds.
StarForest decompose(const BipartiteGraph& g, uint64_t seed, int max_retries = 10);

// Independent replay of adjacency, coverage, center-disjointness and minimum
// star size.
bool verify_forest(const BipartiteGraph& g, const StarForest& forest, int min_size);

} // namespace coverfam
