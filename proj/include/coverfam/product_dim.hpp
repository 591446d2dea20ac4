#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coverfam/family.hpp"

namespace coverfam {

// r vertex-disjoint copies of K_s. Vertex (i, j) is label j in Z_s of part i.
struct CliqueFactor {
    int s = 2;
    int r = 1;

    CliqueFactor(int s_, int r_) : s(s_), r(r_) {
        if (s < 2 || r < 1) throw input_error("clique factor needs s >= 2, r >= 1");
    }
    int vertex_count() const { return s * r; }
};

// q-tuples of colors per vertex. Valid iff tuples differ in all coordinates
// exactly for adjacent (same part, different label) vertices and agree
// somewhere exactly for non-adjacent ones.
struct ProductRepresentation {
    CliqueFactor graph;
    int q = 0;
    // colors[i][j] = q-tuple for vertex (i, j); color symbols are residues
    // mod s (the clique index of the coloring).
    std::vector<std::vector<std::vector<Symbol>>> colors;
};

struct RepresentationReport {
    bool pass = true;
    // (part, label) pairs of the first violating vertex pair, plus which
    // direction broke.
    std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> violating;
    std::string reason;

    explicit operator bool() const { return pass; }
};

// Prop 1.2's constructive direction: coloring c assigns vertex (i, j) the
// color (j - F[i][c]) mod s. Requires a verified Z_s-covering family and
// r <= |F|; the output is re-verified before returning.
ProductRepresentation family_to_representation(const Family& family, int r);

// Checks both directions over all vertex pairs; reports the first violation.
RepresentationReport verify_representation(const ProductRepresentation& rep);

// max(s, ceil(log2(2r))) for r >= 2; the degenerate r = 1 returns 1.
int q_lower_bound(int s, int r);

// Certified R(s,q) lower bounds, the evidence for Prop 1.2 upper bounds.
struct RTable {
    // (s, q) -> best certified lower bound on R(s,q)
    std::map<std::pair<int, int>, int> entries;

    void record(int s, int q, int value);
    // largest certified R(s, q') for q' <= q (monotone padding)
    int best_at(int s, int q) const;
    int max_q(int s) const;
};

struct QUpperBound {
    std::optional<int> value;        // empty when the table cannot reach r
    std::vector<std::string> trace;  // which rule fired, innermost last
};

// Least q from (a) direct lookup: smallest q with certified R(s,q) >= r, and
// (b) subadditive splits r <= r1*r2, minimized by memoized DP.
QUpperBound q_upper_bound(int s, int r, const RTable& table);

// Populate a table from a family's size after verification.
void record_family(RTable& table, const Family& family);

} // namespace coverfam
