#include "coverfam/stars.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

namespace coverfam {

BipartiteGraph::BipartiteGraph(int n1_, int n2_, std::vector<std::vector<int>> adj)
    : n1(n1_), n2(n2_), adjacency(std::move(adj)) {
    if (n1 < 1 || n2 < 1) throw input_error("bipartite graph needs non-empty parts");
    if ((int)adjacency.size() != n1) throw input_error("adjacency must list every A1 vertex");
    std::vector<int> deg2((size_t)n2, 0);
    d1 = (int)adjacency[0].size();
    for (auto& nbrs : adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw input_error("duplicate edge in adjacency list");
        if ((int)nbrs.size() != d1)
            throw input_error("not biregular: A1 degrees differ");
        for (int v : nbrs) {
            if (v < 0 || v >= n2) throw input_error("neighbor index out of range");
            ++deg2[(size_t)v];
        }
    }
    if (d1 < 1) throw input_error("not biregular: zero A1 degree");
    d2 = deg2[0];
    for (int v = 0; v < n2; ++v)
        if (deg2[(size_t)v] != d2)
            throw input_error("not biregular: A2 vertex " + std::to_string(v) +
                              " has degree " + std::to_string(deg2[(size_t)v]) +
                              ", expected " + std::to_string(d2));
    if ((long long)n1 * d1 != (long long)n2 * d2)
        throw internal_error("edge count mismatch"); // implied by the checks above
}

BipartiteGraph BipartiteGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file: " + path);
    int n1, n2, d1, d2;
    if (!(in >> n1 >> n2 >> d1 >> d2)) throw input_error("bad graph header in " + path);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<int>> adj;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::vector<int> nbrs;
        int v;
        while (ss >> v) nbrs.push_back(v);
        adj.push_back(std::move(nbrs));
    }
    BipartiteGraph g(n1, n2, std::move(adj));
    if (g.d1 != d1 || g.d2 != d2)
        throw input_error("graph header degrees do not match adjacency");
    return g;
}

void BipartiteGraph::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write graph file: " + path);
    out << n1 << " " << n2 << " " << d1 << " " << d2 << "\n";
    for (const auto& nbrs : adjacency) {
        for (size_t i = 0; i < nbrs.size(); ++i) out << (i ? " " : "") << nbrs[i];
        out << "\n";
    }
}

int star_min_size(const BipartiteGraph& g) {
    double ln2n2 = std::log(2.0 * g.n2);
    return std::max(1, (int)std::floor((double)g.d1 / (4.0 * ln2n2)));
}

namespace {

// Plain Dinic, small graphs only.
struct MaxFlow {
    struct Edge {
        int to, cap, flow;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> g;
    std::vector<int> level, it;

    explicit MaxFlow(int n) : g((size_t)n), level((size_t)n), it((size_t)n) {}

    int add_edge(int from, int to, int cap) {
        int id = (int)edges.size();
        edges.push_back({to, cap, 0});
        edges.push_back({from, 0, 0});
        g[(size_t)from].push_back(id);
        g[(size_t)to].push_back(id + 1);
        return id;
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        q.push(s);
        level[(size_t)s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : g[(size_t)v]) {
                const Edge& e = edges[(size_t)id];
                if (e.cap - e.flow > 0 && level[(size_t)e.to] == -1) {
                    level[(size_t)e.to] = level[(size_t)v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level[(size_t)t] != -1;
    }

    int dfs(int v, int t, int pushed) {
        if (v == t) return pushed;
        for (int& i = it[(size_t)v]; i < (int)g[(size_t)v].size(); ++i) {
            int id = g[(size_t)v][(size_t)i];
            Edge& e = edges[(size_t)id];
            if (e.cap - e.flow > 0 && level[(size_t)e.to] == level[(size_t)v] + 1) {
                int got = dfs(e.to, t, std::min(pushed, e.cap - e.flow));
                if (got > 0) {
                    e.flow += got;
                    edges[(size_t)(id ^ 1)].flow -= got;
                    return got;
                }
            }
        }
        return 0;
    }

    int run(int s, int t) {
        int total = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) total += pushed;
        }
        return total;
    }
};

} // namespace

StarForest decompose(const BipartiteGraph& g, uint64_t seed, int max_retries) {
    const double ln2n2 = std::log(2.0 * g.n2);
    if ((double)g.d2 < ln2n2)
        throw input_error("lemma hypothesis fails: d2 = " + std::to_string(g.d2) +
                          " < ln(2 n2) = " + std::to_string(ln2n2));
    if (max_retries < 1) throw input_error("max_retries must be >= 1");

    double p = ln2n2 / (double)g.d2;
    if (p > 1.0) p = 1.0;
    const double window_hi = 4.0 * ln2n2;
    const int min_size = star_min_size(g);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<int> centers;
    std::vector<int> deg_in_s((size_t)g.n2);
    int last_violations = 0;
    int attempt = 0;
    bool ok = false;
    for (attempt = 1; attempt <= max_retries; ++attempt) {
        centers.clear();
        for (int u = 0; u < g.n1; ++u)
            if (coin(rng) < p) centers.push_back(u);
        std::fill(deg_in_s.begin(), deg_in_s.end(), 0);
        for (int u : centers)
            for (int v : g.adjacency[(size_t)u]) ++deg_in_s[(size_t)v];
        int violations = 0;
        for (int v = 0; v < g.n2; ++v)
            if (deg_in_s[(size_t)v] < 1 || (double)deg_in_s[(size_t)v] > window_hi) ++violations;
        last_violations = violations;
        if (violations == 0 && !centers.empty()) {
            ok = true;
            break;
        }
    }
    if (!ok)
        throw randomness_error("degree window failed after " + std::to_string(max_retries) +
                               " attempts (" + std::to_string(last_violations) +
                               " A2 vertices violated it on the last attempt)");

    // Feasible flow for the lower bounds: source -> center with capacity
    // min_size (the lower bound), center -> adjacent word 1, word -> sink 1.
    // Saturating all source arcs is exactly feasibility of the Hall step.
    const int nc = (int)centers.size();
    const int source = 0;
    const int sink = 1 + nc + g.n2;
    MaxFlow flow(sink + 1);
    std::vector<int> center_arc((size_t)nc);
    std::vector<std::vector<int>> leaf_arcs((size_t)nc);
    for (int c = 0; c < nc; ++c) {
        center_arc[(size_t)c] = flow.add_edge(source, 1 + c, min_size);
        for (int v : g.adjacency[(size_t)centers[(size_t)c]])
            leaf_arcs[(size_t)c].push_back(flow.add_edge(1 + c, 1 + nc + v, 1));
    }
    for (int v = 0; v < g.n2; ++v) flow.add_edge(1 + nc + v, sink, 1);

    int pushed = flow.run(source, sink);
    if (pushed != nc * min_size)
        throw internal_error("HallViolation: feasible flow gives only " +
                             std::to_string(pushed) + " of " + std::to_string(nc * min_size) +
                             " required leaf slots");

    StarForest forest;
    forest.assignment.assign((size_t)g.n2, -1);
    forest.centers = centers;
    forest.attempts_used = attempt;
    forest.guaranteed_min_size = min_size;
    for (int c = 0; c < nc; ++c) {
        const auto& nbrs = g.adjacency[(size_t)centers[(size_t)c]];
        for (size_t k = 0; k < leaf_arcs[(size_t)c].size(); ++k) {
            if (flow.edges[(size_t)leaf_arcs[(size_t)c][k]].flow > 0)
                forest.assignment[(size_t)nbrs[k]] = centers[(size_t)c];
        }
    }
    // Every remaining A2 vertex has a neighbor in S by the window check;
    // attach it to the smallest such center.
    std::vector<char> in_s((size_t)g.n1, 0);
    for (int u : centers) in_s[(size_t)u] = 1;
    std::vector<std::vector<int>> word_centers((size_t)g.n2);
    for (int u : centers)
        for (int v : g.adjacency[(size_t)u]) word_centers[(size_t)v].push_back(u);
    for (int v = 0; v < g.n2; ++v) {
        if (forest.assignment[(size_t)v] == -1) {
            if (word_centers[(size_t)v].empty())
                throw internal_error("uncovered A2 vertex escaped the window check");
            forest.assignment[(size_t)v] =
                *std::min_element(word_centers[(size_t)v].begin(), word_centers[(size_t)v].end());
        }
    }
    if (!verify_forest(g, forest, min_size))
        throw internal_error("star forest failed post-construction verification");
    return forest;
}

bool verify_forest(const BipartiteGraph& g, const StarForest& forest, int min_size) {
    if ((int)forest.assignment.size() != g.n2) return false;
    std::vector<int> leaves((size_t)g.n1, 0);
    for (int v = 0; v < g.n2; ++v) {
        int c = forest.assignment[(size_t)v];
        if (c < 0 || c >= g.n1) return false;
        const auto& nbrs = g.adjacency[(size_t)c];
        if (!std::binary_search(nbrs.begin(), nbrs.end(), v)) return false;
        ++leaves[(size_t)c];
    }
    for (int u = 0; u < g.n1; ++u)
        if (leaves[(size_t)u] > 0 && leaves[(size_t)u] < min_size) return false;
    return true;
}

} // namespace coverfam
