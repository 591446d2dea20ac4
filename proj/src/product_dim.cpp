#include "coverfam/product_dim.hpp"

#include <algorithm>
#include <cmath>

namespace coverfam {

ProductRepresentation family_to_representation(const Family& family, int r) {
    if (!family.alphabet.is_mod_ring())
        throw input_error("representations need a ModRing family");
    const int s = family.alphabet.modulus();
    if (r < 1 || r > family.size())
        throw input_error("r must satisfy 1 <= r <= |F|");
    VerifyReport verify = family_is_covering(family, CoverTarget::full(s));
    if (!verify)
        throw verification_error(
            "family is not Z_s-covering; offending pair (" +
            std::to_string(verify.offending_pair->first) + "," +
            std::to_string(verify.offending_pair->second) + ")");

    ProductRepresentation rep{CliqueFactor(s, r), family.q, {}};
    rep.colors.assign((size_t)r, std::vector<std::vector<Symbol>>(
                                     (size_t)s, std::vector<Symbol>((size_t)family.q)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j)
            for (int c = 0; c < family.q; ++c) {
                int v = (j - family.rows[(size_t)i][(size_t)c]) % s;
                if (v < 0) v += s;
                rep.colors[(size_t)i][(size_t)j][(size_t)c] = v;
            }
    RepresentationReport check = verify_representation(rep);
    if (!check)
        throw internal_error("constructed representation failed verification: " + check.reason);
    return rep;
}

RepresentationReport verify_representation(const ProductRepresentation& rep) {
    RepresentationReport report;
    const int s = rep.graph.s, r = rep.graph.r;
    for (int i1 = 0; i1 < r; ++i1)
        for (int j1 = 0; j1 < s; ++j1)
            for (int i2 = i1; i2 < r; ++i2)
                for (int j2 = (i2 == i1 ? j1 + 1 : 0); j2 < s; ++j2) {
                    const auto& a = rep.colors[(size_t)i1][(size_t)j1];
                    const auto& b = rep.colors[(size_t)i2][(size_t)j2];
                    bool agree_somewhere = false;
                    for (int c = 0; c < rep.q; ++c)
                        if (a[(size_t)c] == b[(size_t)c]) {
                            agree_somewhere = true;
                            break;
                        }
                    bool adjacent = (i1 == i2);
                    if (adjacent && agree_somewhere) {
                        report.pass = false;
                        report.violating = {{i1, j1}, {i2, j2}};
                        report.reason = "adjacent vertices agree in a coordinate";
                        return report;
                    }
                    if (!adjacent && !agree_somewhere) {
                        report.pass = false;
                        report.violating = {{i1, j1}, {i2, j2}};
                        report.reason = "non-adjacent vertices differ everywhere";
                        return report;
                    }
                }
    return report;
}

int q_lower_bound(int s, int r) {
    if (s < 2) throw input_error("q_lower_bound needs s >= 2");
    if (r < 1) throw input_error("q_lower_bound needs r >= 1");
    if (r == 1) return 1; // a single clique embeds in one complete graph
    int log_bound = 0;
    while ((1ll << log_bound) < 2ll * r) ++log_bound;
    return std::max(s, log_bound);
}

void RTable::record(int s, int q, int value) {
    auto key = std::make_pair(s, q);
    auto it = entries.find(key);
    if (it == entries.end() || it->second < value) entries[key] = value;
}

int RTable::best_at(int s, int q) const {
    int best = 1;
    for (const auto& [key, value] : entries)
        if (key.first == s && key.second <= q) best = std::max(best, value);
    return best;
}

int RTable::max_q(int s) const {
    int out = 0;
    for (const auto& [key, value] : entries)
        if (key.first == s) out = std::max(out, key.second);
    return out;
}

void record_family(RTable& table, const Family& family) {
    if (!family.alphabet.is_mod_ring()) throw input_error("record_family: ModRing only");
    int s = family.alphabet.modulus();
    VerifyReport verify = family_is_covering(family, CoverTarget::full(s));
    if (!verify) throw verification_error("record_family: family is not covering");
    table.record(s, family.q, family.size());
}

namespace {

struct QSolver {
    int s;
    const RTable& table;
    int q_max;
    std::map<int, QUpperBound> memo;

    std::optional<int> direct(int r) const {
        for (int q = 1; q <= q_max; ++q)
            if (table.best_at(s, q) >= r) return q;
        return std::nullopt;
    }

    const QUpperBound& solve(int r, int depth) {
        auto it = memo.find(r);
        if (it != memo.end()) return it->second;
        QUpperBound best;
        if (auto d = direct(r)) {
            best.value = *d;
            best.trace = {"direct: certified R(" + std::to_string(s) + "," +
                          std::to_string(*d) + ") >= " + std::to_string(r)};
        }
        if (depth < 20) {
            // r <= r1 * r2 with r1, r2 >= 2
            for (int r1 = 2; (long long)r1 * r1 <= (long long)r * 2 && r1 <= r; ++r1) {
                int r2 = (r + r1 - 1) / r1; // ceil
                if (r2 < 2) continue;
                QUpperBound a = solve(r1, depth + 1);
                QUpperBound b = solve(r2, depth + 1);
                if (a.value && b.value) {
                    int candidate = *a.value + *b.value;
                    if (!best.value || candidate < *best.value) {
                        best.value = candidate;
                        best.trace = {"split: Q(s," + std::to_string(r1) + "*" +
                                      std::to_string(r2) + ") <= Q(s," + std::to_string(r1) +
                                      ") + Q(s," + std::to_string(r2) + ") = " +
                                      std::to_string(candidate)};
                        best.trace.insert(best.trace.end(), a.trace.begin(), a.trace.end());
                        best.trace.insert(best.trace.end(), b.trace.begin(), b.trace.end());
                    }
                }
            }
        }
        return memo[r] = best;
    }
};

} // namespace

QUpperBound q_upper_bound(int s, int r, const RTable& table) {
    if (s < 2 || r < 1) throw input_error("q_upper_bound needs s >= 2, r >= 1");
    if (r == 1) {
        QUpperBound out;
        out.value = 1;
        out.trace = {"trivial: one clique in one complete graph"};
        return out;
    }
    QSolver solver{s, table, table.max_q(s), {}};
    return solver.solve(r, 0);
}

} // namespace coverfam
