#include "coverfam/search.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace coverfam {

SearchConfig SearchConfig::exact(int s, int q) {
    return SearchConfig(s, q, CoverTarget::full(s));
}

SearchConfig SearchConfig::at_least(int s, int q, int r) {
    SearchConfig cfg(s, q, CoverTarget::full(s));
    cfg.mode = Mode::DecideAtLeast;
    cfg.r = r;
    return cfg;
}

SearchConfig SearchConfig::greedy(int s, int q, uint64_t seed, uint64_t samples) {
    SearchConfig cfg(s, q, CoverTarget::full(s));
    cfg.mode = Mode::RandomGreedy;
    cfg.seed = seed;
    cfg.node_budget = samples;
    return cfg;
}

SearchCertificate::SearchCertificate(Family f, Claim c, int value_, bool incomplete_,
                                     uint64_t nodes, SearchConfig cfg)
    : family(std::move(f)), claim(c), value(value_), incomplete(incomplete_),
      nodes_explored(nodes), provenance(std::move(cfg)) {
    if (claim == Claim::Maximum && incomplete)
        throw internal_error("Maximum claim from an incomplete search");
    VerifyReport report = family_is_covering(family, provenance.target);
    if (!report)
        throw internal_error("search certificate failed re-verification at pair (" +
                             std::to_string(report.offending_pair->first) + "," +
                             std::to_string(report.offending_pair->second) + ")");
    if (family.size() != value)
        throw internal_error("certificate value does not match witness size");
}

namespace {

struct Candidates {
    std::vector<std::vector<Symbol>> words; // lex order, statically filtered
    int q;
};

// Both ordered differences of a candidate with the zero row must cover the
// target, so a candidate qualifies iff the word and its negation both cover.
Candidates enumerate_candidates(const SearchConfig& cfg) {
    long long total = 1;
    for (int i = 0; i < cfg.q; ++i) {
        total *= cfg.s;
        if (total > cfg.enumeration_cap)
            throw resource_error("s^q exceeds enumeration cap " +
                                 std::to_string(cfg.enumeration_cap));
    }
    Candidates out;
    out.q = cfg.q;
    TargetIndex idx(cfg.target);
    const uint64_t want = idx.full_mask();
    if (!idx.single_word()) throw resource_error("exact search targets must fit 64 bits");
    Alphabet alpha = Alphabet::mod_ring(cfg.s);

    std::vector<Symbol> word((size_t)cfg.q, 0);
    for (long long n = 0; n < total; ++n) {
        uint64_t fwd = 0, rev = 0;
        for (int c = 0; c < cfg.q; ++c) {
            int b = idx.bit_of(word[(size_t)c]);
            if (b >= 0) fwd |= 1ull << b;
            b = idx.bit_of(alpha.subtract(0, word[(size_t)c]));
            if (b >= 0) rev |= 1ull << b;
        }
        bool zero = std::all_of(word.begin(), word.end(), [](Symbol x) { return x == 0; });
        if (!zero && fwd == want && rev == want) out.words.push_back(word);
        // lex odometer
        for (int c = cfg.q - 1; c >= 0; --c) {
            if (++word[(size_t)c] < cfg.s) break;
            word[(size_t)c] = 0;
        }
    }
    return out;
}

struct PairChecker {
    const Alphabet alpha;
    const TargetIndex idx;
    uint64_t want;

    PairChecker(int s, const CoverTarget& target)
        : alpha(Alphabet::mod_ring(s)), idx(target), want(idx.full_mask()) {}

    // Checks u-v and v-u in one scan.
    bool compatible(const std::vector<Symbol>& u, const std::vector<Symbol>& v) const {
        uint64_t fwd = 0, rev = 0;
        const size_t q = u.size();
        for (size_t c = 0; c < q; ++c) {
            Symbol d = alpha.subtract(u[c], v[c]);
            int b = idx.bit_of(d);
            if (b >= 0) fwd |= 1ull << b;
            b = idx.bit_of(alpha.subtract(0, d));
            if (b >= 0) rev |= 1ull << b;
            if (fwd == want && rev == want) return true;
        }
        return false;
    }
};

struct WorkerResult {
    int best = 0;                       // rows beyond the zero row
    std::vector<int> witness;           // candidate indices
    uint64_t nodes = 0;
    bool exhausted_budget = false;
    bool found_threshold = false;       // DecideAtLeast early stop
};

// Depth-first extension in lexicographic candidate order. `stop_at` > 0 turns
// the search into a decision procedure that exits once stop_at non-zero rows
// are chosen.
struct Dfs {
    const Candidates& cands;
    const PairChecker& checker;
    uint64_t budget;
    int stop_at;
    WorkerResult res;
    std::vector<int> stack;

    Dfs(const Candidates& c, const PairChecker& pc, uint64_t budget_, int stop_at_)
        : cands(c), checker(pc), budget(budget_), stop_at(stop_at_) {}

    // Extension runs in lexicographic candidate order, so the first witness
    // reaching a given size is already the lex-least of that size within this
    // worker's partition.
    void record_if_better() {
        if ((int)stack.size() > res.best) {
            res.best = (int)stack.size();
            res.witness = stack;
        }
    }

    // Returns false when the caller should unwind (budget or threshold hit).
    bool extend(int cursor) {
        record_if_better();
        if (stop_at > 0 && (int)stack.size() >= stop_at) {
            res.found_threshold = true;
            return false;
        }
        const int n = (int)cands.words.size();
        // Suffix bound: even taking every remaining candidate cannot beat the
        // incumbent.
        if ((int)stack.size() + (n - cursor) <= res.best && stop_at <= 0) return true;
        for (int i = cursor; i < n; ++i) {
            if (res.nodes >= budget) {
                res.exhausted_budget = true;
                return false;
            }
            ++res.nodes;
            bool ok = true;
            for (int chosen : stack) {
                if (!checker.compatible(cands.words[(size_t)i], cands.words[(size_t)chosen])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            stack.push_back(i);
            bool keep_going = extend(i + 1);
            stack.pop_back();
            if (!keep_going) return false;
        }
        return true;
    }
};

Family witness_family(const SearchConfig& cfg, const Candidates& cands,
                      const std::vector<int>& picks) {
    std::vector<std::vector<Symbol>> rows;
    rows.push_back(std::vector<Symbol>((size_t)cfg.q, 0));
    for (int i : picks) rows.push_back(cands.words[(size_t)i]);
    return Family(Alphabet::mod_ring(cfg.s), cfg.q, std::move(rows),
                  "search(s=" + std::to_string(cfg.s) + ",q=" + std::to_string(cfg.q) + ")");
}

// Top-level branching on the second row is partitioned across workers;
// results merge by maximum size with the lexicographically least witness as
// the deterministic tie-break.
WorkerResult run_partitioned(const SearchConfig& cfg, const Candidates& cands,
                             const PairChecker& checker, int stop_at) {
    const int workers = std::max(1, cfg.worker_count);
    std::vector<WorkerResult> results((size_t)workers);
    auto work = [&](int w) {
        Dfs dfs(cands, checker, cfg.node_budget, stop_at);
        const int n = (int)cands.words.size();
        for (int first = w; first < n; first += workers) {
            if (dfs.res.nodes >= dfs.budget) {
                dfs.res.exhausted_budget = true;
                break;
            }
            ++dfs.res.nodes;
            dfs.stack.push_back(first);
            bool keep_going = dfs.extend(first + 1);
            dfs.stack.pop_back();
            if (!keep_going) break;
        }
        results[(size_t)w] = std::move(dfs.res);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }

    WorkerResult merged;
    for (auto& r : results) {
        merged.nodes += r.nodes;
        merged.exhausted_budget |= r.exhausted_budget;
        merged.found_threshold |= r.found_threshold;
        if (r.best > merged.best) {
            merged.best = r.best;
            merged.witness = r.witness;
        } else if (r.best == merged.best && r.best > 0) {
            // lexicographic tie-break on actual words
            std::vector<std::vector<Symbol>> a, b;
            for (int i : r.witness) a.push_back(cands.words[(size_t)i]);
            for (int i : merged.witness) b.push_back(cands.words[(size_t)i]);
            if (a < b) merged.witness = r.witness;
        }
    }
    return merged;
}

} // namespace

SearchCertificate exact_max(const SearchConfig& cfg) {
    if (cfg.mode != SearchConfig::Mode::ExactMax)
        throw input_error("exact_max requires ExactMax mode");
    Candidates cands = enumerate_candidates(cfg);
    PairChecker checker(cfg.s, cfg.target);
    WorkerResult r = run_partitioned(cfg, cands, checker, /*stop_at=*/0);
    Family witness = witness_family(cfg, cands, r.witness);
    auto claim = r.exhausted_budget ? SearchCertificate::Claim::AtLeast
                                    : SearchCertificate::Claim::Maximum;
    return SearchCertificate(std::move(witness), claim, r.best + 1, r.exhausted_budget,
                             r.nodes, cfg);
}

DecideResult decide_at_least(const SearchConfig& cfg, int r) {
    if (cfg.mode != SearchConfig::Mode::DecideAtLeast)
        throw input_error("decide_at_least requires DecideAtLeast mode");
    DecideResult out;

    if (cfg.hint) {
        const Family& hint = *cfg.hint;
        if (hint.alphabet == Alphabet::mod_ring(cfg.s) && hint.q == cfg.q &&
            hint.size() >= r && family_is_covering(hint, cfg.target)) {
            out.certificate = SearchCertificate(hint, SearchCertificate::Claim::AtLeast,
                                                hint.size(), false, 0, cfg);
            return out;
        }
    }
    if (r <= 1) {
        Family trivial(Alphabet::mod_ring(cfg.s), cfg.q,
                       {std::vector<Symbol>((size_t)cfg.q, 0)}, "trivial");
        out.certificate = SearchCertificate(std::move(trivial),
                                            SearchCertificate::Claim::AtLeast, 1, false, 0, cfg);
        return out;
    }

    Candidates cands = enumerate_candidates(cfg);
    PairChecker checker(cfg.s, cfg.target);
    WorkerResult res = run_partitioned(cfg, cands, checker, /*stop_at=*/r - 1);
    out.nodes_explored = res.nodes;
    if (res.found_threshold) {
        // recover the witness: best holds >= r-1 rows
        std::vector<int> picks(res.witness.begin(), res.witness.begin() + (r - 1));
        out.certificate = SearchCertificate(witness_family(cfg, cands, picks),
                                            SearchCertificate::Claim::AtLeast, r, false,
                                            res.nodes, cfg);
        return out;
    }
    if (res.exhausted_budget) {
        out.incomplete = true;
        return out;
    }
    out.refuted = true;
    return out;
}

SearchCertificate random_greedy(const SearchConfig& cfg) {
    if (cfg.mode != SearchConfig::Mode::RandomGreedy)
        throw input_error("random_greedy requires RandomGreedy mode");
    PairChecker checker(cfg.s, cfg.target);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, cfg.s - 1);

    std::vector<std::vector<Symbol>> accepted;
    accepted.push_back(std::vector<Symbol>((size_t)cfg.q, 0));
    uint64_t nodes = 0;
    for (uint64_t it = 0; it < cfg.node_budget; ++it) {
        std::vector<Symbol> word((size_t)cfg.q);
        for (int c = 0; c < cfg.q; ++c) word[(size_t)c] = pick(rng);
        ++nodes;
        bool ok = true;
        for (const auto& row : accepted) {
            if (word == row || !checker.compatible(word, row)) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(std::move(word));
    }
    int size = (int)accepted.size();
    Family witness(Alphabet::mod_ring(cfg.s), cfg.q, std::move(accepted),
                   "greedy(s=" + std::to_string(cfg.s) + ",q=" + std::to_string(cfg.q) +
                       ",seed=" + std::to_string(cfg.seed) + ")");
    return SearchCertificate(std::move(witness), SearchCertificate::Claim::AtLeast, size,
                             false, nodes, cfg);
}

} // namespace coverfam
