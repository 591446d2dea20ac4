#include "coverfam/amplify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>

namespace coverfam {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; (long long)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int smallest_primitive_root(int s) {
    if (!is_prime(s)) throw input_error("primitive roots need a prime modulus");
    if (s == 2) return 1;
    for (int a = 2; a < s; ++a) {
        int order = 1;
        long long x = a;
        while (x != 1) {
            x = x * a % s;
            ++order;
        }
        if (order == s - 1) return a;
    }
    throw internal_error("no primitive root found for prime " + std::to_string(s));
}

BalancedWordSpec::BalancedWordSpec(int s_, int q_) : s(s_), q(q_) {
    if (s < 3 || !is_prime(s)) throw input_error("balanced words need an odd prime s >= 3");
    if (q < s - 1 || q % (s - 1) != 0)
        throw input_error("q must be a positive multiple of s-1");
}

namespace {

using Row = std::vector<Symbol>;

long long uniform_word_count(int letters, int copies, long long cap) {
    long long q = (long long)letters * copies;
    unsigned __int128 total = 1;
    for (int k = 0; k < letters; ++k) {
        int remaining = (int)(q - (long long)k * copies);
        total *= binomial(remaining, copies);
        if (total > (unsigned __int128)cap) return cap + 1;
    }
    return (long long)total;
}

// apply(p, w)[i] = w[p[i]]
Row apply_perm(const std::vector<int>& p, const Row& w) {
    Row out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[i] = w[(size_t)p[i]];
    return out;
}

// the word w with apply(p, w) = y
Row scatter_perm(const std::vector<int>& p, const Row& y) {
    Row out(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[(size_t)p[i]] = y[i];
    return out;
}

// Lexicographically least p with apply(p, w) = y, or empty if multisets differ.
std::vector<int> least_perm_to(const Row& w, const Row& y) {
    const int q = (int)w.size();
    std::map<Symbol, std::vector<int>> positions; // letter -> unused positions, ascending
    for (int j = q - 1; j >= 0; --j) positions[w[(size_t)j]].push_back(j);
    std::vector<int> p((size_t)q);
    for (int i = 0; i < q; ++i) {
        auto it = positions.find(y[(size_t)i]);
        if (it == positions.end() || it->second.empty()) return {};
        p[(size_t)i] = it->second.back();
        it->second.pop_back();
    }
    return p;
}

// Block structure shared by the prime and integer-alphabet specials: block k
// holds the letters {2k+1, 2k+2}, each `copies` times.
struct PairedBlocks {
    int pairs = 1;
    int copies = 1;
    int block_len() const { return 2 * copies; }
    int length() const { return pairs * block_len(); }

    bool is_special(const Row& w) const {
        for (int k = 0; k < pairs; ++k) {
            int lo = 2 * k + 1, hi = 2 * k + 2;
            int nlo = 0, nhi = 0;
            for (int i = k * block_len(); i < (k + 1) * block_len(); ++i) {
                if (w[(size_t)i] == lo) ++nlo;
                else if (w[(size_t)i] == hi) ++nhi;
                else return false;
            }
            if (nlo != copies || nhi != copies) return false;
        }
        return true;
    }

    // Least p with apply(p, w) special; greedy with per-block letter quotas.
    std::vector<int> least_perm_to_special(const Row& w) const {
        const int q = length();
        std::map<Symbol, std::vector<int>> positions;
        for (int j = q - 1; j >= 0; --j) positions[w[(size_t)j]].push_back(j);
        std::vector<int> p((size_t)q);
        for (int k = 0; k < pairs; ++k) {
            int quota_lo = copies, quota_hi = copies;
            int lo = 2 * k + 1, hi = 2 * k + 2;
            for (int i = k * block_len(); i < (k + 1) * block_len(); ++i) {
                auto ilo = positions.find(lo), ihi = positions.find(hi);
                int jlo = (ilo != positions.end() && !ilo->second.empty() && quota_lo > 0)
                              ? ilo->second.back() : -1;
                int jhi = (ihi != positions.end() && !ihi->second.empty() && quota_hi > 0)
                              ? ihi->second.back() : -1;
                int j;
                if (jlo < 0 && jhi < 0) return {};
                if (jhi < 0 || (jlo >= 0 && jlo < jhi)) {
                    j = jlo; ilo->second.pop_back(); --quota_lo;
                } else {
                    j = jhi; ihi->second.pop_back(); --quota_hi;
                }
                p[(size_t)i] = j;
            }
        }
        return p;
    }

    // First `cap` special words in lex order.
    std::vector<Row> enumerate(long long cap) const {
        std::vector<Row> block_words; // balanced two-letter words of length 2c, letters {0,1}
        Row seed((size_t)block_len());
        for (int i = 0; i < block_len(); ++i) seed[(size_t)i] = i < copies ? 0 : 1;
        std::sort(seed.begin(), seed.end());
        do {
            block_words.push_back(seed);
        } while (std::next_permutation(seed.begin(), seed.end()));

        std::vector<Row> out;
        std::vector<size_t> pick((size_t)pairs, 0);
        while ((long long)out.size() < cap) {
            Row word;
            word.reserve((size_t)length());
            for (int k = 0; k < pairs; ++k)
                for (Symbol b : block_words[pick[(size_t)k]])
                    word.push_back(2 * k + 1 + b);
            out.push_back(std::move(word));
            int k = pairs - 1;
            while (k >= 0 && ++pick[(size_t)k] == block_words.size()) pick[(size_t)k--] = 0;
            if (k < 0) break;
        }
        return out;
    }

    long long count() const {
        unsigned __int128 total = 1;
        for (int k = 0; k < pairs; ++k) {
            total *= binomial(block_len(), copies);
            if (total > (unsigned __int128)(1ll << 62)) return 1ll << 62;
        }
        return (long long)total;
    }
};

// -------------------------------------------------------------------------
// Class systems: disjoint classes of equal-multiset words such that ordered
// differences of same-class pairs cover the iteration's current target.

class ClassSystem {
  public:
    virtual ~ClassSystem() = default;
    virtual int class_of(const Row& w) = 0;
    virtual std::vector<Row> members(int cls) = 0; // sorted ascending
    virtual std::vector<int> seed_class_ids() = 0;
    virtual int discovered() const = 0;
};

// Classes produced by the Lemma 2.1 star decomposition; every class carries
// the center permutation mapping members into the special words.
class StarClassSystem : public ClassSystem {
  public:
    explicit StarClassSystem(const BalancedPartition& partition) : partition_(partition) {
        for (size_t i = 0; i < partition_.words.size(); ++i)
            index_[partition_.words[i]] = (int)i;
    }

    int class_of(const Row& w) override {
        auto it = index_.find(w);
        if (it == index_.end()) throw internal_error("word outside the balanced universe");
        return partition_.class_of[(size_t)it->second];
    }

    std::vector<Row> members(int cls) override {
        std::vector<Row> out;
        for (int idx : partition_.classes[(size_t)cls]) out.push_back(partition_.words[(size_t)idx]);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<int> seed_class_ids() override {
        std::vector<int> ids((size_t)partition_.classes.size());
        std::iota(ids.begin(), ids.end(), 0);
        return ids;
    }

    int discovered() const override { return (int)partition_.classes.size(); }

  private:
    BalancedPartition partition_;
    std::map<Row, int> index_;
};

// Classes are the fibers of the canonical-permutation map into an explicit
// previous-iteration family Y: class(w) is the lexicographically least
// permutation carrying w into Y. Disjoint by construction, and same-class
// pairs map into Y under one permutation.
class CanonicalClassSystem : public ClassSystem {
  public:
    explicit CanonicalClassSystem(std::vector<Row> y) : y_(std::move(y)) {
        if (y_.empty()) throw internal_error("canonical classes need a non-empty family");
    }

    int class_of(const Row& w) override {
        std::vector<int> best;
        for (const Row& y : y_) {
            std::vector<int> p = least_perm_to(w, y);
            if (p.empty()) continue;
            if (best.empty() || p < best) best = std::move(p);
        }
        if (best.empty()) throw internal_error("word has no permutation into the family");
        return intern(best);
    }

    std::vector<Row> members(int cls) override {
        const std::vector<int>& p = perms_[(size_t)cls];
        std::set<Row> out;
        for (const Row& y : y_) {
            Row w = scatter_perm(p, y);
            if (class_of(w) == cls) out.insert(std::move(w));
        }
        return std::vector<Row>(out.begin(), out.end());
    }

    std::vector<int> seed_class_ids() override {
        std::vector<int> ids;
        for (const Row& y : y_) ids.push_back(class_of(y));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    int discovered() const override { return (int)perms_.size(); }

  private:
    int intern(const std::vector<int>& p) {
        auto it = ids_.find(p);
        if (it != ids_.end()) return it->second;
        int id = (int)perms_.size();
        perms_.push_back(p);
        ids_[p] = id;
        return id;
    }

    std::vector<Row> y_;
    std::map<std::vector<int>, int> ids_;
    std::vector<std::vector<int>> perms_;
};

// Same fiber construction against the implicit set of special words, for
// universes too large to enumerate. Member listing scans a lex prefix of the
// specials, so classes are under-approximated within budget.
class SpecialFiberClassSystem : public ClassSystem {
  public:
    SpecialFiberClassSystem(PairedBlocks blocks, long long scan_cap)
        : blocks_(blocks), scan_(blocks.enumerate(std::min(scan_cap, blocks.count()))) {}

    int class_of(const Row& w) override {
        std::vector<int> p = blocks_.least_perm_to_special(w);
        if (p.empty()) throw internal_error("word has no permutation into the specials");
        return intern(p);
    }

    std::vector<Row> members(int cls) override {
        const std::vector<int>& p = perms_[(size_t)cls];
        std::set<Row> out;
        for (const Row& y : scan_) {
            Row w = scatter_perm(p, y);
            if (class_of(w) == cls) out.insert(std::move(w));
        }
        return std::vector<Row>(out.begin(), out.end());
    }

    std::vector<int> seed_class_ids() override {
        std::vector<int> ids;
        size_t take = std::min<size_t>(scan_.size(), 8);
        for (size_t i = 0; i < take; ++i) ids.push_back(class_of(scan_[i]));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    int discovered() const override { return (int)perms_.size(); }

  private:
    int intern(const std::vector<int>& p) {
        auto it = ids_.find(p);
        if (it != ids_.end()) return it->second;
        int id = (int)perms_.size();
        perms_.push_back(p);
        ids_[p] = id;
        return id;
    }

    PairedBlocks blocks_;
    std::vector<Row> scan_;
    std::map<std::vector<int>, int> ids_;
    std::vector<std::vector<int>> perms_;
};

// -------------------------------------------------------------------------
// Chain construction: words x_1 || x_2 || ... || x_n with x_{i+1} drawn from
// the stepped image of x_i's class, anchors x_1 and x_n fixed to the pair
// admitting the most chains (transfer-matrix DP over class transitions).

struct ChainBudget {
    long long class_budget;
    long long edge_budget;
    int family_cap;
    int anchor_attempts;
};

struct ChainEngine {
    ClassSystem& cs;
    std::function<Row(const Row&)> image;

    std::map<int, std::vector<std::pair<Row, int>>> edges;
    bool truncated = false;

    void expand(const ChainBudget& budget) {
        std::vector<int> queue = cs.seed_class_ids();
        std::set<int> seen(queue.begin(), queue.end());
        long long edges_used = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            if ((long long)edges.size() >= budget.class_budget) {
                truncated = true;
                break;
            }
            int a = queue[qi];
            std::vector<std::pair<Row, int>> out;
            for (const Row& w : cs.members(a)) {
                if (++edges_used > budget.edge_budget) {
                    truncated = true;
                    break;
                }
                Row x = image(w);
                int k = cs.class_of(x);
                out.emplace_back(std::move(x), k);
                if (seen.insert(k).second) queue.push_back(k);
            }
            std::sort(out.begin(), out.end());
            edges[a] = std::move(out);
            if (edges_used > budget.edge_budget) break;
        }
    }

    // levels[t][a] = number of expanded paths of length t from a to b,
    // saturating.
    std::vector<std::vector<unsigned long long>> reach_levels(int b, int steps) const {
        const unsigned long long kSat = 1ull << 62;
        const int n = cs.discovered();
        std::vector<std::vector<unsigned long long>> levels(
            (size_t)steps + 1, std::vector<unsigned long long>((size_t)n, 0));
        levels[0][(size_t)b] = 1;
        for (int t = 1; t <= steps; ++t) {
            for (const auto& [a, outs] : edges) {
                unsigned long long sum = 0;
                for (const auto& [x, k] : outs) {
                    if (k < n) sum += levels[(size_t)t - 1][(size_t)k];
                    if (sum > kSat) sum = kSat;
                }
                levels[(size_t)t][(size_t)a] = sum;
            }
        }
        return levels;
    }

    std::vector<std::vector<Row>> run(int n_blocks, const ChainBudget& budget) {
        expand(budget);
        const int steps = n_blocks - 2;

        struct Anchor {
            unsigned long long count;
            int c1, b;
        };
        std::vector<Anchor> ranked;
        const int ids = cs.discovered();
        for (int b = 0; b < ids; ++b) {
            auto levels = reach_levels(b, steps);
            for (int c1 = 0; c1 < ids; ++c1)
                if (levels[(size_t)steps][(size_t)c1] > 0)
                    ranked.push_back({levels[(size_t)steps][(size_t)c1], c1, b});
        }
        std::sort(ranked.begin(), ranked.end(), [](const Anchor& a, const Anchor& b) {
            if (a.count != b.count) return a.count > b.count;
            if (a.c1 != b.c1) return a.c1 < b.c1;
            return a.b < b.b;
        });
        if (ranked.size() > (size_t)budget.anchor_attempts)
            ranked.resize((size_t)budget.anchor_attempts);

        for (const Anchor& anchor : ranked) {
            auto c1_members = cs.members(anchor.c1);
            auto b_members = cs.members(anchor.b);
            if (c1_members.empty() || b_members.empty()) continue;
            Row x1 = c1_members.front();
            Row xn = image(b_members.front());

            auto levels = reach_levels(anchor.b, steps);
            std::vector<std::vector<Row>> rows;
            std::vector<Row> mids;
            auto dfs = [&](auto&& self, int a, int t) -> void {
                if ((int)rows.size() >= budget.family_cap) return;
                if (t == 0) {
                    if (a == anchor.b) {
                        std::vector<Row> chain;
                        chain.push_back(x1);
                        for (const Row& m : mids) chain.push_back(m);
                        chain.push_back(xn);
                        rows.push_back(std::move(chain));
                    }
                    return;
                }
                auto it = edges.find(a);
                if (it == edges.end()) return;
                for (const auto& [x, k] : it->second) {
                    if (k >= (int)levels[(size_t)t - 1].size() ||
                        levels[(size_t)t - 1][(size_t)k] == 0)
                        continue;
                    mids.push_back(x);
                    self(self, k, t - 1);
                    mids.pop_back();
                    if ((int)rows.size() >= budget.family_cap) return;
                }
            };
            dfs(dfs, anchor.c1, steps);
            if (!rows.empty()) return rows;
        }
        throw resource_error("AnchorTooSparse: no anchor pair admits a chain within budget");
    }
};

Row prime_image(const Row& w, int beta, int s) {
    Row out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[i] = (Symbol)((long long)w[i] * beta % s);
    return out;
}

Row table_image(const Row& w, const std::vector<int>& table) {
    Row out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[i] = table[(size_t)(w[i] - 1)];
    return out;
}

std::vector<Row> rows_from_chains(const std::vector<std::vector<Row>>& chains) {
    std::vector<Row> rows;
    for (const auto& chain : chains) {
        Row row;
        for (const Row& block : chain) row.insert(row.end(), block.begin(), block.end());
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace

std::vector<std::vector<Symbol>> enumerate_uniform_words(int letters, int copies,
                                                         long long cap) {
    if (letters < 1 || copies < 1) throw input_error("enumerate_uniform_words: bad shape");
    long long count = uniform_word_count(letters, copies, cap);
    if (count > cap)
        throw resource_error("uniform word universe exceeds cap " + std::to_string(cap));
    Row word;
    for (int l = 1; l <= letters; ++l) word.insert(word.end(), (size_t)copies, (Symbol)l);
    std::vector<Row> out;
    out.reserve((size_t)count);
    do {
        out.push_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

Family special_balanced_words(const BalancedWordSpec& spec, long long cell_cap) {
    PairedBlocks blocks{spec.blocks(), spec.copies()};
    long long count = blocks.count();
    if (count * spec.q > cell_cap)
        throw resource_error("special balanced family exceeds cell cap");
    std::vector<Row> rows = blocks.enumerate(count);
    return Family(Alphabet::mod_ring(spec.s), spec.q, std::move(rows),
                  "special-balanced(s=" + std::to_string(spec.s) +
                      ",q=" + std::to_string(spec.q) + ")");
}

BipartiteGraph balanced_word_graph(const BalancedWordSpec& spec,
                                   std::vector<std::vector<Symbol>>* words_out,
                                   long long perm_cap, long long word_cap) {
    std::vector<Row> words = enumerate_uniform_words(spec.s - 1, spec.copies(), word_cap);
    long long nperms = 1;
    for (int i = 2; i <= spec.q; ++i) {
        nperms *= i;
        if (nperms > perm_cap)
            throw resource_error("q! exceeds the explicit permutation cap");
    }
    PairedBlocks blocks{spec.blocks(), spec.copies()};
    std::vector<Row> specials = blocks.enumerate(blocks.count());

    std::map<Row, int> index;
    for (size_t i = 0; i < words.size(); ++i) index[words[i]] = (int)i;

    std::vector<int> perm((size_t)spec.q);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> adjacency;
    adjacency.reserve((size_t)nperms);
    do {
        std::vector<int> nbrs;
        nbrs.reserve(specials.size());
        for (const Row& y : specials) {
            auto it = index.find(scatter_perm(perm, y));
            if (it == index.end()) throw internal_error("special preimage not balanced");
            nbrs.push_back(it->second);
        }
        std::sort(nbrs.begin(), nbrs.end());
        adjacency.push_back(std::move(nbrs));
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (words_out) *words_out = words;
    return BipartiteGraph((int)adjacency.size(), (int)words.size(), std::move(adjacency));
}

BalancedPartition partition_balanced_words(const BalancedWordSpec& spec, uint64_t seed,
                                           int star_retries, long long perm_cap,
                                           long long word_cap) {
    BalancedPartition out;
    BipartiteGraph graph = balanced_word_graph(spec, &out.words, perm_cap, word_cap);
    StarForest forest = decompose(graph, seed, star_retries);

    // Recover each center's permutation by walking the same lex enumeration.
    std::map<int, int> center_to_class;
    for (int c : forest.centers) center_to_class[c] = (int)center_to_class.size();

    std::vector<std::vector<int>> center_perms((size_t)center_to_class.size());
    std::vector<int> perm((size_t)spec.q);
    std::iota(perm.begin(), perm.end(), 0);
    int pi = 0;
    do {
        auto it = center_to_class.find(pi);
        if (it != center_to_class.end()) center_perms[(size_t)it->second] = perm;
        ++pi;
    } while (std::next_permutation(perm.begin(), perm.end()));

    out.class_of.assign(out.words.size(), -1);
    out.classes.assign(center_to_class.size(), {});
    out.perms = std::move(center_perms);
    for (int v = 0; v < graph.n2; ++v) {
        int cls = center_to_class.at(forest.assignment[(size_t)v]);
        out.class_of[(size_t)v] = cls;
        out.classes[(size_t)cls].push_back(v);
    }
    return out;
}

std::vector<int> step_bijection(int m, int two_s) {
    if (m < 2) throw input_error("step bijection needs m >= 2");
    if (two_s % (2 * m) != 0)
        throw input_error("2S must be divisible by 2m for the windowed bijection");
    std::vector<int> f((size_t)two_s);
    for (int x = 1; x <= two_s; ++x) {
        int window = (x - 1) / (2 * m);
        int r = (x - 1) % (2 * m) + 1;
        int value;
        if (r == 2 * m) value = 2 * m;
        else if (r % 2 == 1) value = (r + 1) / 2;
        else value = m + r / 2;
        f[(size_t)(x - 1)] = window * 2 * m + value;
    }
    return f;
}

bool crucial_pair_property(const Family& family) {
    for (int i = 0; i < family.size(); ++i)
        for (int j = 0; j < family.size(); ++j) {
            if (i == j) continue;
            bool found = false;
            for (int c = 0; c < family.q && !found; ++c) {
                Symbol u = family.rows[(size_t)i][(size_t)c];
                Symbol v = family.rows[(size_t)j][(size_t)c];
                if (u % 2 == 0 && u == v + 1) found = true;
            }
            if (!found) return false;
        }
    return true;
}

Family band_to_mod_family(const Family& band_family, int s) {
    auto reduced = reduce_mod(band_family, s);
    for (auto& row : reduced) row.push_back(0);
    try {
        return Family(Alphabet::mod_ring(s), band_family.q + 1, std::move(reduced),
                      band_family.provenance + "+mod" + std::to_string(s));
    } catch (const Error&) {
        throw verification_error("band family collapsed to duplicate rows mod " +
                                 std::to_string(s));
    }
}

ChainResult iterate_chain(const ChainParams& params) {
    const int s = params.s;
    if (s < 3 || !is_prime(s)) throw input_error("iterate_chain needs an odd prime s >= 3");
    if (params.n < 2) throw input_error("chains need n >= 2 blocks");
    if (params.iterations < 1) throw input_error("iterations must be >= 1");
    BalancedWordSpec spec(s, params.q);
    int alpha = params.alpha == 0 ? smallest_primitive_root(s) : params.alpha;
    {
        // verify the primitive-root requirement
        int order = 1;
        long long x = alpha % s;
        if (x <= 1) throw input_error("alpha must be a primitive root mod s");
        long long y = x;
        while (y != 1) {
            y = y * x % s;
            ++order;
        }
        if (order != s - 1)
            throw input_error(std::to_string(alpha) + " is not a primitive root mod " +
                              std::to_string(s));
    }

    ChainBudget budget{params.class_budget, params.edge_budget, params.family_cap,
                       params.anchor_attempts};
    std::vector<Row> y_rows;
    std::vector<ChainIterationReport> reports;
    Alphabet alphabet = Alphabet::mod_ring(s);
    int length = params.q;
    long long beta = 1;

    std::optional<Family> out;
    for (int t = 1; t <= params.iterations; ++t) {
        // step multiplier alpha^(2^(t-1))
        if (t == 1) {
            beta = alpha % s;
        } else {
            beta = beta * beta % s;
        }

        std::unique_ptr<ClassSystem> cs;
        if (t == 1) {
            BalancedPartition partition =
                partition_balanced_words(spec, params.seed, params.star_retries,
                                         params.perm_cap, params.word_cap);
            cs = std::make_unique<StarClassSystem>(partition);
        } else {
            cs = std::make_unique<CanonicalClassSystem>(y_rows);
        }

        const int step_mult = (int)beta;
        ChainEngine engine{*cs, [step_mult, s](const Row& w) { return prime_image(w, step_mult, s); }};
        auto chains = engine.run(params.n, budget);
        auto rows = rows_from_chains(chains);
        length *= params.n;

        Family family(alphabet, length, rows,
                      "amplify(s=" + std::to_string(s) + ",alpha=" + std::to_string(alpha) +
                          ",q=" + std::to_string(params.q) + ",n=" + std::to_string(params.n) +
                          ",t=" + std::to_string(t) + ",seed=" + std::to_string(params.seed) + ")");
        CoverTarget target = CoverTarget::signed_powers(s, alpha, t);
        VerifyReport verify = family_is_covering(family, target);
        if (!verify)
            throw internal_error("chain family failed the iteration-" + std::to_string(t) +
                                 " target " + target.describe());
        reports.push_back({t, length, (long long)family.size(), true, true});
        y_rows = family.rows;
        out = std::move(family);
    }
    return ChainResult{std::move(*out), std::move(reports)};
}

ChainResult composite_chain(const CompositeChainParams& params) {
    const int s = params.s;
    if (s < 2) throw input_error("composite_chain needs s >= 2");
    if (params.n < 2) throw input_error("chains need n >= 2 blocks");
    long long big_s = 1;
    for (int i = 2; i <= s; ++i) big_s = std::lcm(big_s, (long long)i);
    const int two_s = (int)(2 * big_s);
    if (params.q < two_s || params.q % two_s != 0)
        throw input_error("q must be a positive multiple of 2*lcm(1..s) = " +
                          std::to_string(two_s));
    const int copies = params.q / two_s;

    PairedBlocks blocks{(int)big_s, copies};
    Alphabet band = Alphabet::integer_band(1, two_s);
    Alphabet diff_band = band.difference_alphabet();
    ChainBudget budget{params.class_budget, params.edge_budget, params.family_cap,
                       params.anchor_attempts};

    std::vector<ChainIterationReport> reports;
    long long special_count = blocks.count();
    bool explicit_specials = special_count <= params.special_cap;

    // Step 1: the paired-block specials cover {+-1} and establish the
    // even/odd crucial property.
    std::vector<Row> y_rows;
    if (explicit_specials) {
        y_rows = blocks.enumerate(special_count);
        Family step1(band, params.q, y_rows, "composite-specials(s=" + std::to_string(s) + ")");
        CoverTarget t1 = CoverTarget::of_symbols(diff_band, {1, -1});
        bool ok = (bool)family_is_covering(step1, t1);
        bool crucial = crucial_pair_property(step1);
        if (!ok || !crucial)
            throw internal_error("composite specials failed their step-1 property");
        reports.push_back({1, params.q, special_count, ok, crucial});
    } else {
        reports.push_back({1, params.q, special_count, false, false}); // too large to replay
    }

    int length = params.q;
    std::optional<Family> out;
    for (int m = 2; m <= s; ++m) {
        std::vector<int> f = step_bijection(m, two_s);

        std::unique_ptr<ClassSystem> cs;
        if (m == 2) {
            // star route when the explicit graph fits, fiber route otherwise
            long long nperms = 1;
            bool perms_ok = true;
            for (int i = 2; i <= length; ++i) {
                nperms *= i;
                if (nperms > params.perm_cap) {
                    perms_ok = false;
                    break;
                }
            }
            long long universe = uniform_word_count(two_s, copies, params.word_cap);
            if (perms_ok && universe <= params.word_cap && explicit_specials) {
                auto words = enumerate_uniform_words(two_s, copies, params.word_cap);
                std::map<Row, int> index;
                for (size_t i = 0; i < words.size(); ++i) index[words[i]] = (int)i;
                std::vector<int> perm((size_t)length);
                std::iota(perm.begin(), perm.end(), 0);
                std::vector<std::vector<int>> adjacency;
                do {
                    std::vector<int> nbrs;
                    for (const Row& y : y_rows) nbrs.push_back(index.at(scatter_perm(perm, y)));
                    std::sort(nbrs.begin(), nbrs.end());
                    adjacency.push_back(std::move(nbrs));
                } while (std::next_permutation(perm.begin(), perm.end()));
                BipartiteGraph graph((int)adjacency.size(), (int)words.size(),
                                     std::move(adjacency));
                StarForest forest = decompose(graph, params.seed, params.star_retries);
                BalancedPartition partition;
                partition.words = words;
                std::map<int, int> center_to_class;
                for (int c : forest.centers) center_to_class[c] = (int)center_to_class.size();
                partition.classes.assign(center_to_class.size(), {});
                partition.perms.assign(center_to_class.size(), {});
                std::vector<int> perm2((size_t)length);
                std::iota(perm2.begin(), perm2.end(), 0);
                int pi = 0;
                do {
                    auto it = center_to_class.find(pi);
                    if (it != center_to_class.end()) partition.perms[(size_t)it->second] = perm2;
                    ++pi;
                } while (std::next_permutation(perm2.begin(), perm2.end()));
                partition.class_of.assign(words.size(), -1);
                for (int v = 0; v < graph.n2; ++v) {
                    int cls = center_to_class.at(forest.assignment[(size_t)v]);
                    partition.class_of[(size_t)v] = cls;
                    partition.classes[(size_t)cls].push_back(v);
                }
                cs = std::make_unique<StarClassSystem>(partition);
            } else {
                cs = std::make_unique<SpecialFiberClassSystem>(blocks, /*scan cap*/ 512);
            }
        } else {
            cs = std::make_unique<CanonicalClassSystem>(y_rows);
        }

        ChainEngine engine{*cs, [&f](const Row& w) { return table_image(w, f); }};
        auto chains = engine.run(params.n, budget);
        auto rows = rows_from_chains(chains);
        length *= params.n;

        Family family(band, length, rows,
                      "amplify-composite(s=" + std::to_string(s) + ",q=" +
                          std::to_string(params.q) + ",n=" + std::to_string(params.n) +
                          ",m=" + std::to_string(m) + ",seed=" + std::to_string(params.seed) + ")");
        std::vector<Symbol> target_syms;
        for (int v = 1; v <= m; ++v) {
            target_syms.push_back(v);
            target_syms.push_back(-v);
        }
        CoverTarget target = CoverTarget::of_symbols(diff_band, target_syms);
        VerifyReport verify = family_is_covering(family, target);
        bool crucial = crucial_pair_property(family);
        if (!verify || !crucial)
            throw internal_error("composite chain failed its step-" + std::to_string(m) +
                                 " property");
        reports.push_back({m, length, (long long)family.size(), true, crucial});
        y_rows = family.rows;
        out = std::move(family);
    }
    return ChainResult{std::move(*out), std::move(reports)};
}

} // namespace coverfam
