#pragma once

#include <cstdint>
#include <vector>

#include "coverfam/family.hpp"
#include "coverfam/stars.hpp"

namespace coverfam {

// Balanced words over Z_s^q for odd prime s: the letters 1..s-1 each occur
// exactly q/(s-1) times. Special balanced words additionally pair letters
// {2k+1, 2k+2} within consecutive blocks of length 2q/(s-1).
struct BalancedWordSpec {
    int s = 3;
    int q = 4;

    BalancedWordSpec(int s_, int q_);
    int copies() const { return q / (s - 1); }     // occurrences per letter
    int blocks() const { return (s - 1) / 2; }
    int block_len() const { return 2 * copies(); }
};

struct ChainParams {
    int s = 5;
    int alpha = 0;          // 0 = smallest primitive root mod s
    int q = 8;              // base balanced length
    int n = 3;              // blocks per chain, >= 2
    int iterations = 1;     // t >= 1
    uint64_t seed = 0;

    // desk-scale budgets
    long long perm_cap = 50'000;      // largest q! for the explicit star graph
    long long word_cap = 4'000'000;   // largest enumerated word universe
    long long class_budget = 100'000; // classes explored per iteration
    long long edge_budget = 2'000'000;
    int family_cap = 4'096;
    int anchor_attempts = 16;
    int star_retries = 10;
};

struct CompositeChainParams {
    int s = 2;
    int q = 4;              // divisible by 2 * lcm(1..s)
    int n = 3;
    uint64_t seed = 0;

    long long perm_cap = 50'000;
    long long word_cap = 4'000'000;
    long long special_cap = 100'000;  // explicit specials; implicit beyond
    long long class_budget = 100'000;
    long long edge_budget = 2'000'000;
    int family_cap = 4'096;
    int anchor_attempts = 16;
    int star_retries = 10;
};

// One entry per chain iteration (prime) or per bijection step (composite).
struct ChainIterationReport {
    int index = 0;               // iteration t or step m
    int word_length = 0;
    long long family_size = 0;
    bool verified = false;       // family re-passed the cumulative target
    bool crucial = true;         // composite even/odd pair property
};

struct ChainResult {
    Family family;
    std::vector<ChainIterationReport> reports;
};

// All special balanced words; count = C(2c, c)^((s-1)/2). Every ordered
// pairwise difference covers {+1, -1}.
Family special_balanced_words(const BalancedWordSpec& spec, long long cell_cap = 1ll << 24);

// Lemma 2.1 partition: classes of balanced words, each class carrying a
// position permutation that maps every member to a special balanced word.
struct BalancedPartition {
    std::vector<std::vector<Symbol>> words;     // the balanced words, lex order
    std::vector<int> class_of;                  // word index -> class
    std::vector<std::vector<int>> classes;      // class -> word indices
    std::vector<std::vector<int>> perms;        // class -> permutation p; word w maps to (w[p[0]],...)
};

BalancedPartition partition_balanced_words(const BalancedWordSpec& spec, uint64_t seed,
                                           int star_retries = 10,
                                           long long perm_cap = 50'000,
                                           long long word_cap = 4'000'000);

// The iterated chain construction. Iteration t concatenates n balanced words
// under the transition rule x_{i+1} in alpha^(2^(t-1)) S_j for x_i in S_j,
// with the first and last blocks fixed to the anchor pair admitting the most
// chains (transfer-matrix DP, lexicographic tie-break). After t iterations
// the ordered pairwise differences cover {+-alpha^b : 0 <= b < 2^t},
// re-verified before returning.
ChainResult iterate_chain(const ChainParams& params);

// The integer-alphabet variant: words over [1, 2S], S = lcm(1..s). Step 1 is
// the paired-block special family covering {+-1}; step m applies the
// bijection f_m with f_m(2k) = f_m(2k-1) + m, adding {+-m} to the covered
// set while preserving the even/odd crucial property. The final family's
// differences cover [-s,-1] u [1,s]; reduction mod s plus a zero coordinate
// is Z_s-covering.
ChainResult composite_chain(const CompositeChainParams& params);

// The bijection f_m on [1, 2S]; table[x-1] = f_m(x).
std::vector<int> step_bijection(int m, int two_s);

// Every ordered pair has a coordinate where the first word holds an even
// value 2k and the second holds 2k-1. Vacuous for families of size < 2.
bool crucial_pair_property(const Family& family);

// Helpers shared with tests.
bool is_prime(int n);
int smallest_primitive_root(int s);
std::vector<std::vector<Symbol>> enumerate_uniform_words(int letters, int copies,
                                                         long long cap);
// Bipartite graph between permutations of q elements (A1) and balanced words
// (A2), with an edge when the permutation maps the word to a special one.
BipartiteGraph balanced_word_graph(const BalancedWordSpec& spec,
                                   std::vector<std::vector<Symbol>>* words_out = nullptr,
                                   long long perm_cap = 50'000,
                                   long long word_cap = 4'000'000);

// Reduce a band family mod s, append one zero coordinate, and rebuild as a
// Z_s family (rows stay distinct for covering inputs).
Family band_to_mod_family(const Family& band_family, int s);

} // namespace coverfam
