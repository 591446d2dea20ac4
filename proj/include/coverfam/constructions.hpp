#pragma once

#include <map>
#include <string>

#include "coverfam/family.hpp"

namespace coverfam {

// Guards against combinatorial explosion in construction outputs.
struct ConstructionLimits {
    long long max_cells = 1ll << 24; // rows * entries
    int max_binary_q = 24;
};

struct ConstructionRecipe {
    enum class Name { Binary, Cyclic, Ternary, Concatenate, PadZeros, PaperZ15 };
    Name name;
    std::map<std::string, long long> parameters;

    std::string to_string() const;
    static ConstructionRecipe parse(const std::string& name,
                                    const std::map<std::string, long long>& params);
};

// All binary vectors of length q with first coordinate 1: 2^(q-1) words,
// Z_2-covering, the extremal family for s = 2.
Family binary_family(int q, const ConstructionLimits& limits = {});

// p words (0, a, 2a, ..., (s-1)a) mod s for 0 <= a < p, p the smallest prime
// factor of s. Z_s-covering of length s.
Family cyclic_family(int s);

// Words over {0,1} in Z_3^q with first coordinate 0 and exactly floor(q/2)
// ones; size C(q-1, floor(q/2)), Z_3-covering.
Family ternary_family(int q, const ConstructionLimits& limits = {});

// All r1*r2 concatenations v_i || w_j; covering whenever both inputs are.
Family concatenate(const Family& f1, const Family& f2,
                   const ConstructionLimits& limits = {});

// Each row extended by `extra` zeros; covering verdicts for full targets are
// preserved.
Family pad_zeros(const Family& family, int extra);

// The exact 4x15 matrix over Z_15 witnessing R(15,15) >= 4.
Family paper_z15_matrix();

// Dispatch by recipe, for the CLI `construct` subcommand.
Family construct(const ConstructionRecipe& recipe, const ConstructionLimits& limits = {});

int smallest_prime_factor(int n);
unsigned long long binomial(int n, int k);

} // namespace coverfam
