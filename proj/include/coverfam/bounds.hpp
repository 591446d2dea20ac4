#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coverfam/family.hpp"
#include "coverfam/product_dim.hpp"

namespace coverfam {

enum class Provenance {
    Trivial_q_lt_s,
    Binary,
    Cyclic,
    Ternary,
    Concat,
    Search,
    PaperZ15,
    Amplify,
    Pow2,
    PropR_ss,
    EvenR_ss,
    Quadratic,
    HammingEven,
};

std::string provenance_name(Provenance p);
std::optional<Provenance> provenance_from_name(const std::string& name);

struct Bound {
    unsigned long long value = 0;
    Provenance provenance;
};

struct BoundReport {
    int s = 0, q = 0;
    Bound lower, upper;
    bool exact() const { return lower.value == upper.value; }
};

// Provenance-tagged table entries used by lower_bounds and bound_report.
struct CertifiedLower {
    int s = 0;
    int q = 0;
    unsigned long long value = 0;
    Provenance provenance = Provenance::Search;
};

// All applicable closed-form upper bounds at (s, q):
//   q < s            -> 1
//   q >= s           -> 2^(q-1)
//   q = s            -> s
//   q = s, s even    -> 2
//   2(q-s)^2 < s-1   -> s + 2(q-s) + 2(q-s)^2
//   s even           -> floor(2^q / V(q, floor((s-1)/4)))
// 2^q terms are emitted only while they fit 64 bits.
std::vector<Bound> upper_bounds(int s, int q);

// Best of construction sizes, table certificates padded up by monotonicity,
// and supermultiplicative combinations over q-splits. Floor is 1.
std::vector<Bound> lower_bounds(int s, int q, const std::vector<CertifiedLower>& table = {});

BoundReport bound_report(int s, int q, const std::vector<CertifiedLower>& table = {});

// For even s: every pair of mod-2-reduced rows of a covering family must be
// at Hamming distance >= s/2.
bool parity_distance_check(const Family& family);
int min_parity_distance(const Family& family);

// Hamming ball volume V(q, t) = sum_{i<=t} C(q, i).
unsigned long long hamming_ball_volume(int q, int t);

// The 2m x 2m evaluation certificate behind the 2^(q-1) bound: polynomials
// P_i = prod(x_j - v_ij), Q_i = prod(x_j - v_ij - 1) over Z_p evaluated at
// the points v_i and v_i + J, structurally checked and then eliminated.
struct PolyCertificate {
    int prime = 2;
    int m = 0;
    std::vector<std::vector<int>> matrix; // 2m x 2m over Z_p
    bool nonsingular = false;
};

// Throws Verification with a structural report when the family is not
// {0,1}-covering over Z_p.
PolyCertificate polynomial_certificate(const Family& family, int p);

// CSV grid of bound reports; columns s, q, lower, lower_prov, upper,
// upper_prov, exact?. Cells whose upper/lower ratio exceeds gap_ratio are
// listed separately by the CLI as conjecture territory.
std::string bounds_csv(int s_lo, int s_hi, int q_lo, int q_hi,
                       const std::vector<CertifiedLower>& table = {});

} // namespace coverfam
