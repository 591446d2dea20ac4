#include "coverfam/alphabet.hpp"

#include <algorithm>
#include <set>

namespace coverfam {

CoverTarget::CoverTarget(Alphabet a, std::vector<Symbol> syms) : alphabet(a) {
    if (syms.empty()) throw input_error("cover target must be non-empty");
    std::set<Symbol> canon;
    for (Symbol x : syms) canon.insert(alphabet.canonical(x));
    symbols.assign(canon.begin(), canon.end());
}

CoverTarget CoverTarget::full(int s) {
    std::vector<Symbol> syms(s);
    for (int i = 0; i < s; ++i) syms[i] = i;
    return CoverTarget(Alphabet::mod_ring(s), std::move(syms));
}

CoverTarget CoverTarget::zero_one(int s) {
    return CoverTarget(Alphabet::mod_ring(s), {0, 1});
}

CoverTarget CoverTarget::units(int s) {
    std::vector<Symbol> syms;
    for (int i = 1; i < s; ++i) syms.push_back(i);
    return CoverTarget(Alphabet::mod_ring(s), std::move(syms));
}

CoverTarget CoverTarget::signed_powers(int s, int alpha, int t) {
    if (t < 0) throw input_error("signed_powers requires t >= 0");
    Alphabet a = Alphabet::mod_ring(s);
    std::vector<Symbol> syms;
    long long count = 1ll << t;
    long long pw = 1 % s;
    for (long long b = 0; b < count; ++b) {
        syms.push_back(a.canonical(pw));
        syms.push_back(a.canonical(-pw));
        pw = (pw * alpha) % s;
        if (b > 2 * s) break; // powers cycle; no need to continue
    }
    return CoverTarget(a, std::move(syms));
}

CoverTarget CoverTarget::integer_band(int s) {
    std::vector<Symbol> syms;
    for (int i = -s; i <= s; ++i) syms.push_back(i);
    return CoverTarget(Alphabet::integer_band(-s, s), std::move(syms));
}

CoverTarget CoverTarget::of_symbols(Alphabet a, std::vector<Symbol> syms) {
    return CoverTarget(a, std::move(syms));
}

std::string CoverTarget::describe() const {
    std::string out = "{";
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(symbols[i]);
    }
    return out + "} over " + alphabet.describe();
}

TargetIndex::TargetIndex(const CoverTarget& target) {
    bits_ = target.size();
    if (bits_ == 0) throw internal_error("empty target index");
    base_ = target.symbols.front();
    int span = target.symbols.back() - base_ + 1;
    lut_.assign((size_t)span, -1);
    for (int b = 0; b < bits_; ++b) lut_[(size_t)(target.symbols[(size_t)b] - base_)] = (int16_t)b;
}

} // namespace coverfam
