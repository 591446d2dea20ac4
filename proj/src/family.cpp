#include "coverfam/family.hpp"

#include <algorithm>
#include <set>

namespace coverfam {

Family::Family(Alphabet a, int q_, std::vector<std::vector<Symbol>> rows_, std::string prov)
    : alphabet(a), q(q_), rows(std::move(rows_)), provenance(std::move(prov)) {
    if (q < 0) throw input_error("family length must be >= 0");
    std::set<std::vector<Symbol>> seen;
    for (const auto& r : rows) {
        if ((int)r.size() != q)
            throw input_error("family row has length " + std::to_string(r.size()) +
                              ", expected " + std::to_string(q));
        for (Symbol x : r)
            if (!alphabet.valid_symbol(x))
                throw input_error("family entry " + std::to_string(x) + " invalid for " +
                                  alphabet.describe());
        if (!seen.insert(r).second) throw input_error("family rows must be pairwise distinct");
    }
}

Word diff(const Word& u, const Word& v) {
    if (u.alphabet != v.alphabet) throw input_error("diff: alphabet mismatch");
    if (u.length() != v.length()) throw input_error("diff: length mismatch");
    const Alphabet out = u.alphabet.difference_alphabet();
    std::vector<Symbol> e(u.entries.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = u.alphabet.subtract(u.entries[i], v.entries[i]);
    return Word(out, std::move(e));
}

bool word_covers(const Word& v, const CoverTarget& target) {
    TargetIndex idx(target);
    if (idx.single_word()) {
        uint64_t mask = 0, want = idx.full_mask();
        for (Symbol x : v.entries) {
            int b = idx.bit_of(x);
            if (b >= 0) {
                mask |= 1ull << b;
                if (mask == want) return true;
            }
        }
        return mask == want;
    }
    std::set<int> hit;
    for (Symbol x : v.entries) {
        int b = idx.bit_of(x);
        if (b >= 0) hit.insert(b);
    }
    return (int)hit.size() == idx.bits();
}

namespace {

// Scans the ordered difference row_i - row_j against the index, with early
// exit once complete. Missing bits are reported for the verifier's output.
bool pair_covers(const Alphabet& alpha, const std::vector<Symbol>& ri,
                 const std::vector<Symbol>& rj, const TargetIndex& idx,
                 std::vector<int>* missing_bits) {
    const size_t q = ri.size();
    if (idx.single_word()) {
        uint64_t mask = 0;
        const uint64_t want = idx.full_mask();
        for (size_t c = 0; c < q; ++c) {
            int b = idx.bit_of(alpha.subtract(ri[c], rj[c]));
            if (b >= 0) {
                mask |= 1ull << b;
                if (mask == want) return true;
            }
        }
        if (missing_bits)
            for (int b = 0; b < idx.bits(); ++b)
                if (!(mask >> b & 1)) missing_bits->push_back(b);
        return false;
    }
    std::vector<char> hit((size_t)idx.bits(), 0);
    int count = 0;
    for (size_t c = 0; c < q; ++c) {
        int b = idx.bit_of(alpha.subtract(ri[c], rj[c]));
        if (b >= 0 && !hit[(size_t)b]) {
            hit[(size_t)b] = 1;
            if (++count == idx.bits()) return true;
        }
    }
    if (missing_bits)
        for (int b = 0; b < idx.bits(); ++b)
            if (!hit[(size_t)b]) missing_bits->push_back(b);
    return false;
}

} // namespace

VerifyReport family_is_covering(const Family& family, const CoverTarget& target,
                                bool assume_symmetric) {
    if (family.alphabet.difference_alphabet().kind() != target.alphabet.kind())
        throw input_error("verify: target alphabet kind incompatible with family");
    VerifyReport report;
    const int r = family.size();
    if (r <= 1) return report; // vacuously covering

    TargetIndex idx(target);
    for (int i = 0; i < r; ++i) {
        for (int j = assume_symmetric ? i + 1 : 0; j < r; ++j) {
            if (i == j) continue;
            std::vector<int> missing_bits;
            if (!pair_covers(family.alphabet, family.rows[(size_t)i], family.rows[(size_t)j],
                             idx, &missing_bits)) {
                report.pass = false;
                report.offending_pair = {i, j};
                for (int b : missing_bits) report.missing.push_back(target.symbols[(size_t)b]);
                return report;
            }
        }
    }
    return report;
}

std::vector<std::vector<Symbol>> reduce_mod(const Family& family, int m) {
    if (m < 2) throw input_error("reduce_mod requires m >= 2");
    if (family.alphabet.is_mod_ring() && family.alphabet.modulus() % m != 0)
        throw input_error("reduce_mod: " + std::to_string(m) + " does not divide " +
                          std::to_string(family.alphabet.modulus()));
    std::vector<std::vector<Symbol>> out(family.rows.size());
    for (size_t i = 0; i < family.rows.size(); ++i) {
        out[i].resize(family.rows[i].size());
        for (size_t c = 0; c < out[i].size(); ++c) {
            int v = family.rows[i][c] % m;
            if (v < 0) v += m;
            out[i][c] = v;
        }
    }
    return out;
}

} // namespace coverfam
