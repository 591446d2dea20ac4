#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coverfam/alphabet.hpp"

namespace coverfam {

// An ordered r x q matrix of words sharing modulus and length. Rows are
// pairwise distinct. `provenance` records which construction produced the
// family; it is carried into certificates and ignored by comparisons.
struct Family {
    Alphabet alphabet;
    int q = 0;
    std::vector<std::vector<Symbol>> rows;
    std::string provenance;

    Family(Alphabet a, int q_, std::vector<std::vector<Symbol>> rows_,
           std::string prov = "");

    int size() const { return (int)rows.size(); }
    Word row(int i) const { return Word(alphabet, rows[i]); }

    bool same_rows(const Family& o) const { return alphabet == o.alphabet && rows == o.rows; }
};

struct VerifyReport {
    bool pass = true;
    // First offending ordered pair (i, j) and the target symbols its
    // difference never exhibits.
    std::optional<std::pair<int, int>> offending_pair;
    std::vector<Symbol> missing;

    explicit operator bool() const { return pass; }
};

// Coordinatewise u - v under the alphabet's subtraction. The result lives in
// the difference alphabet (same ring for ModRing, widened band otherwise).
Word diff(const Word& u, const Word& v);

// True iff every symbol of the target occurs among the entries of v.
bool word_covers(const Word& v, const CoverTarget& target);

// Checks all r(r-1) ordered pairs of distinct rows; early exit per pair once
// the cover mask is complete. `assume_symmetric` halves the work by checking
// unordered pairs only; it is an internal optimization and defaults to off.
VerifyReport family_is_covering(const Family& family, const CoverTarget& target,
                                bool assume_symmetric = false);

// Entrywise reduction mod m. Output may contain duplicate rows, so it is a
// plain matrix rather than a Family. ModRing input requires m | s.
std::vector<std::vector<Symbol>> reduce_mod(const Family& family, int m);

} // namespace coverfam
