#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverfam/errors.hpp"

namespace coverfam {

using Symbol = int;

// Alphabet of word entries: either the ring Z_s or a bounded integer band.
// Subtraction in ModRing is mod s; in IntegerBand it is exact (band arithmetic
// is only used by the integer-alphabet chain construction).
class Alphabet {
  public:
    enum class Kind { ModRing, IntegerBand };

    static Alphabet mod_ring(int s) {
        if (s < 2) throw input_error("ModRing modulus must be >= 2, got " + std::to_string(s));
        Alphabet a;
        a.kind_ = Kind::ModRing;
        a.s_ = s;
        return a;
    }

    static Alphabet integer_band(int lo, int hi) {
        if (lo > hi) throw input_error("IntegerBand requires lo <= hi");
        Alphabet a;
        a.kind_ = Kind::IntegerBand;
        a.lo_ = lo;
        a.hi_ = hi;
        return a;
    }

    Kind kind() const { return kind_; }
    bool is_mod_ring() const { return kind_ == Kind::ModRing; }
    int modulus() const {
        if (!is_mod_ring()) throw internal_error("modulus() on a band alphabet");
        return s_;
    }
    int lo() const { return is_mod_ring() ? 0 : lo_; }
    int hi() const { return is_mod_ring() ? s_ - 1 : hi_; }
    long long size() const { return (long long)hi() - lo() + 1; }

    bool valid_symbol(Symbol x) const { return x >= lo() && x <= hi(); }

    // Canonical representative: residues land in [0, s); band symbols are
    // range-checked and passed through.
    Symbol canonical(long long x) const {
        if (is_mod_ring()) {
            long long r = x % s_;
            if (r < 0) r += s_;
            return (Symbol)r;
        }
        if (x < lo_ || x > hi_)
            throw input_error("symbol " + std::to_string(x) + " outside band [" +
                              std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
        return (Symbol)x;
    }

    Symbol subtract(Symbol a, Symbol b) const {
        if (is_mod_ring()) {
            int r = a - b;
            if (r < 0) r += s_;
            return r;
        }
        return a - b;
    }

    // Alphabet that holds all possible differences of two symbols.
    Alphabet difference_alphabet() const {
        if (is_mod_ring()) return *this;
        return integer_band(lo_ - hi_, hi_ - lo_);
    }

    bool operator==(const Alphabet& o) const {
        if (kind_ != o.kind_) return false;
        return is_mod_ring() ? s_ == o.s_ : (lo_ == o.lo_ && hi_ == o.hi_);
    }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

    std::string describe() const {
        if (is_mod_ring()) return "Z_" + std::to_string(s_);
        return "[" + std::to_string(lo_) + ".." + std::to_string(hi_) + "]";
    }

  private:
    Alphabet() = default;
    Kind kind_ = Kind::ModRing;
    int s_ = 2;
    int lo_ = 0, hi_ = 0;
};

// A length-q vector over an alphabet.
struct Word {
    Alphabet alphabet;
    std::vector<Symbol> entries;

    Word(Alphabet a, std::vector<Symbol> e) : alphabet(a), entries(std::move(e)) {
        for (Symbol x : entries)
            if (!alphabet.valid_symbol(x))
                throw input_error("word entry " + std::to_string(x) + " invalid for " +
                                  alphabet.describe());
    }

    int length() const { return (int)entries.size(); }

    bool operator==(const Word& o) const {
        return alphabet == o.alphabet && entries == o.entries;
    }
    bool operator<(const Word& o) const { return entries < o.entries; }
};

// The subset of symbols a difference word must exhibit.
struct CoverTarget {
    Alphabet alphabet;            // alphabet of difference entries
    std::vector<Symbol> symbols;  // sorted, deduplicated, canonical

    CoverTarget(Alphabet a, std::vector<Symbol> syms);

    int size() const { return (int)symbols.size(); }

    // Named constructors.
    static CoverTarget full(int s);                              // all of Z_s
    static CoverTarget zero_one(int s);                          // {0, 1}
    static CoverTarget units(int s);                             // Z_s \ {0}
    static CoverTarget signed_powers(int s, int alpha, int t);   // {+-alpha^b : 0 <= b < 2^t}
    static CoverTarget integer_band(int s);                      // [-s, s] as a set, band alphabet
    static CoverTarget of_symbols(Alphabet a, std::vector<Symbol> syms); // custom set

    std::string describe() const;
};

// Fast membership index for a target: maps a difference symbol to its bit
// position, or -1. Bit masks are single machine words for targets up to 64
// symbols and word arrays beyond that.
class TargetIndex {
  public:
    explicit TargetIndex(const CoverTarget& target);

    int bit_of(Symbol x) const {
        long long i = (long long)x - base_;
        if (i < 0 || i >= (long long)lut_.size()) return -1;
        return lut_[(size_t)i];
    }
    int bits() const { return bits_; }
    bool single_word() const { return bits_ <= 64; }
    uint64_t full_mask() const { return bits_ >= 64 ? ~0ull : ((1ull << bits_) - 1); }

  private:
    int base_ = 0;
    int bits_ = 0;
    std::vector<int16_t> lut_;
};

} // namespace coverfam
