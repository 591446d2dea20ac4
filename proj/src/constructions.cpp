#include "coverfam/constructions.hpp"

#include <algorithm>

namespace coverfam {

int smallest_prime_factor(int n) {
    if (n < 2) throw input_error("smallest_prime_factor requires n >= 2");
    for (int d = 2; (long long)d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

unsigned long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) {
        unsigned __int128 next = (unsigned __int128)r * (unsigned long long)(n - k + i) / (unsigned)i;
        if (next > ~0ull) throw resource_error("binomial overflow");
        r = (unsigned long long)next;
    }
    return r;
}

namespace {

void check_cells(long long rows, long long q, const ConstructionLimits& limits,
                 const char* what) {
    if (rows * q > limits.max_cells)
        throw resource_error(std::string(what) + " output exceeds cell cap (" +
                             std::to_string(rows * q) + " > " +
                             std::to_string(limits.max_cells) + ")");
}

} // namespace

Family binary_family(int q, const ConstructionLimits& limits) {
    if (q < 1) throw input_error("binary_family requires q >= 1");
    if (q > limits.max_binary_q)
        throw resource_error("binary_family q=" + std::to_string(q) + " exceeds cap " +
                             std::to_string(limits.max_binary_q));
    long long count = 1ll << (q - 1);
    check_cells(count, q, limits, "binary_family");
    std::vector<std::vector<Symbol>> rows;
    rows.reserve((size_t)count);
    for (long long tail = 0; tail < count; ++tail) {
        std::vector<Symbol> row((size_t)q);
        row[0] = 1;
        for (int c = 1; c < q; ++c) row[(size_t)c] = (Symbol)(tail >> (q - 1 - c) & 1);
        rows.push_back(std::move(row));
    }
    return Family(Alphabet::mod_ring(2), q, std::move(rows), "binary(q=" + std::to_string(q) + ")");
}

Family cyclic_family(int s) {
    if (s < 2) throw input_error("cyclic_family requires s >= 2");
    int p = smallest_prime_factor(s);
    std::vector<std::vector<Symbol>> rows;
    for (int a = 0; a < p; ++a) {
        std::vector<Symbol> row((size_t)s);
        for (int c = 0; c < s; ++c) row[(size_t)c] = (Symbol)((long long)a * c % s);
        rows.push_back(std::move(row));
    }
    return Family(Alphabet::mod_ring(s), s, std::move(rows), "cyclic(s=" + std::to_string(s) + ")");
}

Family ternary_family(int q, const ConstructionLimits& limits) {
    if (q < 2) throw input_error("ternary_family requires q >= 2");
    int ones = q / 2;
    unsigned long long count = binomial(q - 1, ones);
    check_cells((long long)count, q, limits, "ternary_family");
    std::vector<std::vector<Symbol>> rows;
    rows.reserve((size_t)count);
    // Enumerate positions of the `ones` ones among coordinates 1..q-1.
    std::vector<int> pos(ones);
    for (int i = 0; i < ones; ++i) pos[(size_t)i] = i + 1;
    while (true) {
        std::vector<Symbol> row((size_t)q, 0);
        for (int p : pos) row[(size_t)p] = 1;
        rows.push_back(std::move(row));
        int i = ones - 1;
        while (i >= 0 && pos[(size_t)i] == q - 1 - (ones - 1 - i)) --i;
        if (i < 0) break;
        ++pos[(size_t)i];
        for (int k = i + 1; k < ones; ++k) pos[(size_t)k] = pos[(size_t)k - 1] + 1;
    }
    return Family(Alphabet::mod_ring(3), q, std::move(rows), "ternary(q=" + std::to_string(q) + ")");
}

Family concatenate(const Family& f1, const Family& f2, const ConstructionLimits& limits) {
    if (!f1.alphabet.is_mod_ring() || f1.alphabet != f2.alphabet)
        throw input_error("concatenate requires the same ModRing alphabet");
    long long count = (long long)f1.size() * f2.size();
    check_cells(count, f1.q + f2.q, limits, "concatenate");
    std::vector<std::vector<Symbol>> rows;
    rows.reserve((size_t)count);
    for (const auto& a : f1.rows)
        for (const auto& b : f2.rows) {
            std::vector<Symbol> row = a;
            row.insert(row.end(), b.begin(), b.end());
            rows.push_back(std::move(row));
        }
    return Family(f1.alphabet, f1.q + f2.q, std::move(rows),
                  "concat(" + f1.provenance + "," + f2.provenance + ")");
}

Family pad_zeros(const Family& family, int extra) {
    if (extra < 0) throw input_error("pad_zeros requires extra >= 0");
    if (extra == 0) return family;
    std::vector<std::vector<Symbol>> rows = family.rows;
    Symbol zero = family.alphabet.is_mod_ring() ? 0 : family.alphabet.canonical(0);
    for (auto& row : rows) row.insert(row.end(), (size_t)extra, zero);
    return Family(family.alphabet, family.q + extra, std::move(rows),
                  family.provenance.empty() ? "" : family.provenance + "+pad" + std::to_string(extra));
}

Family paper_z15_matrix() {
    std::vector<std::vector<Symbol>> rows = {
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14},
        {0, 2, 1, 5, 7, 9, 12, 14, 13, 3, 6, 4, 10, 8, 11},
        {0, 3, 9, 1, 10, 14, 7, 11, 4, 12, 5, 8, 2, 6, 13},
    };
    return Family(Alphabet::mod_ring(15), 15, std::move(rows), "paper_z15");
}

std::string ConstructionRecipe::to_string() const {
    static const char* names[] = {"binary", "cyclic", "ternary", "concatenate", "pad-zeros", "paper-z15"};
    std::string out = names[(int)name];
    out += "(";
    bool first = true;
    for (const auto& [k, v] : parameters) {
        if (!first) out += ",";
        first = false;
        out += k + "=" + std::to_string(v);
    }
    return out + ")";
}

ConstructionRecipe ConstructionRecipe::parse(const std::string& name,
                                             const std::map<std::string, long long>& params) {
    ConstructionRecipe r;
    r.parameters = params;
    auto need = [&](const char* key) {
        if (!params.count(key))
            throw input_error("recipe " + name + " requires parameter " + key);
        return params.at(key);
    };
    if (name == "binary") {
        r.name = Name::Binary;
        if (need("q") < 1) throw input_error("binary requires q >= 1");
    } else if (name == "cyclic") {
        r.name = Name::Cyclic;
        if (need("s") < 2) throw input_error("cyclic requires s >= 2");
    } else if (name == "ternary") {
        r.name = Name::Ternary;
        if (need("q") < 2) throw input_error("ternary requires q >= 2");
    } else if (name == "pad-zeros") {
        r.name = Name::PadZeros;
        if (need("extra") < 0) throw input_error("pad-zeros requires extra >= 0");
    } else if (name == "paper-z15") {
        r.name = Name::PaperZ15;
    } else if (name == "concatenate") {
        r.name = Name::Concatenate;
    } else {
        throw input_error("unknown recipe: " + name);
    }
    return r;
}

Family construct(const ConstructionRecipe& recipe, const ConstructionLimits& limits) {
    using N = ConstructionRecipe::Name;
    auto param = [&](const char* key) { return (int)recipe.parameters.at(key); };
    switch (recipe.name) {
        case N::Binary: return binary_family(param("q"), limits);
        case N::Cyclic: return cyclic_family(param("s"));
        case N::Ternary: return ternary_family(param("q"), limits);
        case N::PaperZ15: return paper_z15_matrix();
        default:
            throw input_error("recipe " + recipe.to_string() +
                              " needs family operands; use the library API");
    }
}

} // namespace coverfam
