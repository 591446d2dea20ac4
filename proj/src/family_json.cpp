#include "coverfam/family_json.hpp"

#include <fstream>

namespace coverfam {

using nlohmann::json;

json family_to_json(const Family& family) {
    json j;
    if (family.alphabet.is_mod_ring()) {
        j["alphabet"] = {{"mod", family.alphabet.modulus()}};
    } else {
        j["alphabet"] = {{"band", {family.alphabet.lo(), family.alphabet.hi()}}};
    }
    j["q"] = family.q;
    j["rows"] = family.rows;
    if (!family.provenance.empty()) j["provenance"] = family.provenance;
    return j;
}

Family family_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("alphabet") || !j.contains("q") || !j.contains("rows"))
            throw input_error("family json needs alphabet, q, rows");
        const json& ja = j.at("alphabet");
        Alphabet alpha = Alphabet::mod_ring(2);
        if (ja.contains("mod")) {
            alpha = Alphabet::mod_ring(ja.at("mod").get<int>());
        } else if (ja.contains("band")) {
            auto band = ja.at("band");
            if (!band.is_array() || band.size() != 2) throw input_error("band must be [lo, hi]");
            alpha = Alphabet::integer_band(band[0].get<int>(), band[1].get<int>());
        } else {
            throw input_error("alphabet must have 'mod' or 'band'");
        }
        int q = j.at("q").get<int>();
        auto rows = j.at("rows").get<std::vector<std::vector<Symbol>>>();
        std::string prov = j.value("provenance", std::string());
        return Family(alpha, q, std::move(rows), std::move(prov));
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed family json: ") + e.what());
    }
}

Family load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open family file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("cannot parse " + path + ": " + e.what());
    }
    return family_from_json(j);
}

void save_family_file(const Family& family, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write family file: " + path);
    out << family_to_json(family).dump(2) << "\n";
}

} // namespace coverfam
