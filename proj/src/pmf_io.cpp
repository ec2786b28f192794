#include "latllt/pmf_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "latllt/error.hpp"

namespace latllt {

namespace {

std::int64_t parse_offset(const std::string& key) {
    std::int64_t k = 0;
    const auto* first = key.data();
    const auto* last = key.data() + key.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw Error(ErrorCode::InvalidInput, "offset key '" + key + "' is not an integer");
    }
    return k;
}

double number_field(const nlohmann::json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end() || !it->is_number()) {
        throw Error(ErrorCode::InvalidInput, std::string("missing numeric field '") + name + "'");
    }
    return it->get<double>();
}

} // namespace

LatticePmf parse_pmf_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "PMF document must be an object");

    const double v0 = number_field(doc, "v0");
    const double span = number_field(doc, "D");
    const auto probs_it = doc.find("probs");
    if (probs_it == doc.end() || !probs_it->is_object()) {
        throw Error(ErrorCode::InvalidInput, "missing object field 'probs'");
    }
    std::map<std::int64_t, double> probs;
    for (const auto& [key, value] : probs_it->items()) {
        if (!value.is_number()) {
            throw Error(ErrorCode::InvalidInput, "probability for offset '" + key + "' is not a number");
        }
        if (!probs.emplace(parse_offset(key), value.get<double>()).second) {
            throw Error(ErrorCode::InvalidInput, "duplicate offset '" + key + "'");
        }
    }
    return LatticePmf(v0, span, probs);
}

LatticePmf load_pmf_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open PMF file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pmf_json(buf.str());
}

std::string to_pmf_json(const LatticePmf& pmf) {
    nlohmann::json probs = nlohmann::json::object();
    for (const auto& a : pmf.atoms()) probs[std::to_string(a.offset)] = a.mass;
    nlohmann::json doc = {{"v0", pmf.v0()}, {"D", pmf.span()}, {"probs", probs}};
    return doc.dump();
}

} // namespace latllt
