#include "leibniz/io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace leibniz {

namespace {

using Json = nlohmann::ordered_json;

std::size_t require_label(const std::vector<std::string>& labels, const std::string& name) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return i;
    throw ValidationError("unknown basis label \"" + name + "\"");
}

} // namespace

LeibnizAlgebra parse_algebra(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON at byte ") + std::to_string(e.byte) + ": " +
                         e.what());
    }

    if (!doc.is_object()) throw ValidationError("top level must be an object");
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
        throw ValidationError("missing integer field format_version");
    if (doc["format_version"].get<long>() != 1)
        throw ValidationError("unsupported format_version " + doc["format_version"].dump());
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() < 0)
        throw ValidationError("missing nonnegative integer field dim");
    if (!doc.contains("labels") || !doc["labels"].is_array())
        throw ValidationError("missing array field labels");

    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const auto& item : doc["labels"]) {
        if (!item.is_string()) throw ValidationError("labels must be strings");
        std::string s = item.get<std::string>();
        if (s.empty() || s.find(',') != std::string::npos)
            throw ValidationError("label \"" + s + "\" is empty or contains a comma");
        if (!seen.insert(s).second) throw ValidationError("duplicate label \"" + s + "\"");
        labels.push_back(std::move(s));
    }
    const std::size_t d = labels.size();
    if (doc["dim"].get<long>() != static_cast<long>(d))
        throw ValidationError("dim does not match the number of labels");

    std::vector<Rat> constants(d * d * d);
    if (doc.contains("brackets")) {
        if (!doc["brackets"].is_object()) throw ValidationError("brackets must be an object");
        for (const auto& [key, value] : doc["brackets"].items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos)
                throw ValidationError("bracket key \"" + key + "\" is not a label pair");
            std::size_t i = require_label(labels, key.substr(0, comma));
            std::size_t j = require_label(labels, key.substr(comma + 1));
            if (!value.is_array())
                throw ValidationError("bracket value for \"" + key + "\" must be an array");
            for (const auto& term : value) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_string() ||
                    !term[1].is_string())
                    throw ValidationError("bracket term in \"" + key +
                                          "\" must be a [label, rational] pair");
                std::size_t k = require_label(labels, term[0].get<std::string>());
                Rat c;
                try {
                    c = parse_rational(term[1].get<std::string>());
                } catch (const ParseError& e) {
                    throw ValidationError("bad rational in bracket \"" + key + "\": " + e.what());
                }
                constants[(i * d + j) * d + k] = c;
            }
        }
    }
    return LeibnizAlgebra(std::move(labels), std::move(constants));
}

LeibnizAlgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str());
}

std::string serialize_algebra(const LeibnizAlgebra& L) {
    const std::size_t d = L.dim();
    for (const std::string& s : L.labels())
        if (s.empty() || s.find(',') != std::string::npos)
            throw ValidationError("label \"" + s + "\" cannot be serialized");
    Json doc;
    doc["format_version"] = 1;
    doc["dim"] = d;
    doc["labels"] = L.labels();
    Json brackets = Json::object();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Json terms = Json::array();
            for (std::size_t k = 0; k < d; ++k)
                if (sgn(L.c(i, j, k)) != 0)
                    terms.push_back(Json::array({L.labels()[k], to_string(L.c(i, j, k))}));
            if (!terms.empty()) brackets[L.labels()[i] + "," + L.labels()[j]] = std::move(terms);
        }
    doc["brackets"] = std::move(brackets);
    return doc.dump(2) + "\n";
}

void save_algebra(const LeibnizAlgebra& L, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << serialize_algebra(L);
}

} // namespace leibniz
