#ifndef CONFSPACE_RING_JSON_HPP
#define CONFSPACE_RING_JSON_HPP

#include "confspace/errors.hpp"
#include "confspace/graded_ring.hpp"
#include "confspace/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <string>

namespace confspace {

// Ring documents look like
//
//   { "dimension": 2,
//     "basis": [ {"name": "1", "degree": 0}, {"name": "x", "degree": 2} ],
//     "products": [ {"left": "x", "right": "1", "result": [ {"basis": "x", "coeff": "1"} ]} ],
//     "top": "x" }
//
// Optional "name" sets the ring id. Coefficients are integers or "p/q" strings.
// Products with the unit may be omitted (the unit acts as identity), and when only one
// of (a, b), (b, a) is listed the other is filled in by graded commutativity. Every
// other omitted product is zero.

namespace detail {

inline Rational json_rational(const nlohmann::json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(Integer(std::to_string(j.get<long long>()), 10));
    if (j.is_string())
        if (auto q = parse_rational(j.get<std::string>()))
            return *q;
    throw RingFormatError(where + ": coefficient must be an integer or a \"p/q\" string, got " + j.dump());
}

inline const nlohmann::json& json_field(const nlohmann::json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw RingFormatError(where + ": missing field \"" + key + "\"");
    return obj.at(key);
}

} // namespace detail

inline RingPresentation ring_from_json(const nlohmann::json& doc)
{
    using detail::json_field;
    if (!doc.is_object())
        throw RingFormatError("ring document must be a JSON object");

    RingPresentation r;
    r.id = doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>() : "custom";

    const auto& dim = json_field(doc, "dimension", "ring");
    if (!dim.is_number_integer())
        throw RingFormatError("ring: \"dimension\" must be an integer");
    r.manifold_dimension = dim.get<int>();

    const auto& basis = json_field(doc, "basis", "ring");
    if (!basis.is_array() || basis.empty())
        throw RingFormatError("ring: \"basis\" must be a nonempty array");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string where = "basis[" + std::to_string(i) + "]";
        const auto& nm = json_field(basis[i], "name", where);
        const auto& dg = json_field(basis[i], "degree", where);
        if (!nm.is_string())
            throw RingFormatError(where + ": \"name\" must be a string");
        if (!dg.is_number_integer())
            throw RingFormatError(where + ": \"degree\" must be an integer");
        const auto name = nm.get<std::string>();
        if (!index.emplace(name, i).second)
            throw RingFormatError(where + ": duplicate basis name '" + name + "'");
        r.basis_names.push_back(name);
        r.degrees.push_back(dg.get<int>());
    }
    auto lookup = [&](const nlohmann::json& j, const std::string& where) {
        if (!j.is_string())
            throw RingFormatError(where + ": basis reference must be a string");
        auto it = index.find(j.get<std::string>());
        if (it == index.end())
            throw RingFormatError(where + ": unknown basis element '" + j.get<std::string>() + "'");
        return it->second;
    };

    r.top_index = lookup(json_field(doc, "top", "ring"), "top");

    std::size_t unit = r.size();
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r.degrees[i] == 0) {
            unit = i;
            break;
        }
    r.unit_index = unit == r.size() ? 0 : unit;

    std::set<std::pair<std::size_t, std::size_t>> given;
    if (doc.contains("products")) {
        const auto& products = doc.at("products");
        if (!products.is_array())
            throw RingFormatError("ring: \"products\" must be an array");
        for (std::size_t p = 0; p < products.size(); ++p) {
            const std::string where = "products[" + std::to_string(p) + "]";
            const std::size_t a = lookup(json_field(products[p], "left", where), where + ".left");
            const std::size_t b = lookup(json_field(products[p], "right", where), where + ".right");
            if (!given.emplace(a, b).second)
                throw RingFormatError(where + ": product " + r.basis_names[a] + "*" + r.basis_names[b] +
                                      " listed twice");
            const auto& result = json_field(products[p], "result", where);
            if (!result.is_array())
                throw RingFormatError(where + ": \"result\" must be an array");
            auto& terms = r.structure_constants[{a, b}];
            for (std::size_t t = 0; t < result.size(); ++t) {
                const std::string tw = where + ".result[" + std::to_string(t) + "]";
                const std::size_t l = lookup(json_field(result[t], "basis", tw), tw + ".basis");
                terms.push_back({l, detail::json_rational(json_field(result[t], "coeff", tw), tw + ".coeff")});
            }
        }
    }

    // Mirror products by graded commutativity.
    for (const auto& [a, b] : given)
        if (!given.contains({b, a})) {
            const bool odd = (r.degrees[a] * r.degrees[b]) % 2 != 0;
            auto terms = r.structure_constants.at({a, b});
            for (auto& t : terms)
                if (odd)
                    t.coeff = -t.coeff;
            r.structure_constants[{b, a}] = std::move(terms);
        }
    if (unit < r.size())
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (!given.contains({unit, j}) && !given.contains({j, unit})) {
                r.structure_constants[{unit, j}] = {ProductTerm{j, Rational(1)}};
                r.structure_constants[{j, unit}] = {ProductTerm{j, Rational(1)}};
            }
        }
    return r;
}

inline RingPresentation ring_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw RingFormatError("cannot open ring file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw RingFormatError("ring file '" + path + "' is not valid JSON: " + e.what());
    }
    return ring_from_json(doc);
}

inline nlohmann::ordered_json ring_to_json(const RingPresentation& r)
{
    nlohmann::ordered_json doc;
    doc["name"] = r.id;
    doc["dimension"] = r.manifold_dimension;
    doc["basis"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.size(); ++i)
        doc["basis"].push_back({{"name", r.basis_names[i]}, {"degree", r.degrees[i]}});
    doc["products"] = nlohmann::ordered_json::array();
    for (const auto& [ab, terms] : r.structure_constants) {
        nlohmann::ordered_json result = nlohmann::ordered_json::array();
        for (const auto& t : terms)
            result.push_back({{"basis", r.basis_names.at(t.basis)}, {"coeff", to_string(t.coeff)}});
        doc["products"].push_back(
            {{"left", r.basis_names.at(ab.first)}, {"right", r.basis_names.at(ab.second)}, {"result", result}});
    }
    doc["top"] = r.basis_names.at(r.top_index);
    return doc;
}

inline nlohmann::ordered_json diagnostics_to_json(const RingDiagnostics& d)
{
    nlohmann::ordered_json doc;
    doc["valid"] = d.valid();
    doc["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : d.violations)
        doc["violations"].push_back({{"rule", v.rule}, {"indices", v.indices}, {"message", v.message}});
    return doc;
}

} // namespace confspace

#endif // CONFSPACE_RING_JSON_HPP
