/**
 * File formats.
 *
 * Text complex format: one facet per line, labels separated by
 * whitespace; lines whose first non-blank character is '#' and blank
 * lines are ignored. JSON complex format: {"facets": [["a","b"], ...]}.
 * Both are accepted everywhere a complex is an input; the parser
 * dispatches on a leading '{'.
 *
 * Maps serialize as {"source": <complex>, "target": <complex>,
 * "assignment": {"a": "x", ...}}; chains as the shared frame plus the
 * list of assignments.
 */

#ifndef SCATKIT_IO_HPP
#define SCATKIT_IO_HPP

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scatkit/category.hpp"
#include "scatkit/complex.hpp"
#include "scatkit/graph.hpp"
#include "scatkit/maps.hpp"

namespace scatkit::io {

using nlohmann::json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline Complex parse_complex_text(std::istream& in) {
    std::vector<std::vector<std::string>> facets;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream tokens(line);
        std::vector<std::string> facet;
        std::string token;
        while (tokens >> token) facet.push_back(token);
        if (facet.empty() || facet[0][0] == '#') continue;
        facets.push_back(std::move(facet));
    }
    if (facets.empty()) throw ParseError("no facets in input");
    try {
        return Complex::from_facets(facets);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline std::string to_text(const Complex& k) { return k.canonical_text(); }

inline json to_json(const Complex& k) {
    json facets = json::array();
    for (const auto& facet : k.facet_lists()) facets.push_back(facet);
    return json{{"facets", facets}};
}

inline Complex complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("facets") || !j["facets"].is_array())
        throw ParseError("complex JSON needs a \"facets\" array");
    std::vector<std::vector<std::string>> facets;
    for (const auto& facet : j["facets"]) {
        if (!facet.is_array()) throw ParseError("each facet must be an array of labels");
        std::vector<std::string> labels;
        for (const auto& label : facet) {
            if (!label.is_string()) throw ParseError("labels must be strings");
            labels.push_back(label.get<std::string>());
        }
        facets.push_back(std::move(labels));
    }
    try {
        return Complex::from_facets(facets);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

/// Text or JSON, decided by the first non-whitespace character.
inline Complex parse_complex(const std::string& content) {
    for (char c : content) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') {
            json j;
            try {
                j = json::parse(content);
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad JSON: ") + e.what());
            }
            return complex_from_json(j);
        }
        break;
    }
    std::istringstream in(content);
    return parse_complex_text(in);
}

inline json to_json(const VertexMap& f) {
    json assignment = json::object();
    for (const auto& [from, to] : f.assignment_labels()) assignment[from] = to;
    return json{{"source", to_json(f.source())},
                {"target", to_json(f.target())},
                {"assignment", assignment}};
}

inline VertexMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
        !j.contains("assignment"))
        throw ParseError("map JSON needs \"source\", \"target\" and \"assignment\"");
    Complex source = complex_from_json(j["source"]);
    Complex target = complex_from_json(j["target"]);
    if (!j["assignment"].is_object()) throw ParseError("\"assignment\" must be an object");
    std::map<std::string, std::string> assignment;
    for (const auto& [from, to] : j["assignment"].items()) {
        if (!to.is_string()) throw ParseError("assignment images must be strings");
        assignment[from] = to.get<std::string>();
    }
    try {
        return VertexMap(std::move(source), std::move(target), assignment);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline VertexMap parse_map(const std::string& content) {
    json j;
    try {
        j = json::parse(content);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return map_from_json(j);
}

inline json to_json(const ContiguityChain& chain) {
    json assignments = json::array();
    for (const auto& m : chain.maps()) {
        json a = json::object();
        for (const auto& [from, to] : m.assignment_labels()) a[from] = to;
        assignments.push_back(std::move(a));
    }
    return json{{"source", to_json(chain.front().source())},
                {"target", to_json(chain.front().target())},
                {"assignments", assignments}};
}

inline json to_json(const Cover& cover) {
    json blocks = json::array();
    for (const auto& block : cover.blocks) {
        json facets = json::array();
        for (auto f : block) facets.push_back(cover.ambient.facet_vertices(f));
        blocks.push_back(std::move(facets));
    }
    return json{{"blocks", blocks}};
}

inline json to_json(const CatResult& r) {
    json out{{"lower", r.lower}, {"upper", r.upper}, {"exact", r.exact}};
    if (r.witness) out["witness"] = to_json(*r.witness);
    return out;
}

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::yes: return "yes";
        case Outcome::no: return "no";
        default: return "unknown";
    }
}

template <class Witness>
json decision_shell(const Decision3<Witness>& d) {
    json out{{"decision", outcome_name(d.outcome)}};
    if (d.unknown() || d.visited > 0) {
        out["visited"] = d.visited;
        out["budget"] = d.budget;
    }
    return out;
}

inline json to_json(const Decision3<CategoricalWitness>& d) {
    json out = decision_shell(d);
    if (d.witness) {
        out["vertex"] = d.witness->vertex;
        out["chain"] = to_json(d.witness->chain);
    }
    return out;
}

inline json to_json(const Decision3<ContiguityChain>& d) {
    json out = decision_shell(d);
    if (d.witness) out["chain"] = to_json(*d.witness);
    return out;
}

inline json to_json(const Decision3<WscatWitness>& d) {
    json out = decision_shell(d);
    if (d.witness) {
        out["delta"] = to_json(d.witness->delta);
        out["chain"] = to_json(d.witness->chain);
    }
    return out;
}

inline json to_json(const Decision3<ExtensionWitness>& d) {
    json out = decision_shell(d);
    if (d.witness) {
        out["extension"] = to_json(d.witness->extension);
        out["chain"] = to_json(d.witness->chain);
    }
    return out;
}

inline json to_json(const GraphView& g, const ForestDecomposition& d) {
    json forests = json::array();
    for (const auto& part : d.edge_labels(g)) {
        json edges = json::array();
        for (const auto& [u, v] : part) edges.push_back(json::array({u, v}));
        forests.push_back(std::move(edges));
    }
    return forests;
}

inline json to_json(const InequalityReport& report) {
    json lines = json::array();
    for (const auto& line : report.lines) {
        json entry{{"name", line.name},
                   {"lhs", {{"lower", line.lhs.lower}, {"upper", line.lhs.upper}, {"exact", line.lhs.exact}}},
                   {"status", line.status}};
        if (line.has_rhs)
            entry["rhs"] = {{"lower", line.rhs.lower}, {"upper", line.rhs.upper}, {"exact", line.rhs.exact}};
        if (!line.note.empty()) entry["note"] = line.note;
        lines.push_back(std::move(entry));
    }
    return json{{"lines", lines}, {"any_violated", report.any_violated}};
}

inline json to_json(const CoreResult& cr) {
    json steps = json::array();
    for (const auto& step : cr.steps)
        steps.push_back(json{{"removed", step.removed}, {"dominator", step.dominator}});
    return json{{"core", to_json(cr.complex)}, {"steps", steps}};
}

}  // namespace scatkit::io

#endif  // SCATKIT_IO_HPP
