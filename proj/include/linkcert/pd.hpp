#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "linkcert/diagram.hpp"
#include "linkcert/errors.hpp"
#include "linkcert/faces.hpp"

namespace linkcert {

namespace detail {

/// Each connected piece of the 4-valent map must satisfy Euler's relation.
/// Face orbits never mix graph components, so count them per piece.
inline void validate_planarity(const Diagram& d) {
    if (d.crossing_count() == 0) return;
    const FaceSet fs = trace_faces_internal(d);
    std::vector<int> faces_per(static_cast<std::size_t>(d.graph_component_count()), 0);
    std::vector<int> crossings_per(static_cast<std::size_t>(d.graph_component_count()), 0);
    for (const auto& face : fs.faces) {
        const int g = d.crossing_graph_component(face.corners.front().first);
        ++faces_per[static_cast<std::size_t>(g)];
    }
    for (int ci = 0; ci < d.crossing_count(); ++ci)
        ++crossings_per[static_cast<std::size_t>(d.crossing_graph_component(ci))];
    for (int g = 0; g < d.graph_component_count(); ++g) {
        if (faces_per[static_cast<std::size_t>(g)] != crossings_per[static_cast<std::size_t>(g)] + 2)
            throw ValidationError("diagram is not planar (Euler count fails)");
    }
}

struct PdLexer {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c)
            throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(i));
        ++i;
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    int number() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected a positive integer at offset " + std::to_string(start));
        return std::stoi(std::string(s.substr(start, i - start)));
    }
};

} // namespace detail

/// Parses the PD grammar: `PD[X(a,b,c,d), ...]` with positive integer edge
/// labels; disjoint circles are declared with `O` tokens, e.g. `PD[O, X(...)]`.
inline Diagram parse_pd(std::string_view text) {
    detail::PdLexer lx{text};
    lx.skip_ws();
    if (text.size() - lx.i < 2 || text.substr(lx.i, 2) != "PD")
        throw ParseError("diagram notation must start with PD");
    lx.i += 2;
    lx.expect('[');

    std::vector<std::array<EdgeId, 4>> tuples;
    int circles = 0;
    if (!lx.accept(']')) {
        while (true) {
            char c = lx.peek();
            if (c == 'X') {
                ++lx.i;
                lx.expect('(');
                std::array<EdgeId, 4> t{};
                for (int k = 0; k < 4; ++k) {
                    t[static_cast<std::size_t>(k)] = lx.number();
                    if (k < 3) lx.expect(',');
                }
                lx.expect(')');
                tuples.push_back(t);
            } else if (c == 'O') {
                ++lx.i;
                ++circles;
            } else {
                throw ParseError(std::string("expected X(...) or O, got '") + c + "'");
            }
            if (lx.accept(']')) break;
            lx.expect(',');
        }
    }
    if (!lx.eof()) throw ParseError("trailing characters after PD[...]");

    Diagram d = Diagram::build(std::move(tuples), circles, BuildMode::Strict);
    detail::validate_planarity(d);
    return d;
}

inline std::string to_pd_text(const Diagram& d) {
    std::string out = "PD[";
    bool first = true;
    for (int i = 0; i < d.circle_count(); ++i) {
        if (!first) out += ",";
        out += "O";
        first = false;
    }
    for (const Crossing& c : d.crossings()) {
        if (!first) out += ",";
        out += "X(" + std::to_string(c.edge[0]) + "," + std::to_string(c.edge[1]) + "," +
               std::to_string(c.edge[2]) + "," + std::to_string(c.edge[3]) + ")";
        first = false;
    }
    out += "]";
    return out;
}

/// Structured file form: {"circles": n, "crossings": [[a,b,c,d], ...]}.
inline Diagram parse_diagram_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON diagram: ") + e.what());
    }
    if (!j.is_object() || !j.contains("crossings"))
        throw ParseError("JSON diagram must be an object with a \"crossings\" array");
    std::vector<std::array<EdgeId, 4>> tuples;
    for (const auto& row : j["crossings"]) {
        if (!row.is_array() || row.size() != 4)
            throw ParseError("each crossing must be an array of four edge labels");
        std::array<EdgeId, 4> t{};
        for (int k = 0; k < 4; ++k) t[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k)].get<int>();
        tuples.push_back(t);
    }
    const int circles = j.value("circles", 0);
    Diagram d = Diagram::build(std::move(tuples), circles, BuildMode::Strict);
    detail::validate_planarity(d);
    return d;
}

/// Dispatches on the leading character: '{' selects the JSON schema, anything
/// else the PD text grammar.
inline Diagram parse_diagram(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_diagram_json(text);
        break;
    }
    return parse_pd(text);
}

} // namespace linkcert
