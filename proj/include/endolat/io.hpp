#pragma once

/**
 * @file io.hpp
 * @brief Problem files, JSON reports and Graphviz output.
 *
 * Problem file format (blank lines and lines starting with '#' ignored):
 *
 *     5
 *     0 1 3 4 2
 *     order: 0 2
 *     name: 0 p
 *
 * Line one is the element count, line two the 0-based images. Each
 * `order: a b` line adds a <= b to an optional base order (closed
 * reflexively and transitively); `name: i label` sets a display name.
 */

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "endolat/errors.hpp"
#include "endolat/funcgraph.hpp"
#include "endolat/lattice.hpp"
#include "endolat/order.hpp"

namespace endolat {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

struct ProblemFile {
    FunctionTable map;
    std::vector<Pair> base_pairs;
    std::vector<std::string> names;  // empty, or one per element

    std::size_t size() const noexcept { return map.size(); }

    std::string display(element x) const {
        return names.empty() || names[x].empty() ? std::to_string(x) : names[x];
    }

    bool has_base() const noexcept { return !base_pairs.empty(); }

    /// Reflexive-transitive closure of the `order:` lines.
    Relation base_order() const {
        Relation r = Relation::from_pairs(size(), base_pairs);
        r.add_reflexive();
        r = transitive_closure(std::move(r));
        if (Verdict v = check_partial_order(r); !v) {
            for (auto [a, b] : base_pairs)
                if (a != b && r(b, a))
                    throw input_error("order pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                      ") closes a cycle in the base order");
            throw input_error("base order is not a partial order: " + v.describe());
        }
        return r;
    }
};

namespace detail {

inline std::string trim(std::string const& s) {
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto const e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::size_t parse_index(std::string const& tok, std::size_t line, char const* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (tok.empty() || tok[0] == '-' || tok[0] == '+') throw std::invalid_argument(tok);
        v = std::stoull(tok, &used);
    } catch (std::exception const&) {
        throw input_error("line " + std::to_string(line) + ": " + what + " '" + tok +
                          "' is not a non-negative integer");
    }
    if (used != tok.size())
        throw input_error("line " + std::to_string(line) + ": " + what + " '" + tok +
                          "' is not a non-negative integer");
    return static_cast<std::size_t>(v);
}

inline std::vector<std::string> tokens(std::string const& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

} // namespace detail

inline ProblemFile parse_problem(std::istream& in) {
    std::optional<std::size_t> n;
    std::optional<std::vector<element>> image;
    ProblemFile prob;
    std::string raw;
    std::size_t lineno = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string const line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto const at = [&](std::string const& msg) {
            return input_error("line " + std::to_string(lineno) + ": " + msg);
        };

        if (!n) {
            auto toks = detail::tokens(line);
            if (toks.size() != 1) throw at("expected the element count alone on the first line");
            n = detail::parse_index(toks[0], lineno, "element count");
            if (*n == 0) throw at("element count must be positive");
            continue;
        }
        if (!image) {
            auto toks = detail::tokens(line);
            if (toks.size() != *n)
                throw at("expected " + std::to_string(*n) + " images, found " + std::to_string(toks.size()));
            image.emplace();
            for (auto const& t : toks) {
                std::size_t const v = detail::parse_index(t, lineno, "image");
                if (v >= *n)
                    throw at("image " + std::to_string(v) + " outside [0, " + std::to_string(*n) + ")");
                image->push_back(v);
            }
            prob.names.assign(*n, {});
            continue;
        }

        if (line.rfind("order:", 0) == 0) {
            auto toks = detail::tokens(line.substr(6));
            if (toks.size() != 2) throw at("order line needs exactly two elements");
            std::size_t const a = detail::parse_index(toks[0], lineno, "element");
            std::size_t const b = detail::parse_index(toks[1], lineno, "element");
            if (a >= *n || b >= *n)
                throw at("order pair (" + toks[0] + ", " + toks[1] + ") out of range");
            prob.base_pairs.push_back({a, b});
        } else if (line.rfind("name:", 0) == 0) {
            std::string rest = detail::trim(line.substr(5));
            auto const sp = rest.find_first_of(" \t");
            if (sp == std::string::npos) throw at("name line needs an element and a label");
            std::size_t const i = detail::parse_index(rest.substr(0, sp), lineno, "element");
            if (i >= *n) throw at("named element " + std::to_string(i) + " out of range");
            prob.names[i] = detail::trim(rest.substr(sp));
        } else {
            throw at("unrecognized line '" + line + "'");
        }
    }
    if (!n) throw input_error("empty problem file");
    if (!image) throw input_error("missing image line");
    prob.map = FunctionTable(std::move(*image));

    std::unordered_set<std::string> used;
    bool any_name = false;
    for (element x = 0; x < prob.size(); ++x) {
        if (prob.names[x].empty()) continue;
        any_name = true;
        if (!used.insert(prob.names[x]).second)
            throw input_error("display name '" + prob.names[x] + "' used twice");
    }
    if (!any_name) prob.names.clear();
    if (prob.has_base()) (void)prob.base_order();
    return prob;
}

inline ProblemFile parse_problem(std::string const& text) {
    std::istringstream in(text);
    return parse_problem(in);
}

inline std::string format_problem(ProblemFile const& p) {
    std::ostringstream out;
    out << p.size() << '\n';
    for (element x = 0; x < p.size(); ++x) out << (x ? " " : "") << p.map(x);
    out << '\n';
    for (auto [a, b] : p.base_pairs) out << "order: " << a << ' ' << b << '\n';
    for (element x = 0; x < p.names.size(); ++x)
        if (!p.names[x].empty()) out << "name: " << x << ' ' << p.names[x] << '\n';
    return out.str();
}

/// Two fixed points 0 and 1 plus the cycle 2 -> 3 -> ... -> k+1 -> 2.
inline ProblemFile cycle_with_two_fixed_points(std::size_t k) {
    if (k < 2) throw input_error("cycle length must be at least 2");
    std::vector<element> image{0, 1};
    for (std::size_t i = 0; i < k; ++i) image.push_back(i + 1 < k ? i + 3 : 2);
    ProblemFile p;
    p.map = FunctionTable(std::move(image));
    p.names = {"p", "q"};
    for (std::size_t i = 1; i <= k; ++i) p.names.push_back("x" + std::to_string(i));
    return p;
}

/// Order file: either a `construct` JSON report (uses "n" and "covers")
/// or plain text with one `a b` pair per line meaning a <= b. Either way
/// the pairs are closed reflexively and transitively.
inline Relation parse_order(std::string const& text, std::size_t n) {
    std::vector<Pair> pairs;
    std::string const body = detail::trim(text);
    if (!body.empty() && body[0] == '{') {
        json doc;
        try {
            doc = json::parse(body);
        } catch (json::exception const& e) {
            throw input_error(std::string("order file is not valid JSON: ") + e.what());
        }
        if (!doc.contains("covers") || !doc["covers"].is_array())
            throw input_error("order JSON has no \"covers\" array");
        if (doc.contains("n") && doc["n"].get<std::size_t>() != n)
            throw input_error("order JSON is for " + doc["n"].dump() + " elements, map has " +
                              std::to_string(n));
        for (auto const& c : doc["covers"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned())
                throw input_error("malformed cover entry " + c.dump());
            pairs.push_back({c[0].get<element>(), c[1].get<element>()});
        }
    } else {
        std::istringstream in(text);
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            std::string const line = detail::trim(raw);
            if (line.empty() || line[0] == '#') continue;
            auto toks = detail::tokens(line);
            if (toks.size() != 2)
                throw input_error("line " + std::to_string(lineno) + ": expected a pair 'a b'");
            pairs.push_back({detail::parse_index(toks[0], lineno, "element"),
                             detail::parse_index(toks[1], lineno, "element")});
        }
    }
    for (auto [a, b] : pairs)
        if (a >= n || b >= n)
            throw input_error("order pair (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") out of range");
    Relation r = Relation::from_pairs(n, pairs);
    r.add_reflexive();
    return transitive_closure(std::move(r));
}

inline json pairs_json(std::vector<Pair> const& pairs) {
    json arr = json::array();
    for (auto [a, b] : pairs) arr.push_back({a, b});
    return arr;
}

inline json verdict_json(Verdict const& v) {
    json j{{"ok", v.ok}};
    if (!v.ok) {
        j["law"] = v.law;
        j["witness"] = v.witness;
    }
    return j;
}

inline json analysis_json(FunctionTable const& f, ComponentAnalysis const& a) {
    json comps = json::array();
    for (std::size_t c = 0; c < a.component_count(); ++c) {
        json classes = json::array();
        for (auto const& cls : a.classes(c)) classes.push_back(cls);
        comps.push_back({{"id", c},
                         {"members", a.members[c]},
                         {"cycle", a.cycle_elements[c]},
                         {"period", a.period[c]},
                         {"classes", classes}});
    }
    std::size_t prohibited = 0;
    for (element x = 0; x < f.size(); ++x)
        for (element y = x + 1; y < f.size(); ++y)
            if (is_prohibited(x, y, a)) ++prohibited;
    return {{"schema", schema_version},
            {"n", f.size()},
            {"image", std::vector<element>(f.image().begin(), f.image().end())},
            {"components", comps},
            {"distance", a.distance},
            {"fixed_points", a.fixed_points},
            {"cyclic_part", a.cyclic_part},
            {"acyclic_part", a.acyclic_part},
            {"has_proper_cycle", has_proper_cycle(a)},
            {"prohibited_pairs", prohibited}};
}

inline json decision_json(Decision const& d) {
    return {{"schema", schema_version},
            {"exists", d.exists},
            {"reason", std::string(to_string(d.reason))},
            {"evidence", {{"fixed_points", d.fixed_points}, {"proper_cycle", d.proper_cycle}}}};
}

inline json tables_json(std::vector<element> const& table, std::size_t n) {
    json rows = json::array();
    for (std::size_t x = 0; x < n; ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < n; ++y) {
            element const v = table[x * n + y];
            row.push_back(v == no_element ? json(nullptr) : json(v));
        }
        rows.push_back(row);
    }
    return rows;
}

/// Certificate of f acting on the relation r. Deterministic in (f, r),
/// so `construct` and `verify` agree on the same order.
inline json certificate_json(FunctionTable const& f, Relation const& r, bool with_tables) {
    Verdict const po = check_partial_order(r);
    json j{{"partial_order", verdict_json(po)}};
    if (!po) {
        j["is_lattice"] = false;
        j["is_endomorphism"] = false;
        return j;
    }
    PartialOrder const order = PartialOrder::from(r);
    j["monotone"] = verdict_json(is_monotone(f, order));
    LatticeCertificate const cert = certify(f, order);
    j["is_lattice"] = cert.is_lattice;
    j["is_endomorphism"] = cert.is_endomorphism;
    if (!cert.is_lattice) {
        j["failing_pair"] = cert.failing_pair;
        return j;
    }
    json laws = json::array();
    for (auto const& law : cert.law_report) {
        json l{{"name", law.name}, {"passed", law.passed}};
        if (law.skipped) l["skipped"] = true;
        if (!law.passed) l["witness"] = law.witness;
        laws.push_back(l);
    }
    j["laws"] = laws;
    if (cert.n <= CertifyOptions{}.triple_law_limit) {
        j["distributive"] = is_distributive(cert).ok;
        j["modular"] = is_modular(cert).ok;
    }
    if (with_tables) {
        j["join"] = tables_json(cert.join, cert.n);
        j["meet"] = tables_json(cert.meet, cert.n);
    }
    return j;
}

inline json trace_json(ConstructionTrace const& t) {
    auto hub = [](element x) { return x == no_element ? json(nullptr) : json(x); };
    json comps = json::array();
    for (auto const& c : t.components) comps.push_back({{"component", c.component}, {"classes", c.classes}});
    return {{"hub_low", hub(t.hub_low)},
            {"hub_high", hub(t.hub_high)},
            {"blocks", t.blocks},
            {"acyclic_order", t.acyclic_order},
            {"components", comps},
            {"lower_glue_pairs", t.lower_glue_pairs},
            {"upper_glue_pairs", t.upper_glue_pairs}};
}

inline json construction_json(FunctionTable const& f, LatticeResult const& res, bool with_tables) {
    return {{"schema", schema_version},
            {"n", f.size()},
            {"mode", std::string(to_string(res.mode))},
            {"covers", pairs_json(hasse_covers(res.order))},
            {"trace", trace_json(res.trace)},
            {"certificate", certificate_json(f, res.order.relation(), with_tables)}};
}

namespace detail {

inline std::string dot_quote(std::string const& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

} // namespace detail

/// Hasse diagram as a Graphviz digraph, edges pointing upward.
inline std::string hasse_dot(ProblemFile const& prob, PartialOrder const& order, element hub_low,
                             element hub_high) {
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (element x = 0; x < order.size(); ++x) {
        out << "  " << x << " [label=" << detail::dot_quote(prob.display(x));
        if (x == hub_low || x == hub_high)
            out << ", shape=doublecircle, style=filled, fillcolor=lightgray";
        out << "];\n";
    }
    for (auto [a, b] : hasse_covers(order)) out << "  " << a << " -> " << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace endolat
