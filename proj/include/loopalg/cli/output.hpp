#pragma once

/**
 * @file output.hpp
 * @brief Serializable record of a class-valued command result.
 *
 * JSON layout:
 *
 *   { "space": "cp", "n": 2, "command": "coproduct",
 *     "result": { "input": "...", "route": "closed", "text": "...",
 *                 "terms": [ { "coeff": "p/q", "keys": ["A[1,0]", "A[2,1]"] }, ... ],
 *                 "input_degree": 11 },
 *     "degree": 8 }
 *
 * Coefficients are always "p/q" strings. "degree" and "input_degree" are only
 * present for homogeneous values; "route" only for the coproduct.
 */

#include "loopalg/cli/expr.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace loopalg::cli {

struct TermRecord {
    std::string coeff;
    std::vector<std::string> keys;
    friend bool operator==(const TermRecord&, const TermRecord&) = default;
};

struct OutputRecord {
    std::string space;
    int n = 1;
    std::string command;
    std::string input;
    std::optional<std::string> route;
    std::vector<TermRecord> terms;
    std::string text;
    std::optional<int> input_degree;
    std::optional<int> degree;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline nlohmann::json envelope(const SpaceParams& p, const std::string& command)
{
    return {{"space", family_token(p.family)}, {"n", p.n}, {"command", command}};
}

inline void to_json(nlohmann::json& j, const TermRecord& t) { j = {{"coeff", t.coeff}, {"keys", t.keys}}; }

inline void from_json(const nlohmann::json& j, TermRecord& t)
{
    j.at("coeff").get_to(t.coeff);
    j.at("keys").get_to(t.keys);
}

inline void to_json(nlohmann::json& j, const OutputRecord& r)
{
    nlohmann::json result = {{"input", r.input}, {"terms", r.terms}, {"text", r.text}};
    if (r.route)
        result["route"] = *r.route;
    if (r.input_degree)
        result["input_degree"] = *r.input_degree;
    j = {{"space", r.space}, {"n", r.n}, {"command", r.command}, {"result", result}};
    if (r.degree)
        j["degree"] = *r.degree;
}

inline void from_json(const nlohmann::json& j, OutputRecord& r)
{
    j.at("space").get_to(r.space);
    j.at("n").get_to(r.n);
    j.at("command").get_to(r.command);
    const auto& res = j.at("result");
    res.at("input").get_to(r.input);
    res.at("terms").get_to(r.terms);
    res.at("text").get_to(r.text);
    r.route = res.contains("route") ? std::optional(res.at("route").get<std::string>()) : std::nullopt;
    r.input_degree = res.contains("input_degree") ? std::optional(res.at("input_degree").get<int>()) : std::nullopt;
    r.degree = j.contains("degree") ? std::optional(j.at("degree").get<int>()) : std::nullopt;
}

template <class Key, std::size_t Arity>
std::vector<TermRecord> term_records(const Combination<Key, Arity>& x)
{
    std::vector<TermRecord> out;
    for (const auto& [idx, c] : x.terms()) {
        TermRecord t{to_fraction_string(c), {}};
        for (const auto& key : idx)
            t.keys.push_back(to_string(key));
        out.push_back(std::move(t));
    }
    return out;
}

/// Rebuilds a combination from its term records.
template <class Key, std::size_t Arity>
Combination<Key, Arity> from_term_records(const std::vector<TermRecord>& terms, const SpaceParams& p)
{
    Combination<Key, Arity> out(p);
    for (const auto& t : terms) {
        std::string atom;
        for (std::size_t f = 0; f < t.keys.size(); ++f)
            atom += (f ? " x " : "") + t.keys[f];
        out += parse_scalar(t.coeff) * parse_as<Key, Arity>(atom, p);
    }
    return out;
}

template <class Key, std::size_t Arity>
OutputRecord make_record(const SpaceParams& p, const std::string& command, const std::string& input,
                         const Combination<Key, Arity>& result)
{
    OutputRecord r;
    r.space = family_token(p.family);
    r.n = p.n;
    r.command = command;
    r.input = input;
    r.terms = term_records(result);
    r.text = format(result);
    r.degree = result.degree();
    return r;
}

} // namespace loopalg::cli
