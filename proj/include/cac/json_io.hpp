#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings for codes, matrices, square sets and reports.
 *
 * Objects use nlohmann::json's default ordered-by-key storage, so dumps are
 * canonical. Integers above 2^53 are written as decimal strings; readers
 * accept either form.
 */

#include <cac/chansim.hpp>
#include <cac/codes.hpp>
#include <cac/cyclotomic.hpp>
#include <cac/modarith.hpp>
#include <cac/oracle.hpp>
#include <cac/squares.hpp>

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace cac {

using json = nlohmann::json;

inline constexpr char kCodeFormat[] = "cac-v1";
inline constexpr u64 kMaxExactDouble = u64{1} << 53;

/// Raised for malformed input files, as opposed to mathematical failures.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json json_uint(u64 v) {
    if (v > kMaxExactDouble) return std::to_string(v);
    return v;
}

inline u64 read_uint(const json& j, const char* what) {
    if (j.is_number_unsigned()) return j.get<u64>();
    if (j.is_number_integer() && j.get<i64>() >= 0) return static_cast<u64>(j.get<i64>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
            try {
                return std::stoull(s);
            } catch (const std::out_of_range&) {
            }
        }
    }
    throw FormatError(std::string("expected a nonnegative integer for ") + what);
}

inline json to_json(const CodeMeta& m) {
    json j{{"equi", json_uint(m.equi)},
           {"nonequi", json_uint(m.nonequi)},
           {"m_e", json_uint(m.m_e)},
           {"upper_bound", json_uint(m.upper_bound)},
           {"optimal", m.optimal},
           {"primitive_root", json_uint(m.primitive_root)},
           {"o_p_2", json_uint(m.order_of_2)},
           {"ell", json_uint(m.ell)},
           {"O_p", json_uint(m.big_o)}};
    if (m.generator_coset) j["generator_coset"] = json_uint(*m.generator_coset);
    return j;
}

inline json to_json(const Code& code) {
    json words = json::array();
    for (const auto& x : code.codewords) {
        const auto& v = x.points();
        words.push_back({json_uint(v[0]), json_uint(v[1]), json_uint(v[2])});
    }
    return {{"format", kCodeFormat},
            {"p", json_uint(code.p)},
            {"weight", code.weight},
            {"codewords", std::move(words)},
            {"meta", to_json(code.meta)}};
}

/// Parses a cac-v1 document. Codewords are normalized to ascending order;
/// the meta block is optional.
inline Code code_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("code file: top level must be an object");
    if (!j.contains("format") || j["format"] != kCodeFormat) throw FormatError("code file: format must be \"cac-v1\"");
    if (!j.contains("p") || !j.contains("codewords")) throw FormatError("code file: missing p or codewords");
    Code code;
    code.p = read_uint(j["p"], "p");
    code.weight = j.contains("weight") ? static_cast<unsigned>(read_uint(j["weight"], "weight")) : 3;
    if (code.weight != 3) throw FormatError("code file: only weight 3 is supported");
    if (code.p < 3) throw FormatError("code file: p must be at least 3");
    const auto& words = j["codewords"];
    if (!words.is_array()) throw FormatError("code file: codewords must be an array");
    for (const auto& w : words) {
        if (!w.is_array() || w.size() != 3) throw FormatError("code file: each codeword must have three entries");
        try {
            code.codewords.emplace_back(code.p, read_uint(w[0], "codeword entry"), read_uint(w[1], "codeword entry"),
                                        read_uint(w[2], "codeword entry"));
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("code file: ") + e.what());
        }
    }
    if (j.contains("meta") && j["meta"].is_object()) {
        const auto& m = j["meta"];
        auto field = [&](const char* key, u64& out) {
            if (m.contains(key)) out = read_uint(m[key], key);
        };
        field("equi", code.meta.equi);
        field("nonequi", code.meta.nonequi);
        field("m_e", code.meta.m_e);
        field("upper_bound", code.meta.upper_bound);
        field("primitive_root", code.meta.primitive_root);
        field("o_p_2", code.meta.order_of_2);
        field("ell", code.meta.ell);
        field("O_p", code.meta.big_o);
        if (m.contains("optimal") && m["optimal"].is_boolean()) code.meta.optimal = m["optimal"].get<bool>();
        if (m.contains("generator_coset")) code.meta.generator_coset = read_uint(m["generator_coset"], "generator_coset");
    }
    return code;
}

inline Code code_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("code file: ") + e.what());
    }
    return code_from_json(j);
}

/// Canonical text form: two-space indentation, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json to_json(const CosetMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.rows()) {
        json row = json::array();
        for (const u64 v : r) row.push_back(json_uint(v));
        rows.push_back(std::move(row));
    }
    return {{"p", json_uint(m.p())}, {"g", json_uint(m.root())}, {"ell", json_uint(m.ell())}, {"rows", std::move(rows)}};
}

inline json to_json(const SquareSet& s, std::optional<std::size_t> member_cap) {
    json j{{"p", json_uint(s.p)}, {"k", json_uint(s.k)}, {"count", json_uint(s.members.size())}};
    if (!member_cap || s.members.size() <= *member_cap) {
        json members = json::array();
        for (const Residue v : s.members) members.push_back(json_uint(v));
        j["members"] = std::move(members);
    }
    return j;
}

inline json context_json(const GroupContext& ctx) {
    json j{{"p", json_uint(ctx.p())},
           {"o_p_2", json_uint(ctx.order_of_2())},
           {"L_order", json_uint(ctx.subgroup_order())},
           {"ell", json_uint(ctx.ell())},
           {"O_p", json_uint(ctx.big_o())},
           {"primitive_root", json_uint(ctx.primitive_root())},
           {"m_e", json_uint(m_e(ctx))},
           {"upper_bound", json_uint(upper_bound(ctx))},
           {"wieferich", is_wieferich(ctx.p())}};
    if (const auto known = known_optimal_size(ctx)) {
        j["known_optimal"] = json_uint(known->size);
        j["known_optimal_rationale"] = known->rationale;
    } else {
        j["known_optimal"] = nullptr;
    }
    return j;
}

inline json to_json(const oracle::ExhaustiveResult& r, u64 p) {
    json witness = json::array();
    for (const auto& x : r.witness) {
        const auto& v = x.points();
        witness.push_back({v[0], v[1], v[2]});
    }
    return {{"p", json_uint(p)}, {"max", json_uint(r.max_size)}, {"witness", std::move(witness)}};
}

inline json to_json(const TrialStats& s, u64 p) {
    return {{"p", json_uint(p)},
            {"active", json_uint(s.active)},
            {"trials", json_uint(s.trials)},
            {"success_rate", s.success_rate()},
            {"all_succeeded", json_uint(s.all_succeeded)},
            {"seed", json_uint(s.seed)}};
}

inline json to_json(const Conflict& c, const Code& code) {
    auto word = [&](std::size_t k) {
        const auto& v = code.codewords[k].points();
        return json{json_uint(v[0]), json_uint(v[1]), json_uint(v[2])};
    };
    return {{"first", c.first},
            {"second", c.second},
            {"difference", json_uint(c.difference)},
            {"codewords", {word(c.first), word(c.second)}}};
}

}  // namespace cac
