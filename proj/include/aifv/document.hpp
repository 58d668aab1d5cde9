#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aifv/analysis.hpp"
#include "aifv/bitstring.hpp"
#include "aifv/codetree.hpp"
#include "aifv/conventional.hpp"
#include "aifv/error.hpp"
#include "aifv/vv_code.hpp"
#include "aifv/wordset.hpp"

namespace aifv {

/// Symbol names; index i is Symbol{i}.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw Error(Errc::parse_error, "alphabet must not be empty");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw Error(Errc::parse_error, "symbol names must not be empty");
            if (!index_.emplace(names_[i], i).second) throw Error(Errc::parse_error, "duplicate symbol '" + names_[i] + "'");
        }
    }

    /// a, b, ..., z, then s26, s27, ...
    static Alphabet with_size(std::size_t m) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < m; ++i)
            names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
        return Alphabet(std::move(names));
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(Symbol a) const { return names_.at(a.id); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    /// Resolves a symbol name, or a decimal index when no name matches.
    Symbol lookup(std::string_view token) const {
        if (auto it = index_.find(std::string(token)); it != index_.end()) return Symbol{it->second};
        if (!token.empty() && token.find_first_not_of("0123456789") == std::string_view::npos && token.size() < 19) {
            std::size_t i = std::stoull(std::string(token));
            if (i < names_.size()) return Symbol{i};
        }
        throw Error(Errc::symbol_out_of_range, "unknown symbol '" + std::string(token) + "'");
    }

    /// Reads a symbol sequence written as an array of names, or as a string of
    /// concatenated names when every name is a single character.
    SymbolSeq sequence(const nlohmann::json& j) const {
        SymbolSeq out;
        if (j.is_array()) {
            for (const auto& e : j) out.push_back(lookup(e.get<std::string>()));
            return out;
        }
        if (!j.is_string()) throw Error(Errc::parse_error, "symbol sequence must be a string or an array");
        for (const auto& n : names_)
            if (n.size() != 1) throw Error(Errc::parse_error, "multi-character symbol names need array sequences");
        for (char c : j.get<std::string>()) out.push_back(lookup(std::string(1, c)));
        return out;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

struct TreeSetDocument {
    Alphabet alphabet;
    CodeTreeSet set;
    std::vector<std::string> tree_names;  // empty, or one per tree
};

struct ConventionalDocument {
    Alphabet alphabet;
    std::optional<std::string> kind;  // "aifv2" or "aifvm"
    std::optional<std::size_t> m;
    std::vector<ConventionalTree> trees;
};

struct VVDocument {
    Alphabet alphabet;
    VVCodeTable table;
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

inline const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw Error(Errc::parse_error, std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

inline BitString bits_of(const json& j) {
    if (!j.is_string()) throw Error(Errc::parse_error, "bit strings must be JSON strings of '0' and '1'");
    return BitString(j.get<std::string>());
}

inline Alphabet alphabet_of(const json& doc, std::optional<std::size_t> fallback = std::nullopt) {
    if (!doc.contains("alphabet")) {
        if (fallback) return Alphabet::with_size(*fallback);
        throw Error(Errc::parse_error, "missing field \"alphabet\"");
    }
    const json& a = doc.at("alphabet");
    if (a.is_number_unsigned() && a.get<std::size_t>() > 0) return Alphabet::with_size(a.get<std::size_t>());
    if (!a.is_array()) throw Error(Errc::parse_error, "\"alphabet\" must be a positive size or a list of names");
    std::vector<std::string> names;
    for (const auto& n : a) {
        if (!n.is_string()) throw Error(Errc::parse_error, "symbol names must be strings");
        names.push_back(n.get<std::string>());
    }
    return Alphabet(std::move(names));
}

// Per-symbol values given either as an array by index or an object by name.
template <class Convert>
auto per_symbol(const json& j, const Alphabet& alphabet, const char* what, Convert convert) {
    using T = decltype(convert(j));
    std::vector<std::optional<T>> slots(alphabet.size());
    if (j.is_array()) {
        if (j.size() != alphabet.size()) throw Error(Errc::parse_error, std::string("\"") + what + "\" needs one entry per symbol");
        for (std::size_t i = 0; i < j.size(); ++i) slots[i] = convert(j[i]);
    } else if (j.is_object()) {
        for (const auto& [name, value] : j.items()) slots[alphabet.lookup(name).id] = convert(value);
    } else {
        throw Error(Errc::parse_error, std::string("\"") + what + "\" must be an array or an object");
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i])
            throw Error(Errc::parse_error, std::string("\"") + what + "\" has no entry for '" + alphabet.name(Symbol{i}) + "'");
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace detail

inline TreeSetDocument parse_tree_set(std::string_view text) {
    using detail::json;
    json doc = detail::parse_json(text);
    if (!doc.is_object()) throw Error(Errc::parse_error, "document must be a JSON object");
    Alphabet alphabet = detail::alphabet_of(doc);
    const json& trees = detail::field(doc, "trees");
    if (!trees.is_array() || trees.empty()) throw Error(Errc::parse_error, "\"trees\" must be a non-empty array");

    std::vector<std::string> names;
    std::map<std::string, TreeId> by_name;
    for (std::size_t k = 0; k < trees.size(); ++k) {
        std::string name = trees[k].is_object() && trees[k].contains("name") ? trees[k]["name"].get<std::string>() : "";
        names.push_back(name);
        if (!name.empty() && !by_name.emplace(name, k).second) throw Error(Errc::parse_error, "duplicate tree name '" + name + "'");
    }
    auto tree_ref = [&](const json& j) -> TreeId {
        if (j.is_number_unsigned()) return j.get<TreeId>();
        if (j.is_string()) {
            auto it = by_name.find(j.get<std::string>());
            if (it != by_name.end()) return it->second;
        }
        throw Error(Errc::parse_error, "bad tree reference " + j.dump());
    };

    std::vector<CodeTree> out;
    for (const auto& t : trees) {
        const json& mode = detail::field(t, "mode");
        if (!mode.is_array() || mode.empty()) throw Error(Errc::parse_error, "\"mode\" must be a non-empty array");
        std::vector<BitString> words;
        for (const auto& q : mode) words.push_back(detail::bits_of(q));
        out.push_back({detail::per_symbol(detail::field(t, "codewords"), alphabet, "codewords", detail::bits_of),
                       detail::per_symbol(detail::field(t, "next"), alphabet, "next", tree_ref), WordSet(std::move(words))});
    }
    bool any_name = std::any_of(names.begin(), names.end(), [](const std::string& n) { return !n.empty(); });
    return {alphabet, CodeTreeSet(alphabet.size(), std::move(out)), any_name ? names : std::vector<std::string>{}};
}

/// Canonical form: fixed key order, symbols in alphabet order, tree
/// references as indices, two-space indentation, trailing newline.
inline std::string serialize_tree_set(const TreeSetDocument& doc) {
    using detail::ordered_json;
    ordered_json out;
    out["alphabet"] = doc.alphabet.names();
    ordered_json trees = ordered_json::array();
    for (TreeId k = 0; k < doc.set.size(); ++k) {
        ordered_json t;
        if (!doc.tree_names.empty() && !doc.tree_names[k].empty()) t["name"] = doc.tree_names[k];
        ordered_json mode = ordered_json::array();
        for (const auto& q : doc.set.mode(k)) mode.push_back(q.to_string());
        t["mode"] = mode;
        ordered_json cw = ordered_json::object(), next = ordered_json::object();
        for (std::size_t a = 0; a < doc.set.alphabet_size(); ++a) {
            cw[doc.alphabet.name(Symbol{a})] = doc.set.cword(k, Symbol{a}).to_string();
            next[doc.alphabet.name(Symbol{a})] = doc.set.point(k, Symbol{a});
        }
        t["codewords"] = cw;
        t["next"] = next;
        trees.push_back(t);
    }
    out["trees"] = trees;
    return out.dump(2) + "\n";
}

inline TreeSetDocument make_document(CodeTreeSet set, std::optional<Alphabet> alphabet = std::nullopt) {
    Alphabet names = alphabet ? *alphabet : Alphabet::with_size(set.alphabet_size());
    if (names.size() != set.alphabet_size()) throw Error(Errc::dimension_mismatch, "alphabet does not match the code");
    return {std::move(names), std::move(set), {}};
}

/// {"probabilities": [...]} by index or {"probabilities": {"a": p, ...}} by name.
inline SourceDistribution parse_distribution(std::string_view text, const Alphabet& alphabet) {
    auto doc = detail::parse_json(text);
    const auto& probs = detail::field(doc, "probabilities");
    auto to_double = [](const detail::json& j) {
        if (!j.is_number()) throw Error(Errc::parse_error, "probabilities must be numbers");
        return j.get<double>();
    };
    return SourceDistribution(detail::per_symbol(probs, alphabet, "probabilities", to_double));
}

/// {"kind": "aifv2"|"aifvm", "m": 3, "alphabet": [...], "trees": [{"codewords": {...}}, ...]}
inline ConventionalDocument parse_conventional(std::string_view text) {
    auto doc = detail::parse_json(text);
    if (!doc.is_object()) throw Error(Errc::parse_error, "document must be a JSON object");
    Alphabet alphabet = detail::alphabet_of(doc);
    ConventionalDocument out{alphabet, std::nullopt, std::nullopt, {}};
    if (doc.contains("kind")) out.kind = doc["kind"].get<std::string>();
    if (doc.contains("m")) out.m = doc["m"].get<std::size_t>();
    const auto& trees = detail::field(doc, "trees");
    if (!trees.is_array() || trees.empty()) throw Error(Errc::parse_error, "\"trees\" must be a non-empty array");
    for (const auto& t : trees)
        out.trees.push_back({detail::per_symbol(detail::field(t, "codewords"), alphabet, "codewords", detail::bits_of)});
    return out;
}

/// {"alphabet": [...], "states": [{"word": "ab", "lcword": "0",
///   "follow": {"": "1", "a": "10"}} | {"word": "abb", "lcword": "011", "recur": ""}]}
inline VVDocument parse_vv_table(std::string_view text) {
    auto doc = detail::parse_json(text);
    if (!doc.is_object()) throw Error(Errc::parse_error, "document must be a JSON object");
    Alphabet alphabet = detail::alphabet_of(doc);
    VVCodeTable table{alphabet.size(), {}};
    const auto& states = detail::field(doc, "states");
    if (!states.is_array()) throw Error(Errc::parse_error, "\"states\" must be an array");
    for (const auto& s : states) {
        VVState st{alphabet.sequence(detail::field(s, "word")), detail::bits_of(detail::field(s, "lcword")), {}, std::nullopt};
        if (s.contains("recur")) st.recur = alphabet.sequence(s["recur"]);
        if (s.contains("follow")) {
            const auto& f = s["follow"];
            if (!f.is_object()) throw Error(Errc::parse_error, "\"follow\" must map tails to bit strings");
            for (const auto& [tail, value] : f.items())
                st.follow.push_back({alphabet.sequence(detail::json(tail)), detail::bits_of(value)});
        }
        table.states.push_back(std::move(st));
    }
    return {alphabet, std::move(table)};
}

/// Whitespace-separated symbol names or indices.
inline SymbolSeq parse_symbols(std::string_view text, const Alphabet& alphabet) {
    SymbolSeq out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::string_view(" \t\r\n\f\v").find(text[i]) != std::string_view::npos) ++i;
        std::size_t start = i;
        while (i < text.size() && std::string_view(" \t\r\n\f\v").find(text[i]) == std::string_view::npos) ++i;
        if (i > start) out.push_back(alphabet.lookup(text.substr(start, i - start)));
    }
    return out;
}

inline std::string format_symbols(const SymbolSeq& xs, const Alphabet& alphabet) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += alphabet.name(xs[i]);
    }
    return out;
}

}  // namespace aifv
