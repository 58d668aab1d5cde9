#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aifv/bitstring.hpp"
#include "aifv/codetree.hpp"
#include "aifv/error.hpp"
#include "aifv/wordset.hpp"

namespace aifv {

/// Following codeword for the source symbols after a state. The entry whose
/// tail is the longest prefix of the actual continuation applies; the empty
/// tail is both the end-of-input case and the fallback.
struct VVFollow {
    SymbolSeq tail;
    BitString fcword;

    friend bool operator==(const VVFollow&, const VVFollow&) = default;
};

/// A source prefix of a variable-to-variable code. A state with `recur` set
/// is a complete parse word: after emitting its leading codeword the encoder
/// continues as the recurrence target, so it carries no follow entries.
struct VVState {
    SymbolSeq word;
    BitString lcword;
    std::vector<VVFollow> follow;
    std::optional<SymbolSeq> recur;

    friend bool operator==(const VVState&, const VVState&) = default;
};

struct VVCodeTable {
    std::size_t alphabet_size = 0;
    std::vector<VVState> states;

    friend bool operator==(const VVCodeTable&, const VVCodeTable&) = default;
};

inline constexpr std::size_t vv_default_max_depth = 16;
inline constexpr std::size_t vv_normalization_sweeps = 64;

/// Result of converting a table: the code-tree set plus, per tree, the source
/// prefix it stands for and that prefix's own termination fcword(s|ε).
struct VVConversion {
    CodeTreeSet set;
    std::vector<SymbolSeq> tree_words;
    std::vector<BitString> terminations;
};

namespace detail {

inline std::string word_name(const SymbolSeq& w) {
    if (w.empty()) return "ε";
    std::string out;
    for (Symbol a : w) {
        if (!out.empty()) out += ' ';
        out += std::to_string(a.id);
    }
    return out;
}

inline SymbolSeq extend(SymbolSeq w, Symbol a) {
    w.push_back(a);
    return w;
}

inline bool starts_with(const SymbolSeq& seq, const SymbolSeq& head) {
    return head.size() <= seq.size() && std::equal(head.begin(), head.end(), seq.begin());
}

/// Indexed working copy of a table.
class VVWork {
public:
    VVWork(VVCodeTable table, std::size_t max_depth) : table_(std::move(table)) {
        if (table_.alphabet_size == 0) throw Error(Errc::structure_violation, "VV table needs a non-empty alphabet");
        for (std::size_t i = 0; i < table_.states.size(); ++i) {
            const auto& st = table_.states[i];
            if (st.word.size() > max_depth)
                throw Error(Errc::depth_exceeded, "state '" + word_name(st.word) + "' is deeper than " +
                                                      std::to_string(max_depth));
            for (Symbol a : st.word)
                if (a.id >= table_.alphabet_size)
                    throw Error(Errc::symbol_out_of_range, "state '" + word_name(st.word) + "'");
            if (!index_.emplace(st.word, i).second)
                throw Error(Errc::structure_violation, "duplicate state '" + word_name(st.word) + "'");
        }
        check_structure();
    }

    const VVCodeTable& table() const noexcept { return table_; }
    std::size_t alphabet() const noexcept { return table_.alphabet_size; }
    VVState& state(std::size_t i) { return table_.states[i]; }
    const VVState& state(std::size_t i) const { return table_.states[i]; }
    std::size_t at(const SymbolSeq& w) const { return index_.at(w); }
    std::size_t child(std::size_t s, Symbol a) const { return index_.at(extend(state(s).word, a)); }

    /// State whose follow entries apply after `s`.
    std::size_t follow_owner(std::size_t s) const { return state(s).recur ? index_.at(*state(s).recur) : s; }

    /// Non-recurring states, shortest words first.
    std::vector<std::size_t> trees_in_order() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < table_.states.size(); ++i)
            if (!table_.states[i].recur) out.push_back(i);
        std::stable_sort(out.begin(), out.end(), [&](std::size_t x, std::size_t y) {
            const auto &wx = state(x).word, &wy = state(y).word;
            if (wx.size() != wy.size()) return wx.size() < wy.size();
            return wx < wy;
        });
        return out;
    }

    /// fcword(s | tail) by longest matching tail prefix.
    const BitString& lookup(std::size_t s, const SymbolSeq& tail) const {
        const VVFollow* best = nullptr;
        for (const auto& f : state(s).follow)
            if (starts_with(tail, f.tail) && (!best || f.tail.size() > best->tail.size())) best = &f;
        return best->fcword;  // the empty tail always exists
    }

    /// Sets fcword(s | tail); returns true if that changed anything.
    bool set_key(std::size_t s, const SymbolSeq& tail, const BitString& value) {
        for (auto& f : state(s).follow)
            if (f.tail == tail) {
                if (f.fcword == value) return false;
                f.fcword = value;
                return true;
            }
        bool changed = lookup(s, tail) != value;
        state(s).follow.push_back({tail, value});
        return changed;
    }

private:
    void check_structure() const {
        auto root = index_.find(SymbolSeq{});
        if (root == index_.end()) throw Error(Errc::structure_violation, "VV table has no root state");
        if (state(root->second).recur) throw Error(Errc::structure_violation, "the root state cannot recur");
        for (const auto& st : table_.states) {
            if (!st.word.empty()) {
                SymbolSeq parent(st.word.begin(), st.word.end() - 1);
                auto p = index_.find(parent);
                if (p == index_.end() || state(p->second).recur)
                    throw Error(Errc::structure_violation, "state '" + word_name(st.word) + "' has no open parent");
            }
            if (st.recur) {
                auto t = index_.find(*st.recur);
                if (t == index_.end() || state(t->second).recur)
                    throw Error(Errc::structure_violation,
                                "state '" + word_name(st.word) + "' recurs to a missing or recurring state");
                continue;
            }
            bool has_end = std::any_of(st.follow.begin(), st.follow.end(), [](const VVFollow& f) { return f.tail.empty(); });
            if (!has_end)
                throw Error(Errc::structure_violation, "state '" + word_name(st.word) + "' lacks fcword for the empty tail");
            std::set<SymbolSeq> tails;
            for (const auto& f : st.follow) {
                if (!tails.insert(f.tail).second)
                    throw Error(Errc::structure_violation, "state '" + word_name(st.word) + "' repeats a tail");
                for (Symbol a : f.tail)
                    if (a.id >= table_.alphabet_size)
                        throw Error(Errc::symbol_out_of_range, "tail of state '" + word_name(st.word) + "'");
            }
            for (std::size_t a = 0; a < table_.alphabet_size; ++a)
                if (!index_.count(extend(st.word, Symbol{a})))
                    throw Error(Errc::structure_violation,
                                "state '" + word_name(st.word) + "' misses its child for symbol " + std::to_string(a));
        }
    }

    VVCodeTable table_;
    std::map<SymbolSeq, std::size_t> index_;
};

[[noreturn]] inline void normalization_failed(const VVWork& w, std::size_t s, Symbol a, const std::string& why) {
    throw Error(Errc::normalization_failed,
                "state '" + word_name(w.state(s).word) + "' symbol " + std::to_string(a.id) + ": " + why);
}

// One pass over (s, a). Returns true if the table changed.
inline bool normalize_edge(VVWork& w, std::size_t s, Symbol a) {
    const std::size_t c = w.child(s, a);
    const std::size_t owner = w.follow_owner(c);

    std::set<SymbolSeq> classes{SymbolSeq{}};
    for (const auto& f : w.state(owner).follow) classes.insert(f.tail);
    for (const auto& f : w.state(s).follow)
        if (!f.tail.empty() && f.tail.front() == a) classes.insert(SymbolSeq(f.tail.begin() + 1, f.tail.end()));

    // Make every class explicit on s so later rewrites stay local to it.
    for (const auto& t : classes) {
        SymbolSeq full{a};
        full.insert(full.end(), t.begin(), t.end());
        BitString current = w.lookup(s, full);
        w.set_key(s, full, current);
    }

    const BitString ls = w.state(s).lcword;
    const BitString lc = w.state(c).lcword;
    if (!comparable(ls, lc)) normalization_failed(w, s, a, "leading codewords diverge");

    if (is_strict_prefix(lc, ls)) {
        bool case_i = !w.state(c).recur;
        for (const auto& f : w.state(c).follow)
            if (!is_prefix(ls, lc + f.fcword)) case_i = false;
        if (case_i) {
            // Lengthen the child's leading codeword; its outputs stay the same.
            for (auto& f : w.state(c).follow) f.fcword = strip_prefix(ls, lc + f.fcword);
            w.state(c).lcword = ls;
        } else {
            // Shorten the parent's leading codeword instead.
            BitString moved = strip_prefix(lc, ls);
            for (auto& f : w.state(s).follow) f.fcword = moved + f.fcword;
            w.state(s).lcword = lc;
        }
        return true;
    }

    bool changed = false;
    for (const auto& t : classes) {
        SymbolSeq full{a};
        full.insert(full.end(), t.begin(), t.end());
        BitString left = ls + w.lookup(s, full);
        BitString right = lc + w.lookup(owner, t);
        if (is_prefix(left, right)) continue;
        if (!is_prefix(right, left)) normalization_failed(w, s, a, "following codewords diverge");
        changed |= w.set_key(s, full, strip_prefix(ls, right));
    }
    return changed;
}

struct Unfolded {
    BitString lead;
    std::size_t state;
};

// Leading codeword and follow owner after reading `xs` from the root.
inline Unfolded unfold(const VVWork& w, const SymbolSeq& xs) {
    BitString origin;
    std::size_t seg_root = w.at(SymbolSeq{});
    std::size_t s = seg_root;
    for (Symbol a : xs) {
        std::size_t c = w.child(s, a);
        if (w.state(c).recur) {
            origin += strip_prefix(w.state(seg_root).lcword, w.state(c).lcword);
            seg_root = w.follow_owner(c);
            s = seg_root;
        } else {
            s = c;
        }
    }
    return {origin + strip_prefix(w.state(seg_root).lcword, w.state(s).lcword), s};
}

inline std::vector<BitString> follow_values(const VVWork& w, std::size_t s) {
    std::vector<BitString> out;
    for (const auto& f : w.state(s).follow) out.push_back(f.fcword);
    return out;
}

inline std::size_t max_depth_of(const VVCodeTable& t) {
    std::size_t d = 0;
    for (const auto& st : t.states) d = std::max(d, st.word.size());
    return d;
}

inline void check_prefix_condition(const VVWork& w) {
    constexpr std::size_t budget = std::size_t{1} << 14;
    const std::size_t m = w.alphabet();
    std::size_t limit = max_depth_of(w.table()) + 1;
    std::vector<SymbolSeq> layer{SymbolSeq{}};
    for (std::size_t len = 1; len <= limit; ++len) {
        if (layer.size() * m > budget) break;
        std::vector<SymbolSeq> next;
        for (const auto& xs : layer)
            for (std::size_t a = 0; a < m; ++a) next.push_back(extend(xs, Symbol{a}));
        layer = std::move(next);
        std::vector<std::vector<BitString>> outputs;
        for (const auto& xs : layer) {
            auto u = unfold(w, xs);
            std::vector<BitString> outs;
            for (const auto& f : follow_values(w, u.state)) outs.push_back(u.lead + f);
            outputs.push_back(std::move(outs));
        }
        for (std::size_t i = 0; i < layer.size(); ++i)
            for (std::size_t j = i + 1; j < layer.size(); ++j)
                for (const auto& x : outputs[i])
                    for (const auto& y : outputs[j])
                        if (comparable(x, y))
                            throw Error(Errc::normalization_failed,
                                        "sequences '" + word_name(layer[i]) + "' and '" + word_name(layer[j]) +
                                            "' cannot be told apart");
    }
}

}  // namespace detail

/// Rewrites leading and following codewords until every edge (s, a) has
/// Lcword(s) ⪯ Lcword(sa) and Lcword(s)Fcword(s|a·T) ⪯ Lcword(sa)Fcword(sa|T).
inline VVCodeTable normalize(VVCodeTable table, std::size_t max_depth = vv_default_max_depth) {
    detail::VVWork w(std::move(table), max_depth);
    for (std::size_t sweep = 0; sweep < vv_normalization_sweeps; ++sweep) {
        bool changed = false;
        for (std::size_t s : w.trees_in_order())
            for (std::size_t a = 0; a < w.alphabet(); ++a) changed |= detail::normalize_edge(w, s, Symbol{a});
        if (!changed) return w.table();
    }
    throw Error(Errc::normalization_failed, "no fixed point after " + std::to_string(vv_normalization_sweeps) + " sweeps");
}

/// V(s): the codeword the table assigns to a source sequence.
inline BitString vv_codeword(const VVCodeTable& table, const SymbolSeq& xs) {
    detail::VVWork w(table, std::max(vv_default_max_depth, detail::max_depth_of(table)));
    auto u = detail::unfold(w, xs);
    return u.lead + w.lookup(u.state, SymbolSeq{});
}

/// One code tree per open state, tree 0 for the root.
inline VVConversion vv_conversion(const VVCodeTable& table, std::size_t max_depth = vv_default_max_depth) {
    detail::VVWork w(normalize(table, max_depth), max_depth);
    detail::check_prefix_condition(w);
    auto order = w.trees_in_order();
    std::map<std::size_t, TreeId> tree_of;
    for (std::size_t i = 0; i < order.size(); ++i) tree_of[order[i]] = i;

    std::vector<CodeTree> trees;
    std::vector<SymbolSeq> words;
    std::vector<BitString> terminations;
    for (std::size_t s : order) {
        CodeTree t{{}, {}, WordSet(detail::follow_values(w, s))};
        for (std::size_t a = 0; a < w.alphabet(); ++a) {
            std::size_t c = w.child(s, Symbol{a});
            t.cword.push_back(strip_prefix(w.state(s).lcword, w.state(c).lcword));
            t.point.push_back(tree_of.at(w.follow_owner(c)));
        }
        trees.push_back(std::move(t));
        words.push_back(w.state(s).word);
        terminations.push_back(w.lookup(s, SymbolSeq{}));
    }
    VVConversion conv{CodeTreeSet(w.alphabet(), std::move(trees)), std::move(words), std::move(terminations)};
    auto report = validate(conv.set);
    if (!report.valid())
        throw Error(Errc::normalization_failed,
                    "constructed trees violate the decodability constraints (" + std::to_string(report.violations.size()) + " violations)");
    return conv;
}

inline CodeTreeSet vv_to_tree_set(const VVCodeTable& table, std::size_t max_depth = vv_default_max_depth) {
    return vv_conversion(table, max_depth).set;
}

}  // namespace aifv
