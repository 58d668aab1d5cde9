#pragma once

// Hand-entered code-tree sets used across the suites. They are built in code
// rather than read from data/ so that parser bugs cannot mask codec bugs.

#include <string>
#include <vector>

#include "aifv/aifv.hpp"

namespace fixtures {

using aifv::BitString;
using aifv::CodeTree;
using aifv::CodeTreeSet;
using aifv::Symbol;
using aifv::SymbolSeq;
using aifv::WordSet;

#ifndef AIFV_DATA_DIR
#define AIFV_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) { return std::string(AIFV_DATA_DIR) + "/" + name; }

inline CodeTree tree(std::vector<std::string> mode, std::vector<std::string> cwords, std::vector<aifv::TreeId> next) {
    std::vector<BitString> m, c;
    for (const auto& w : mode) m.emplace_back(w);
    for (const auto& w : cwords) c.emplace_back(w);
    return {c, next, WordSet(m)};
}

/// Symbols from letters: "abbaa" -> {0, 1, 1, 0, 0}.
inline SymbolSeq seq(const std::string& letters) {
    SymbolSeq out;
    for (char c : letters) out.push_back(Symbol{static_cast<std::size_t>(c - 'a')});
    return out;
}

inline std::string letters(const SymbolSeq& xs) {
    std::string out;
    for (auto a : xs) out.push_back(static_cast<char>('a' + a.id));
    return out;
}

/// Five trees over {a, b}; a b b a a -> 10011.
inline CodeTreeSet five_tree() {
    return CodeTreeSet(2, {tree({""}, {"", "0"}, {1, 2}),
                           tree({"1", "011"}, {"1", ""}, {4, 3}),
                           tree({"0", "10"}, {"0", "10"}, {0, 0}),
                           tree({"011", "100"}, {"011", "100"}, {0, 0}),
                           tree({"1", "01"}, {"1", "01"}, {0, 0})});
}

/// Non-basic modes with a shared leading bit in tree 1.
inline CodeTreeSet nonbasic() {
    return CodeTreeSet(3, {tree({""}, {"", "", "11"}, {1, 2, 0}),
                           tree({"000", "001", "010"}, {"000", "001", "010"}, {0, 0, 0}),
                           tree({"011", "100", "101"}, {"011", "100", "101"}, {0, 0, 0})});
}

/// The same code after basic-mode reduction.
inline CodeTreeSet nonbasic_reduced() {
    return CodeTreeSet(3, {tree({""}, {"0", "", "11"}, {1, 2, 0}),
                           tree({"0", "10"}, {"00", "01", "10"}, {0, 0, 0}),
                           tree({"011", "10"}, {"011", "100", "101"}, {0, 0, 0})});
}

/// AIFV-3 code for p = (0.9, 0.05, 0.049, 0.001), already in tree-set form.
inline CodeTreeSet aifv3_skewed() {
    return CodeTreeSet(4, {tree({""}, {"", "0000", "0001", "0001000"}, {1, 0, 1, 0}),
                           tree({"001", "01", "1"}, {"", "0010", "0011", "0011000"}, {2, 0, 1, 0}),
                           tree({"01", "1"}, {"1", "010", "011", "011000"}, {0, 0, 1, 0})});
}

/// Four-tree 3-bit-delay code for the same source.
inline CodeTreeSet four_tree_skewed() {
    return CodeTreeSet(4, {tree({""}, {"", "0000", "0001", "0001000"}, {1, 0, 1, 0}),
                           tree({"001", "01", "1"}, {"", "0010", "0011", "0011000"}, {2, 0, 1, 0}),
                           tree({"01", "1"}, {"", "0100", "0101", "0101000"}, {3, 0, 1, 0}),
                           tree({"011", "1"}, {"1", "0110", "0111", "0111000"}, {0, 0, 1, 0})});
}

inline aifv::SourceDistribution skewed_distribution() { return aifv::SourceDistribution({0.9, 0.05, 0.049, 0.001}); }

/// Single-tree instantaneous code {0, 10, 11}.
inline CodeTreeSet huffman3() { return CodeTreeSet(3, {tree({""}, {"0", "10", "11"}, {0, 0, 0})}); }

inline std::vector<aifv::ConventionalTree> conventional(std::vector<std::vector<std::string>> trees) {
    std::vector<aifv::ConventionalTree> out;
    for (const auto& t : trees) {
        aifv::ConventionalTree ct;
        for (const auto& w : t) ct.codewords.emplace_back(w);
        out.push_back(ct);
    }
    return out;
}

/// Binary AIFV trees; symbol c sits on a master node in both trees.
inline std::vector<aifv::ConventionalTree> aifv2_example() {
    return conventional({{"0", "10", "11", "1100"}, {"01", "10", "11", "1100"}});
}

/// AIFV-3 trees, indexed so that a degree-k master switches to tree 3-k.
inline std::vector<aifv::ConventionalTree> aifv3_example() {
    return conventional({{"0", "10", "11", "1100"}, {"001", "01", "10", "11"}, {"01", "10", "11", "11000"}});
}

inline std::vector<aifv::ConventionalTree> aifv3_conventional() {
    return conventional({{"", "0000", "0001", "0001000"}, {"", "0010", "0011", "0011000"}, {"1", "010", "011", "011000"}});
}

inline aifv::VVState open_state(const std::string& word, const std::string& lcword,
                                std::vector<std::pair<std::string, std::string>> follow) {
    aifv::VVState st{seq(word), BitString(lcword), {}, std::nullopt};
    for (const auto& [tail, f] : follow) st.follow.push_back({seq(tail), BitString(f)});
    return st;
}

inline aifv::VVState complete_word(const std::string& word, const std::string& codeword, const std::string& recur = "") {
    return {seq(word), BitString(codeword), {}, seq(recur)};
}

/// Extended Huffman code on pairs over {a, b, c}.
inline aifv::VVCodeTable pair_huffman() {
    aifv::VVCodeTable t{3, {open_state("", "", {{"", ""}}),
                            open_state("a", "0", {{"", ""}}),
                            open_state("b", "1", {{"", "01"}, {"a", "01"}, {"b", "110"}, {"c", "100"}}),
                            open_state("c", "1", {{"", "00"}, {"a", "00"}, {"b", "101"}, {"c", "111"}})}};
    for (auto [w, v] : std::vector<std::pair<std::string, std::string>>{{"aa", "00"},   {"ab", "010"},  {"ac", "011"},
                                                                        {"ba", "101"},  {"bb", "1110"}, {"bc", "1100"},
                                                                        {"ca", "100"},  {"cb", "1101"}, {"cc", "1111"}})
        t.states.push_back(complete_word(w, v));
    return t;
}

/// Variable-to-fixed code over {a, b} with 3-bit codewords.
inline aifv::VVCodeTable vf3() {
    aifv::VVCodeTable t{2, {open_state("", "", {{"", ""}}),
                            open_state("a", "", {{"", "0"}, {"aaa", "0"}, {"aab", "0"}, {"ab", "0"}, {"ba", "0"}, {"bb", "100"}}),
                            open_state("b", "1", {{"", "01"}, {"aa", "01"}, {"ab", "1"}, {"b", "1"}}),
                            open_state("aa", "0", {{"", "0"}, {"aa", "0"}, {"ab", "0"}, {"b", "10"}}),
                            open_state("ab", "", {{"", "011"}, {"a", "011"}, {"b", "100"}}),
                            open_state("ba", "1", {{"", "01"}, {"a", "01"}, {"b", "10"}}),
                            open_state("aaa", "00", {{"", ""}})}};
    for (auto [w, v] : std::vector<std::pair<std::string, std::string>>{{"aaaa", "000"}, {"aaab", "001"}, {"aab", "010"},
                                                                        {"aba", "011"},  {"abb", "100"},  {"baa", "101"},
                                                                        {"bab", "110"},  {"bb", "111"}})
        t.states.push_back(complete_word(w, v));
    return t;
}

}  // namespace fixtures
