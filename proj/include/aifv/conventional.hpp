#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aifv/bitstring.hpp"
#include "aifv/codetree.hpp"
#include "aifv/error.hpp"
#include "aifv/transform.hpp"
#include "aifv/wordset.hpp"

namespace aifv {

/// A conventional AIFV code tree given by the node path of each symbol.
/// Node kinds are derived from the shape those paths span.
struct ConventionalTree {
    std::vector<BitString> codewords;  // per symbol

    friend bool operator==(const ConventionalTree&, const ConventionalTree&) = default;
};

enum class NodeKind { leaf, complete, master, slave0, slave1 };

struct ConventionalNode {
    BitString path;
    NodeKind kind;
    std::optional<Symbol> symbol;
    std::size_t degree = 0;  // masters: run of slave-0 nodes below; leaves: 0
};

/// Classifies every node of the tree. Throws StructureViolation for shapes
/// no conventional AIFV tree can have.
inline std::vector<ConventionalNode> classify_nodes(const ConventionalTree& tree) {
    std::map<BitString, std::optional<Symbol>> nodes;
    for (std::size_t a = 0; a < tree.codewords.size(); ++a) {
        const BitString& cw = tree.codewords[a];
        for (std::size_t n = 0; n <= cw.size(); ++n) nodes.try_emplace(cw.substr(0, n));
        auto& slot = nodes[cw];
        if (slot)
            throw Error(Errc::structure_violation, "symbols " + std::to_string(slot->id) + " and " + std::to_string(a) +
                                                       " share node '" + cw.to_string() + "'");
        slot = Symbol{a};
    }
    auto child = [&](const BitString& p, bool bit) {
        BitString c = p;
        c.push_back(bit);
        return nodes.count(c) != 0;
    };
    std::vector<ConventionalNode> out;
    for (const auto& [path, symbol] : nodes) {
        bool c0 = child(path, false), c1 = child(path, true);
        ConventionalNode node{path, NodeKind::leaf, symbol, 0};
        if (c0 && c1) {
            node.kind = NodeKind::complete;
            if (symbol)
                throw Error(Errc::structure_violation, "symbol on complete node '" + path.to_string() + "'");
        } else if (c0 || c1) {
            node.kind = symbol ? NodeKind::master : (c0 ? NodeKind::slave0 : NodeKind::slave1);
        }
        out.push_back(node);
    }
    // Degrees need every node kind first.
    std::map<BitString, NodeKind> kinds;
    for (const auto& n : out) kinds[n.path] = n.kind;
    for (auto& n : out) {
        if (n.kind != NodeKind::master) continue;
        BitString p = n.path;
        p.push_back(false);
        while (kinds.count(p) && kinds[p] == NodeKind::slave0) {
            ++n.degree;
            p.push_back(false);
        }
        if (n.degree == 0)
            throw Error(Errc::structure_violation,
                        "master node '" + n.path.to_string() + "' must be followed by a slave-0 node");
    }
    return out;
}

namespace detail {

inline CodeTreeSet finish_import(std::size_t alphabet_size, const std::vector<ConventionalTree>& trees,
                                 const std::vector<std::vector<TreeId>>& points, std::vector<WordSet> modes,
                                 std::size_t max_delay) {
    std::vector<CodeTree> out;
    for (std::size_t k = 0; k < trees.size(); ++k) out.push_back({trees[k].codewords, points[k], std::move(modes[k])});
    CodeTreeSet set(alphabet_size, std::move(out));
    auto report = validate(set);
    if (!report.valid())
        throw Error(Errc::structure_violation,
                    "imported trees violate the decodability constraints (" + std::to_string(report.violations.size()) + " violations)");
    if (decoding_delay(set) > max_delay)
        throw Error(Errc::structure_violation, "imported code exceeds " + std::to_string(max_delay) + " bits of delay");
    return set;
}

inline std::size_t common_alphabet(const std::vector<ConventionalTree>& trees) {
    std::size_t m = trees.front().codewords.size();
    for (const auto& t : trees)
        if (t.codewords.size() != m) throw Error(Errc::structure_violation, "trees disagree on the alphabet size");
    return m;
}

inline const ConventionalNode* find_node(const std::vector<ConventionalNode>& nodes, const BitString& path) {
    for (const auto& n : nodes)
        if (n.path == path) return &n;
    return nullptr;
}

}  // namespace detail

/// Binary AIFV code (two trees). Leaves switch to T_0, masters to T_1; the
/// modes are inferred from the switching behaviour.
inline CodeTreeSet import_aifv2(const std::vector<ConventionalTree>& trees) {
    if (trees.size() != 2) throw Error(Errc::structure_violation, "a binary AIFV code has exactly two trees");
    std::size_t m = detail::common_alphabet(trees);
    std::vector<std::vector<TreeId>> points(2, std::vector<TreeId>(m, 0));
    for (std::size_t k = 0; k < 2; ++k) {
        for (const auto& n : classify_nodes(trees[k])) {
            if (n.kind == NodeKind::leaf && !n.symbol)
                throw Error(Errc::structure_violation, "leaf without symbol at '" + n.path.to_string() + "'");
            if (n.kind == NodeKind::master) {
                if (n.degree != 1)
                    throw Error(Errc::structure_violation,
                                "master node '" + n.path.to_string() + "' must have exactly one slave-0 below it");
                points[k][n.symbol->id] = 1;
            }
        }
    }
    auto t1 = classify_nodes(trees[1]);
    const auto* root = detail::find_node(t1, BitString{});
    const auto* zero = detail::find_node(t1, BitString("0"));
    if (!root || root->kind != NodeKind::complete || !zero || zero->kind != NodeKind::slave1)
        throw Error(Errc::structure_violation, "T_1 needs a complete root whose 0-child is a slave-1 node");
    auto modes = infer_modes(m, {trees[0].codewords, trees[1].codewords}, points, 2);
    return detail::finish_import(m, trees, points, std::move(modes), 2);
}

/// Mode of tree n of an m-bit-delay conventional code: F_red of the m-bit
/// strings whose intervals lie in [2^-(m-n+1), 1), and {λ} for n = 0.
inline WordSet aifvm_mode(std::size_t m, std::size_t n) {
    if (n == 0) return WordSet::lambda();
    std::vector<BitString> words;
    for (const auto& w : all_strings(m))
        if (!is_prefix(BitString::repeat(false, m - n + 1), w)) words.push_back(w);
    return reduce(WordSet(std::move(words)));
}

/// AIFV-m code. A master of degree k >= 1 switches to tree m-k, so tree n
/// must hold a slave-1 node at 0^(m-n); leaves switch to T_0.
inline CodeTreeSet import_aifvm(const std::vector<ConventionalTree>& trees, std::size_t m) {
    if (m < 2) throw Error(Errc::structure_violation, "AIFV-m needs m >= 2");
    if (trees.size() != m) throw Error(Errc::structure_violation, "AIFV-m uses exactly m trees");
    std::size_t alphabet = detail::common_alphabet(trees);
    std::vector<std::vector<TreeId>> points(m, std::vector<TreeId>(alphabet, 0));
    for (std::size_t k = 0; k < m; ++k) {
        auto nodes = classify_nodes(trees[k]);
        for (const auto& n : nodes) {
            if (n.kind == NodeKind::leaf && !n.symbol)
                throw Error(Errc::structure_violation, "leaf without symbol at '" + n.path.to_string() + "'");
            if (n.kind == NodeKind::master) {
                if (n.degree >= m)
                    throw Error(Errc::structure_violation, "master node '" + n.path.to_string() + "' has degree " +
                                                               std::to_string(n.degree) + " >= m");
                points[k][n.symbol->id] = m - n.degree;
            }
        }
        if (k > 0) {
            const auto* slave = detail::find_node(nodes, BitString::repeat(false, m - k));
            if (!slave || slave->kind != NodeKind::slave1)
                throw Error(Errc::structure_violation, "tree " + std::to_string(k) + " needs a slave-1 node at '" +
                                                           BitString::repeat(false, m - k).to_string() + "'");
        }
    }
    std::vector<WordSet> modes;
    for (std::size_t k = 0; k < m; ++k) modes.push_back(aifvm_mode(m, k));
    return detail::finish_import(alphabet, trees, points, std::move(modes), m);
}

}  // namespace aifv
