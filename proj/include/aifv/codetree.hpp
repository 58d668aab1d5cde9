#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aifv/bitstring.hpp"
#include "aifv/error.hpp"
#include "aifv/wordset.hpp"

namespace aifv {

using TreeId = std::size_t;

/// Source symbol, an index into the alphabet.
struct Symbol {
    std::size_t id = 0;

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using SymbolSeq = std::vector<Symbol>;

struct CodeTree {
    std::vector<BitString> cword;  // per symbol
    std::vector<TreeId> point;     // per symbol
    WordSet mode;
};

/// A closed set of code trees over an alphabet of `alphabet_size` symbols in
/// which every tree is reachable from tree 0.
class CodeTreeSet {
public:
    CodeTreeSet(std::size_t alphabet_size, std::vector<CodeTree> trees)
        : alphabet_size_(alphabet_size), trees_(std::move(trees)) {
        check_structure();
    }

    std::size_t alphabet_size() const noexcept { return alphabet_size_; }
    std::size_t size() const noexcept { return trees_.size(); }
    const std::vector<CodeTree>& trees() const noexcept { return trees_; }

    const CodeTree& tree(TreeId k) const {
        check_tree(k);
        return trees_[k];
    }

    const BitString& cword(TreeId k, Symbol a) const { return tree(k).cword[checked(a)]; }
    TreeId point(TreeId k, Symbol a) const { return tree(k).point[checked(a)]; }
    const WordSet& mode(TreeId k) const { return tree(k).mode; }

    void check_tree(TreeId k) const {
        if (k >= trees_.size())
            throw Error(Errc::index_out_of_range, "tree " + std::to_string(k) + " of " + std::to_string(trees_.size()));
    }

    std::size_t checked(Symbol a) const {
        if (a.id >= alphabet_size_)
            throw Error(Errc::symbol_out_of_range,
                        "symbol " + std::to_string(a.id) + " outside alphabet of size " + std::to_string(alphabet_size_));
        return a.id;
    }

    friend bool operator==(const CodeTreeSet& x, const CodeTreeSet& y) {
        if (x.alphabet_size_ != y.alphabet_size_ || x.trees_.size() != y.trees_.size()) return false;
        for (std::size_t k = 0; k < x.trees_.size(); ++k) {
            const auto &tx = x.trees_[k], &ty = y.trees_[k];
            if (tx.cword != ty.cword || tx.point != ty.point || tx.mode != ty.mode) return false;
        }
        return true;
    }

private:
    void check_structure() const {
        if (alphabet_size_ == 0) throw Error(Errc::structure_violation, "alphabet must not be empty");
        if (trees_.empty()) throw Error(Errc::structure_violation, "a code-tree set needs at least one tree");
        for (std::size_t k = 0; k < trees_.size(); ++k) {
            const auto& t = trees_[k];
            if (t.cword.size() != alphabet_size_ || t.point.size() != alphabet_size_)
                throw Error(Errc::structure_violation,
                            "tree " + std::to_string(k) + " does not map every symbol of the alphabet");
            for (std::size_t a = 0; a < alphabet_size_; ++a)
                if (t.point[a] >= trees_.size())
                    throw Error(Errc::structure_violation, "tree " + std::to_string(k) + " symbol " +
                                                               std::to_string(a) + " points to missing tree " +
                                                               std::to_string(t.point[a]));
        }
        std::vector<bool> seen(trees_.size(), false);
        std::vector<TreeId> queue{0};
        seen[0] = true;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (TreeId next : trees_[queue[head]].point)
                if (!seen[next]) {
                    seen[next] = true;
                    queue.push_back(next);
                }
        for (std::size_t k = 0; k < seen.size(); ++k)
            if (!seen[k]) throw Error(Errc::structure_violation, "tree " + std::to_string(k) + " is unreachable from tree 0");
    }

    std::size_t alphabet_size_;
    std::vector<CodeTree> trees_;
};

/// Expand_k(a) = Cword_k(a)·Mode_{Point_k(a)}
inline WordSet expand(const CodeTreeSet& set, TreeId k, Symbol a) {
    return prefix_all(set.cword(k, a), set.mode(set.point(k, a)));
}

inline std::vector<WordSet> expands(const CodeTreeSet& set, TreeId k) {
    set.check_tree(k);
    std::vector<WordSet> out;
    for (std::size_t a = 0; a < set.alphabet_size(); ++a) out.push_back(expand(set, k, Symbol{a}));
    return out;
}

/// Union of the per-symbol expanded codeword sets of tree k.
inline WordSet flatten_expands(const CodeTreeSet& set, TreeId k) {
    std::vector<BitString> all;
    for (const auto& e : expands(set, k)) all.insert(all.end(), e.begin(), e.end());
    return WordSet(std::move(all));
}

enum class ValidationMethod { direct, interval, both };

enum class RuleClause {
    overlap,          // expansions of two different symbols are comparable
    missing_prefix,   // an expansion has no prefix in the tree's own mode
};

struct Violation {
    RuleClause clause;
    TreeId tree;
    Symbol symbol;
    std::optional<Symbol> other;  // second symbol for overlaps
    std::vector<BitString> words;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    ValidationMethod method;
    std::vector<Violation> violations;

    bool valid() const noexcept { return violations.empty(); }
};

namespace detail {

template <class Overlap, class Covered>
std::vector<Violation> check_decodability(const CodeTreeSet& set, Overlap overlap, Covered covered) {
    std::vector<Violation> out;
    for (TreeId k = 0; k < set.size(); ++k) {
        auto ex = expands(set, k);
        for (std::size_t a = 0; a < ex.size(); ++a)
            for (std::size_t b = a + 1; b < ex.size(); ++b)
                for (const auto& w : ex[a])
                    for (const auto& w2 : ex[b])
                        if (overlap(w, w2)) out.push_back({RuleClause::overlap, k, Symbol{a}, Symbol{b}, {w, w2}});
        for (std::size_t a = 0; a < ex.size(); ++a)
            for (const auto& w : ex[a])
                if (!covered(w, set.mode(k))) out.push_back({RuleClause::missing_prefix, k, Symbol{a}, std::nullopt, {w}});
    }
    return out;
}

inline std::vector<Violation> validate_direct(const CodeTreeSet& set) {
    return check_decodability(set, comparable, has_prefix_in);
}

inline std::vector<Violation> validate_interval(const CodeTreeSet& set) {
    auto overlap = [](const BitString& w, const BitString& w2) {
        return interval_intersects(to_interval(w), to_interval(w2));
    };
    // Only mode intervals at least as wide as the expansion's own interval take
    // part in the union. Narrower pieces could tile it (mode {0,1} tiles λ)
    // without any query being a prefix of the expansion.
    auto covered = [](const BitString& w, const WordSet& mode) {
        std::vector<DyadicInterval> pieces;
        for (const auto& q : mode)
            if (q.size() <= w.size()) pieces.push_back(to_interval(q));
        return interval_covered_by(to_interval(w), std::move(pieces));
    };
    return check_decodability(set, overlap, covered);
}

}  // namespace detail

/// Checks the decodability constraints. Lists every violation rather than stopping at the first.
inline ValidationReport validate(const CodeTreeSet& set, ValidationMethod method = ValidationMethod::direct) {
    switch (method) {
        case ValidationMethod::direct: return {method, detail::validate_direct(set)};
        case ValidationMethod::interval: return {method, detail::validate_interval(set)};
        case ValidationMethod::both: {
            auto direct = detail::validate_direct(set);
            if (direct != detail::validate_interval(set))
                throw Error(Errc::internal, "direct and interval validation disagree");
            return {method, std::move(direct)};
        }
    }
    throw Error(Errc::internal, "unknown validation method");
}

inline bool is_valid(const CodeTreeSet& set) { return detail::validate_direct(set).empty(); }

inline void require_valid(const CodeTreeSet& set, Errc code = Errc::unvalidated) {
    auto violations = detail::validate_direct(set);
    if (!violations.empty())
        throw Error(code, "code-tree set violates the decodability constraints (" + std::to_string(violations.size()) + " violations)");
}

/// Longest mode member that is a prefix of some expanded codeword of its tree.
inline std::size_t decoding_delay(const CodeTreeSet& set) {
    require_valid(set);
    std::size_t delay = 0;
    for (TreeId k = 0; k < set.size(); ++k) {
        WordSet flat = flatten_expands(set, k);
        for (const auto& q : set.mode(k))
            if (q.size() > delay && std::any_of(flat.begin(), flat.end(), [&](const BitString& w) { return is_prefix(q, w); }))
                delay = q.size();
    }
    return delay;
}

inline bool is_full(const CodeTreeSet& set) {
    require_valid(set);
    if (set.mode(0) != WordSet::lambda()) return false;
    for (TreeId k = 0; k < set.size(); ++k)
        if (reduce(set.mode(k)) != reduce(flatten_expands(set, k))) return false;
    return true;
}

/// Membership in the N-bit-delay class: every mode member has at most n bits.
inline bool check_delay_budget(const CodeTreeSet& set, std::size_t n) {
    return std::all_of(set.trees().begin(), set.trees().end(),
                       [n](const CodeTree& t) { return t.mode.max_length() <= n; });
}

}  // namespace aifv
