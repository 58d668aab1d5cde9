#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "aifv/bitstring.hpp"
#include "aifv/codec.hpp"
#include "aifv/codetree.hpp"
#include "aifv/error.hpp"
#include "aifv/wordset.hpp"

namespace aifv {

/// Rewrites every mode into its basic form and shifts codewords so that the
/// produced bits are unchanged apart from the termination codeword.
inline CodeTreeSet to_basic(const CodeTreeSet& set) {
    require_valid(set, Errc::invalid_set);
    std::vector<BitString> cmn;
    for (const auto& t : set.trees()) cmn.push_back(common_prefix(t.mode));
    std::vector<CodeTree> out;
    for (TreeId k = 0; k < set.size(); ++k) {
        const CodeTree& t = set.tree(k);
        CodeTree nt{{}, t.point, to_basic_mode(t.mode)};
        for (std::size_t a = 0; a < set.alphabet_size(); ++a) {
            BitString shifted = t.cword[a] + cmn[t.point[a]];
            if (!is_prefix(cmn[k], shifted))
                throw Error(Errc::prefix_mismatch, "tree " + std::to_string(k) + " symbol " + std::to_string(a) +
                                                       ": common prefix '" + cmn[k].to_string() +
                                                       "' does not lead '" + shifted.to_string() + "'");
            nt.cword.push_back(shifted.substr(cmn[k].size()));
        }
        out.push_back(std::move(nt));
    }
    return CodeTreeSet(set.alphabet_size(), std::move(out));
}

/// Calls `visit` on every sequence over `alphabet_size` symbols with length
/// at most `max_len`, shorter sequences first.
inline void for_each_sequence(std::size_t alphabet_size, std::size_t max_len,
                              const std::function<void(const SymbolSeq&)>& visit) {
    for (std::size_t len = 0; len <= max_len; ++len) {
        SymbolSeq xs(len);
        while (true) {
            visit(xs);
            std::size_t i = len;
            while (i > 0 && xs[i - 1].id + 1 == alphabet_size) xs[--i].id = 0;
            if (i == 0) break;
            ++xs[i - 1].id;
        }
    }
}

/// Bounded check of ~: for every sequence of length at most `max_len`, both
/// outputs agree once each termination codeword is cut to a suitable prefix.
inline bool equivalent_up_to_termination(const CodeTreeSet& a, const CodeTreeSet& b, std::size_t max_len = 5) {
    Codec ca(a), cb(b);
    if (a.alphabet_size() != b.alphabet_size()) return false;
    bool same = true;
    for_each_sequence(a.alphabet_size(), max_len, [&](const SymbolSeq& xs) {
        if (!same) return;
        auto ra = ca.encode(xs);
        auto rb = cb.encode(xs);
        std::size_t need = std::max(ra.body_len, rb.body_len);
        if (ra.bits.common_prefix_length(rb.bits) < need) same = false;
    });
    return same;
}

inline constexpr std::size_t mode_inference_rounds = 64;
inline constexpr std::size_t mode_inference_max_length = 16;

/// Fixed point of Mode_k = F_red(Expands_k), starting from all modes {λ}.
/// Used when a code is given only by codewords and switching targets.
/// Incomplete trees make the modes grow every round, so members longer than
/// `max_length` abort the search.
inline std::vector<WordSet> infer_modes(std::size_t alphabet_size, const std::vector<std::vector<BitString>>& cwords,
                                        const std::vector<std::vector<TreeId>>& points,
                                        std::size_t max_length = mode_inference_max_length) {
    const std::size_t count = cwords.size();
    std::vector<WordSet> modes(count, WordSet::lambda());
    for (std::size_t round = 0; round < mode_inference_rounds; ++round) {
        std::vector<WordSet> next;
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<BitString> flat;
            for (std::size_t a = 0; a < alphabet_size; ++a)
                for (const auto& q : modes.at(points[k][a])) flat.push_back(cwords[k][a] + q);
            next.push_back(reduce(WordSet(std::move(flat))));
            if (next.back().max_length() > max_length)
                throw Error(Errc::structure_violation, "inferred mode of tree " + std::to_string(k) + " exceeds " +
                                                           std::to_string(max_length) + " bits");
        }
        if (next == modes) return modes;
        modes = std::move(next);
    }
    throw Error(Errc::structure_violation, "mode inference did not reach a fixed point");
}

}  // namespace aifv
