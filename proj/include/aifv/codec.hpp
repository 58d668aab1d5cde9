#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aifv/bitstring.hpp"
#include "aifv/codetree.hpp"
#include "aifv/error.hpp"

namespace aifv {

struct EncodeResult {
    BitString bits;          // body followed by the termination codeword
    std::size_t body_len = 0;
    TreeId final_tree = 0;
    BitString termination;
};

struct DecodeTrace {
    SymbolSeq symbols;
    std::vector<std::size_t> per_symbol_lookahead;  // bits read past each symbol's codeword
    std::size_t bits_consumed = 0;                  // codeword bits committed
    std::size_t bits_examined = 0;                  // furthest bit inspected
    TreeId final_tree = 0;
};

inline std::size_t max_realized_lookahead(const DecodeTrace& trace) {
    std::size_t m = 0;
    for (auto v : trace.per_symbol_lookahead) m = std::max(m, v);
    return m;
}

/// Encoder and decoder bound to one validated code-tree set.
class Codec {
public:
    explicit Codec(CodeTreeSet set) : set_(std::move(set)) {
        require_valid(set_, Errc::invalid_set);
        queries_.resize(set_.size());
        for (TreeId k = 0; k < set_.size(); ++k) {
            auto& q = queries_[k];
            q = set_.mode(k).words();
            std::stable_sort(q.begin(), q.end(), [](const BitString& x, const BitString& y) { return x.size() < y.size(); });
        }
    }

    const CodeTreeSet& set() const noexcept { return set_; }

    /// The termination codeword used for tree k: its shortest mode member.
    const BitString& termination(TreeId k) const { return queries_.at(k).front(); }

    EncodeResult encode(std::span<const Symbol> xs) const {
        EncodeResult out;
        out.final_tree = walk(xs, out.bits);
        out.body_len = out.bits.size();
        out.termination = termination(out.final_tree);
        out.bits += out.termination;
        return out;
    }

    BitString encode_without_termination(std::span<const Symbol> xs) const {
        BitString bits;
        walk(xs, bits);
        return bits;
    }

    /// Decodes exactly `length` symbols; bits after the last needed one are ignored.
    DecodeTrace decode(const BitString& bits, std::size_t length) const {
        DecodeTrace trace;
        std::size_t pos = 0;
        TreeId k = 0;
        for (std::size_t i = 0; i < length; ++i) {
            std::optional<Symbol> found;
            std::size_t lookahead = 0;
            bool more_input_could_help = false;
            for (std::size_t a = 0; a < set_.alphabet_size(); ++a) {
                const BitString& cw = set_.cword(k, Symbol{a});
                if (!bits.has_prefix_at(cw, pos)) {
                    if (extends_to(bits, pos, cw)) more_input_could_help = true;
                    continue;
                }
                std::size_t after = pos + cw.size();
                const BitString* hit = nullptr;
                for (const auto& q : queries_[set_.point(k, Symbol{a})]) {
                    if (bits.has_prefix_at(q, after)) {
                        hit = &q;
                        break;
                    }
                    if (extends_to(bits, after, q)) more_input_could_help = true;
                }
                if (!hit) continue;
                if (found)
                    throw Error(Errc::ambiguous_match, where(i, pos, k) + ": symbols " + std::to_string(found->id) +
                                                           " and " + std::to_string(a) + " both match");
                found = Symbol{a};
                lookahead = hit->size();
            }
            if (!found) {
                if (more_input_could_help)
                    throw Error(Errc::truncated, where(i, pos, k) + ": input ends before the symbol is confirmed");
                throw Error(Errc::no_match, where(i, pos, k) + ": no codeword of the tree matches");
            }
            std::size_t cw_len = set_.cword(k, *found).size();
            trace.bits_examined = std::max(trace.bits_examined, pos + cw_len + lookahead);
            trace.symbols.push_back(*found);
            trace.per_symbol_lookahead.push_back(lookahead);
            pos += cw_len;
            k = set_.point(k, *found);
        }
        trace.bits_consumed = pos;
        trace.final_tree = k;
        return trace;
    }

private:
    TreeId walk(std::span<const Symbol> xs, BitString& bits) const {
        TreeId k = 0;
        for (Symbol a : xs) {
            bits += set_.cword(k, a);
            k = set_.point(k, a);
        }
        return k;
    }

    // True iff the input from `pos` on is a proper prefix of `w`.
    static bool extends_to(const BitString& bits, std::size_t pos, const BitString& w) {
        std::size_t rest = bits.size() - std::min(pos, bits.size());
        return rest < w.size() && bits.common_prefix_length(w, pos) == rest;
    }

    static std::string where(std::size_t i, std::size_t pos, TreeId k) {
        return "symbol " + std::to_string(i) + " at bit " + std::to_string(pos) + " in tree " + std::to_string(k);
    }

    CodeTreeSet set_;
    std::vector<std::vector<BitString>> queries_;  // mode members, shortest first
};

inline EncodeResult encode(const CodeTreeSet& set, std::span<const Symbol> xs) { return Codec(set).encode(xs); }

inline BitString encode_without_termination(const CodeTreeSet& set, std::span<const Symbol> xs) {
    return Codec(set).encode_without_termination(xs);
}

inline DecodeTrace decode(const CodeTreeSet& set, const BitString& bits, std::size_t length) {
    return Codec(set).decode(bits, length);
}

}  // namespace aifv
