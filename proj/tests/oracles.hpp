#pragma once

// Brute-force reference implementations over plain std::string bit strings.
// They follow the definitions literally and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Str = std::string;
using StrSet = std::set<std::string>;

inline bool prefix(const Str& p, const Str& w) { return p.size() <= w.size() && w.compare(0, p.size(), p) == 0; }

inline bool comparable(const Str& a, const Str& b) { return prefix(a, b) || prefix(b, a); }

inline std::vector<Str> strings_of_length(std::size_t n) {
    std::vector<Str> out{""};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Str> next;
        for (const auto& s : out) {
            next.push_back(s + "0");
            next.push_back(s + "1");
        }
        out = std::move(next);
    }
    return out;
}

inline std::size_t max_len(const StrSet& s) {
    std::size_t n = 0;
    for (const auto& w : s) n = std::max(n, w.size());
    return n;
}

/// Every extension of p is comparable to some member. Checking the
/// extensions of length max(|p|, longest member) is enough.
inline bool full(const StrSet& s, const Str& p) {
    std::size_t depth = std::max(p.size(), max_len(s)) - p.size();
    for (const auto& suffix : strings_of_length(depth)) {
        Str x = p + suffix;
        bool hit = std::any_of(s.begin(), s.end(), [&](const Str& w) { return comparable(x, w); });
        if (!hit) return false;
    }
    return true;
}

/// Full strings none of whose proper prefixes is full.
inline StrSet reduce(const StrSet& s) {
    StrSet out;
    for (std::size_t n = 0; n <= max_len(s); ++n)
        for (const auto& p : strings_of_length(n)) {
            if (!full(s, p)) continue;
            bool minimal = true;
            for (std::size_t k = 0; k < p.size() && minimal; ++k)
                if (full(s, p.substr(0, k))) minimal = false;
            if (minimal) out.insert(p);
        }
    return out;
}

inline Str common_prefix(const StrSet& s) {
    Str best = *s.begin();
    for (const auto& w : s) {
        std::size_t i = 0;
        while (i < best.size() && i < w.size() && best[i] == w[i]) ++i;
        best.resize(i);
    }
    return best;
}

inline bool prefix_free(const StrSet& s) {
    for (const auto& a : s)
        for (const auto& b : s)
            if (a != b && prefix(a, b)) return false;
    return true;
}

/// f_dec as numerator over 2^|w| (|w| <= 62).
inline std::uint64_t numerator(const Str& w) {
    std::uint64_t n = 0;
    for (char c : w) n = n * 2 + (c == '1');
    return n;
}

/// [lo, hi) scaled to a common denominator 2^62.
inline std::pair<std::uint64_t, std::uint64_t> interval(const Str& w) {
    std::uint64_t lo = numerator(w) << (62 - w.size());
    return {lo, lo + (std::uint64_t{1} << (62 - w.size()))};
}

struct Tree {
    std::vector<Str> cword;
    std::vector<std::size_t> point;
    StrSet mode;
};

/// Encodes with the shortest (then smallest) mode member as termination.
inline Str encode(const std::vector<Tree>& trees, const std::vector<std::size_t>& xs, std::size_t* body = nullptr) {
    Str out;
    std::size_t k = 0;
    for (auto a : xs) {
        out += trees[k].cword[a];
        k = trees[k].point[a];
    }
    if (body) *body = out.size();
    Str term = *trees[k].mode.begin();
    for (const auto& q : trees[k].mode)
        if (q.size() < term.size() || (q.size() == term.size() && q < term)) term = q;
    return out + term;
}

}  // namespace oracle
