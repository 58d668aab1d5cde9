#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aifv/bitstring.hpp"
#include "aifv/error.hpp"

namespace aifv {

/// Non-empty finite set of bit strings, stored sorted and deduplicated.
class WordSet {
public:
    using const_iterator = std::vector<BitString>::const_iterator;

    WordSet() : words_{BitString{}} {}

    explicit WordSet(std::vector<BitString> words) : words_(std::move(words)) { normalize(); }

    WordSet(std::initializer_list<BitString> words) : words_(words) { normalize(); }

    WordSet(std::initializer_list<std::string_view> words) {
        for (auto w : words) words_.emplace_back(w);
        normalize();
    }

    /// {λ}
    static WordSet lambda() { return WordSet(); }

    std::size_t size() const noexcept { return words_.size(); }
    const_iterator begin() const noexcept { return words_.begin(); }
    const_iterator end() const noexcept { return words_.end(); }
    const BitString& operator[](std::size_t i) const noexcept { return words_[i]; }
    const std::vector<BitString>& words() const noexcept { return words_; }

    bool contains(const BitString& w) const { return std::binary_search(words_.begin(), words_.end(), w); }

    std::size_t max_length() const noexcept {
        std::size_t n = 0;
        for (const auto& w : words_) n = std::max(n, w.size());
        return n;
    }

    /// Shortest member, ties broken lexicographically.
    const BitString& shortest() const noexcept {
        const BitString* best = &words_.front();
        for (const auto& w : words_)
            if (w.size() < best->size()) best = &w;
        return *best;
    }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (i) out += ", ";
            out += words_[i].empty() ? std::string("λ") : words_[i].to_string();
        }
        return out + "}";
    }

    friend bool operator==(const WordSet&, const WordSet&) = default;
    friend auto operator<=>(const WordSet&, const WordSet&) = default;

private:
    void normalize() {
        if (words_.empty()) throw Error(Errc::empty_word_set, "a word set must have at least one member");
        std::sort(words_.begin(), words_.end());
        words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
    }

    std::vector<BitString> words_;
};

inline std::ostream& operator<<(std::ostream& os, const WordSet& s) { return os << s.to_string(); }

/// {p·w | w ∈ s}
inline WordSet prefix_all(const BitString& p, const WordSet& s) {
    std::vector<BitString> out;
    out.reserve(s.size());
    for (const auto& w : s) out.push_back(p + w);
    return WordSet(std::move(out));
}

/// True iff some member of `s` is a prefix of `w`.
inline bool has_prefix_in(const BitString& w, const WordSet& s) {
    return std::any_of(s.begin(), s.end(), [&](const BitString& q) { return is_prefix(q, w); });
}

/// f_cmn
inline BitString common_prefix(const WordSet& s) {
    // In sorted order the first and last members bound every common prefix.
    const BitString& first = *s.begin();
    const BitString& last = *(s.end() - 1);
    return first.substr(0, first.common_prefix_length(last));
}

inline bool is_prefix_free(const WordSet& s) {
    // A prefix sorts immediately before some extension of itself, so checking
    // neighbours suffices.
    for (std::size_t i = 1; i < s.size(); ++i)
        if (is_prefix(s[i - 1], s[i])) return false;
    return true;
}

namespace detail {

inline bool full_node(const WordSet& s, BitString& v, std::size_t depth_limit) {
    if (has_prefix_in(v, s)) return true;
    if (v.size() >= depth_limit) return false;
    v.push_back(false);
    bool left = full_node(s, v, depth_limit);
    v.pop_back();
    if (!left) return false;
    v.push_back(true);
    bool right = full_node(s, v, depth_limit);
    v.pop_back();
    return right;
}

inline void collect_frontier(const WordSet& s, BitString& v, std::vector<BitString>& out) {
    if (v.size() > s.max_length()) return;
    bool relevant = std::any_of(s.begin(), s.end(), [&](const BitString& w) { return comparable(v, w); });
    if (!relevant) return;
    if (full_node(s, v, s.max_length())) {
        out.push_back(v);
        return;
    }
    for (bool bit : {false, true}) {
        v.push_back(bit);
        collect_frontier(s, v, out);
        v.pop_back();
    }
}

}  // namespace detail

/// Membership of `p` in F_full(s).
inline bool in_full_closure(const WordSet& s, const BitString& p) {
    BitString v = p;
    return detail::full_node(s, v, std::max(s.max_length(), p.size()));
}

/// F_red: the minimal members of F_full(s).
inline WordSet reduce(const WordSet& s) {
    std::vector<BitString> out;
    BitString root;
    detail::collect_frontier(s, root, out);
    return WordSet(std::move(out));
}

/// {f_cmn(s) ⊘ q | q ∈ F_red(s)}
inline WordSet to_basic_mode(const WordSet& s) {
    BitString cmn = common_prefix(s);
    std::vector<BitString> out;
    for (const auto& q : reduce(s)) out.push_back(strip_prefix(cmn, q));
    return WordSet(std::move(out));
}

inline constexpr std::size_t all_strings_cap = 20;

/// B_n
inline WordSet all_strings(std::size_t n) {
    if (n > all_strings_cap)
        throw Error(Errc::cap_exceeded, "all_strings(" + std::to_string(n) + ") exceeds cap " +
                                            std::to_string(all_strings_cap));
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BitString::from_uint(v, n));
    return WordSet(std::move(out));
}

/// Pads every member to length n with all possible suffixes.
inline WordSet expand_to_fixed_length(const WordSet& mode, std::size_t n) {
    std::vector<BitString> out;
    for (const auto& q : mode) {
        if (q.size() > n)
            throw Error(Errc::member_too_long, "'" + q.to_string() + "' is longer than " + std::to_string(n));
        for (const auto& b : all_strings(n - q.size())) out.push_back(q + b);
    }
    return WordSet(std::move(out));
}

inline constexpr std::size_t basic_mode_cap = 3;

/// All basic modes of delay at most n, each derived from a pair of non-empty
/// (n-1)-bit subsets under the 0 and 1 branches.
inline std::vector<WordSet> enumerate_basic_modes(std::size_t n, std::size_t cap = basic_mode_cap) {
    if (n < 2) throw Error(Errc::index_out_of_range, "enumerate_basic_modes needs n >= 2");
    if (n > cap)
        throw Error(Errc::cap_exceeded, "enumerate_basic_modes(" + std::to_string(n) + ") exceeds cap " +
                                            std::to_string(cap));
    const WordSet half = all_strings(n - 1);
    const std::size_t count = half.size();
    std::set<WordSet> found;
    for (std::uint64_t lo = 1; lo < (std::uint64_t{1} << count); ++lo) {
        for (std::uint64_t up = 1; up < (std::uint64_t{1} << count); ++up) {
            std::vector<BitString> words;
            for (std::size_t i = 0; i < count; ++i) {
                if ((lo >> i) & 1u) words.push_back(BitString("0") + half[i]);
                if ((up >> i) & 1u) words.push_back(BitString("1") + half[i]);
            }
            found.insert(to_basic_mode(WordSet(std::move(words))));
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace aifv
