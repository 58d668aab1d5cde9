#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "aifv/error.hpp"

namespace aifv {

/// Finite binary string, possibly empty (λ). Bits are packed MSB-first into
/// 64-bit words; bits past size() in the last word are always zero.
class BitString {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitString() = default;

    /// Parses '0'/'1' characters; anything else is a parse error.
    explicit BitString(std::string_view text) {
        words_.reserve((text.size() + 63) / 64);
        for (char c : text) {
            if (c != '0' && c != '1')
                throw Error(Errc::parse_error, "invalid bit character in \"" + std::string(text) + "\"");
            push_back(c == '1');
        }
    }

    static BitString repeat(bool bit, std::size_t count) {
        BitString out;
        for (std::size_t i = 0; i < count; ++i) out.push_back(bit);
        return out;
    }

    /// The low `count` bits of `value`, most significant first.
    static BitString from_uint(std::uint64_t value, std::size_t count) {
        BitString out;
        for (std::size_t i = count; i-- > 0;) out.push_back(i < 64 && ((value >> i) & 1u));
        return out;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool operator[](std::size_t i) const noexcept { return (words_[i / 64] >> (63 - i % 64)) & 1u; }

    bool at(std::size_t i) const {
        if (i >= size_) throw Error(Errc::index_out_of_range, "bit index " + std::to_string(i));
        return (*this)[i];
    }

    void push_back(bool bit) {
        if (size_ % 64 == 0) words_.push_back(0);
        if (bit) words_.back() |= std::uint64_t{1} << (63 - size_ % 64);
        ++size_;
    }

    void pop_back() {
        if (size_ == 0) throw Error(Errc::index_out_of_range, "pop_back on empty bit string");
        --size_;
        words_[size_ / 64] &= ~(std::uint64_t{1} << (63 - size_ % 64));
        if (size_ % 64 == 0) words_.pop_back();
    }

    BitString& append(const BitString& other) {
        if (size_ % 64 == 0) {
            words_.insert(words_.end(), other.words_.begin(), other.words_.end());
            size_ += other.size_;
            return *this;
        }
        for (std::size_t pos = 0; pos < other.size_; pos += 64) {
            std::size_t n = std::min<std::size_t>(64, other.size_ - pos);
            append_bits(other.chunk(pos), n);
        }
        return *this;
    }

    BitString& operator+=(const BitString& other) { return append(other); }

    friend BitString operator+(BitString lhs, const BitString& rhs) {
        lhs.append(rhs);
        return lhs;
    }

    BitString substr(std::size_t pos, std::size_t len = npos) const {
        if (pos > size_) throw Error(Errc::index_out_of_range, "substr start " + std::to_string(pos));
        len = std::min(len, size_ - pos);
        BitString out;
        out.words_.reserve((len + 63) / 64);
        for (std::size_t off = 0; off < len; off += 64) {
            std::size_t n = std::min<std::size_t>(64, len - off);
            out.append_bits(chunk(pos + off), n);
        }
        return out;
    }

    /// 64 bits starting at `pos`, left-aligned, zero beyond the end.
    std::uint64_t chunk(std::size_t pos) const noexcept {
        if (pos >= size_) return 0;
        std::size_t w = pos / 64, s = pos % 64;
        std::uint64_t hi = words_[w] << s;
        if (s != 0 && w + 1 < words_.size()) hi |= words_[w + 1] >> (64 - s);
        std::size_t avail = size_ - pos;
        if (avail < 64) hi &= ~std::uint64_t{0} << (64 - avail);
        return hi;
    }

    /// Length of the longest common prefix of this[offset..] and `other`.
    std::size_t common_prefix_length(const BitString& other, std::size_t offset = 0) const noexcept {
        if (offset > size_) return 0;
        std::size_t limit = std::min(size_ - offset, other.size_);
        for (std::size_t i = 0; i < limit; i += 64) {
            std::uint64_t diff = chunk(offset + i) ^ other.chunk(i);
            if (diff != 0) return std::min(limit, i + static_cast<std::size_t>(std::countl_zero(diff)));
        }
        return limit;
    }

    /// True iff `prefix` ⪯ this[offset..].
    bool has_prefix_at(const BitString& prefix, std::size_t offset) const noexcept {
        if (offset > size_ || prefix.size_ > size_ - offset) return false;
        return common_prefix_length(prefix, offset) == prefix.size_;
    }

    std::string to_string() const {
        std::string out;
        out.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i] ? '1' : '0');
        return out;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const BitString& a, const BitString& b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    /// Lexicographic order with 0 < 1; a proper prefix sorts before its extensions.
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
        std::size_t lcp = a.common_prefix_length(b);
        if (lcp == a.size_ || lcp == b.size_) return a.size_ <=> b.size_;
        return a[lcp] ? std::strong_ordering::greater : std::strong_ordering::less;
    }

private:
    // Appends the top n bits of `bits`; the remaining low bits are ignored.
    void append_bits(std::uint64_t bits, std::size_t n) {
        if (n == 0) return;
        if (n < 64) bits &= ~std::uint64_t{0} << (64 - n);
        std::size_t s = size_ % 64;
        if (s == 0) {
            words_.push_back(bits);
        } else {
            words_.back() |= bits >> s;
            if (s + n > 64) words_.push_back(bits << (64 - s));
        }
        size_ += n;
    }

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const BitString& w) {
    return os << '\'' << (w.empty() ? std::string("λ") : w.to_string()) << '\'';
}

namespace literals {
inline BitString operator""_bits(const char* text, std::size_t len) { return BitString(std::string_view(text, len)); }
}  // namespace literals

/// w ⪯ w2
inline bool is_prefix(const BitString& w, const BitString& w2) noexcept { return w2.has_prefix_at(w, 0); }

/// w ≺ w2
inline bool is_strict_prefix(const BitString& w, const BitString& w2) noexcept {
    return w.size() < w2.size() && is_prefix(w, w2);
}

/// w ∥ w2
inline bool comparable(const BitString& w, const BitString& w2) noexcept {
    return w.common_prefix_length(w2) == std::min(w.size(), w2.size());
}

/// pre ⊘ w
inline BitString strip_prefix(const BitString& pre, const BitString& w) {
    if (!is_prefix(pre, w))
        throw Error(Errc::not_a_prefix, "'" + pre.to_string() + "' is not a prefix of '" + w.to_string() + "'");
    return w.substr(pre.size());
}

/// Exact dyadic rational in [0, 1]. A value below one is kept as its binary
/// expansion 0.d1d2...dn with trailing zeros trimmed; one is a separate flag.
class DyadicRational {
public:
    DyadicRational() = default;

    static DyadicRational zero() { return {}; }

    static DyadicRational one() {
        DyadicRational r;
        r.one_ = true;
        return r;
    }

    /// The value 0.b1b2...bn for the given digits.
    static DyadicRational from_digits(BitString digits) {
        while (!digits.empty() && !digits[digits.size() - 1]) digits.pop_back();
        DyadicRational r;
        r.digits_ = std::move(digits);
        return r;
    }

    /// numerator / 2^exponent; must not exceed one.
    static DyadicRational from_ratio(std::uint64_t numerator, unsigned exponent) {
        if (exponent > 63) throw Error(Errc::cap_exceeded, "dyadic exponent above 63");
        std::uint64_t denom = std::uint64_t{1} << exponent;
        if (numerator > denom) throw Error(Errc::index_out_of_range, "dyadic value above one");
        if (numerator == denom) return one();
        return from_digits(BitString::from_uint(numerator, exponent));
    }

    bool is_one() const noexcept { return one_; }
    const BitString& digits() const noexcept { return digits_; }

    /// Exponent of the normalized form (numerator odd, or zero with exponent 0).
    unsigned exponent() const noexcept { return one_ ? 0u : static_cast<unsigned>(digits_.size()); }

    std::uint64_t numerator() const {
        if (one_) return 1;
        if (digits_.size() > 63) throw Error(Errc::cap_exceeded, "numerator does not fit 64 bits");
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < digits_.size(); ++i) n = (n << 1) | (digits_[i] ? 1u : 0u);
        return n;
    }

    double to_double() const noexcept {
        if (one_) return 1.0;
        double v = 0.0, scale = 0.5;
        for (std::size_t i = 0; i < digits_.size() && scale > 0.0; ++i, scale /= 2) v += digits_[i] ? scale : 0.0;
        return v;
    }

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;

    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) noexcept {
        if (a.one_ || b.one_) return static_cast<int>(a.one_) <=> static_cast<int>(b.one_);
        // Trailing zeros are trimmed, so a proper prefix is the smaller value
        // and otherwise the first differing digit decides.
        std::size_t lcp = a.digits_.common_prefix_length(b.digits_);
        bool a_ends = lcp == a.digits_.size(), b_ends = lcp == b.digits_.size();
        if (a_ends || b_ends) return static_cast<int>(b_ends) <=> static_cast<int>(a_ends);
        return a.digits_[lcp] ? std::strong_ordering::greater : std::strong_ordering::less;
    }

private:
    BitString digits_;
    bool one_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const DyadicRational& r) {
    if (r.is_one()) return os << "1";
    if (r.digits().empty()) return os << "0";
    return os << "0b0." << r.digits().to_string();
}

/// f_dec
inline DyadicRational to_fraction(const BitString& w) { return DyadicRational::from_digits(w); }

/// Half-open interval [lo, hi) with dyadic endpoints.
class DyadicInterval {
public:
    DyadicInterval(DyadicRational lo, DyadicRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!(lo_ < hi_)) throw Error(Errc::index_out_of_range, "empty dyadic interval");
    }

    const DyadicRational& lo() const noexcept { return lo_; }
    const DyadicRational& hi() const noexcept { return hi_; }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

private:
    DyadicRational lo_;
    DyadicRational hi_;
};

inline std::ostream& operator<<(std::ostream& os, const DyadicInterval& i) {
    return os << '[' << i.lo() << ", " << i.hi() << ')';
}

/// F_prob: [f_dec(w), f_dec(w) + 2^-|w|)
inline DyadicInterval to_interval(const BitString& w) {
    // The upper end is w read as an integer plus one, i.e. the trailing run of
    // ones becomes zeros and the last zero becomes a one.
    BitString up = w;
    while (!up.empty() && up[up.size() - 1]) up.pop_back();
    if (up.empty()) return DyadicInterval(to_fraction(w), DyadicRational::one());
    up.pop_back();
    up.push_back(true);
    return DyadicInterval(to_fraction(w), DyadicRational::from_digits(std::move(up)));
}

inline bool interval_intersects(const DyadicInterval& a, const DyadicInterval& b) noexcept {
    return a.lo() < b.hi() && b.lo() < a.hi();
}

inline bool interval_contains(const DyadicInterval& outer, const DyadicInterval& inner) noexcept {
    return outer.lo() <= inner.lo() && inner.hi() <= outer.hi();
}

/// True iff `inner` lies inside the union of `pieces`.
inline bool interval_covered_by(const DyadicInterval& inner, std::vector<DyadicInterval> pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) { return x.lo() < y.lo(); });
    DyadicRational reach = inner.lo();
    for (const auto& p : pieces) {
        if (reach < p.lo()) break;
        if (reach < p.hi()) reach = p.hi();
        if (inner.hi() <= reach) return true;
    }
    return inner.hi() <= reach;
}

}  // namespace aifv

template <>
struct std::hash<aifv::BitString> {
    std::size_t operator()(const aifv::BitString& w) const noexcept {
        std::size_t h = std::hash<std::size_t>{}(w.size());
        for (auto word : w.words()) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::uint64_t>{}(word);
        return h;
    }
};
