#include <gtest/gtest.h>

#include <random>

#include "aifv/bitstring.hpp"
#include "oracles.hpp"
#include "random_sets.hpp"

using namespace aifv;
using namespace aifv::literals;

namespace {

DyadicRational ratio(std::uint64_t n, unsigned e) { return DyadicRational::from_ratio(n, e); }

}  // namespace

TEST(BitString, EmptyIsLambda) {
    BitString w;
    EXPECT_TRUE(w.empty());
    EXPECT_EQ(w.size(), 0u);
    EXPECT_EQ(w.to_string(), "");
    EXPECT_EQ(w, ""_bits);
}

TEST(BitString, ParsesAndRenders) {
    EXPECT_EQ("0110"_bits.to_string(), "0110");
    EXPECT_EQ("0110"_bits.size(), 4u);
    EXPECT_TRUE("0110"_bits[1]);
    EXPECT_FALSE("0110"_bits[3]);
    EXPECT_THROW(BitString("01x"), Error);
    EXPECT_THROW("01"_bits.at(2), Error);
}

TEST(BitString, LongStringsCrossWordBoundaries) {
    std::string text;
    for (int i = 0; i < 200; ++i) text.push_back(i % 3 == 0 ? '1' : '0');
    BitString w(text);
    EXPECT_EQ(w.to_string(), text);
    EXPECT_EQ(w.substr(61, 70).to_string(), text.substr(61, 70));
    BitString joined = BitString(text.substr(0, 37)) + BitString(text.substr(37));
    EXPECT_EQ(joined, w);
    EXPECT_TRUE(w.has_prefix_at(BitString(text.substr(100, 90)), 100));
    EXPECT_FALSE(w.has_prefix_at(BitString(text.substr(100, 90)), 101));
}

TEST(BitString, EqualityIsExactContent) {
    EXPECT_NE("0"_bits, "00"_bits);
    EXPECT_NE("0"_bits, ""_bits);
    BitString a("1");
    a.push_back(false);
    a.pop_back();
    EXPECT_EQ(a, "1"_bits);
    // Bits cut off by substr must not linger in the packed words.
    EXPECT_EQ("01"_bits.substr(0, 1), "0"_bits);
    EXPECT_LT("01"_bits.substr(0, 1), "00"_bits);
    EXPECT_EQ(("0111"_bits.substr(0, 1) + "0"_bits), "00"_bits);
}

TEST(BitString, OrderIsLexicographicWithPrefixFirst) {
    EXPECT_LT(""_bits, "0"_bits);
    EXPECT_LT("0"_bits, "00"_bits);
    EXPECT_LT("011"_bits, "1"_bits);
    EXPECT_LT("10"_bits, "11"_bits);
}

TEST(PrefixOrder, Examples) {
    EXPECT_TRUE(is_prefix(""_bits, "100"_bits));
    EXPECT_TRUE(is_prefix("01"_bits, "01"_bits));
    EXPECT_FALSE(is_prefix("10"_bits, "01"_bits));
    EXPECT_FALSE(is_strict_prefix("01"_bits, "01"_bits));
    EXPECT_TRUE(is_strict_prefix("0"_bits, "01"_bits));
}

TEST(Comparable, Examples) {
    EXPECT_TRUE(comparable("1"_bits, "11"_bits));
    EXPECT_TRUE(comparable("11"_bits, "1"_bits));
    EXPECT_FALSE(comparable("011"_bits, "010"_bits));
}

TEST(Comparable, IsNotTransitive) {
    EXPECT_TRUE(comparable("0"_bits, ""_bits));
    EXPECT_TRUE(comparable(""_bits, "1"_bits));
    EXPECT_FALSE(comparable("0"_bits, "1"_bits));
}

TEST(StripPrefix, Examples) {
    EXPECT_EQ(strip_prefix("0"_bits, "001"_bits), "01"_bits);
    EXPECT_EQ(strip_prefix(""_bits, "11"_bits), "11"_bits);
    EXPECT_EQ(strip_prefix("11"_bits, "11"_bits), ""_bits);
    try {
        strip_prefix("10"_bits, "01"_bits);
        FAIL() << "expected NotAPrefix";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_a_prefix);
    }
}

TEST(Dyadic, ToFraction) {
    EXPECT_EQ(to_fraction(""_bits), DyadicRational::zero());
    EXPECT_EQ(to_fraction("1"_bits), ratio(1, 1));
    EXPECT_EQ(to_fraction("011"_bits), ratio(3, 3));
    EXPECT_EQ(to_fraction("0110"_bits), ratio(3, 3));  // trailing zeros do not change the value
    EXPECT_EQ(to_fraction("011"_bits).numerator(), 3u);
    EXPECT_EQ(to_fraction("011"_bits).exponent(), 3u);
    EXPECT_EQ(ratio(4, 3), ratio(1, 1));
    EXPECT_DOUBLE_EQ(to_fraction("011"_bits).to_double(), 0.375);
}

TEST(Dyadic, ToInterval) {
    EXPECT_EQ(to_interval(""_bits), DyadicInterval(DyadicRational::zero(), DyadicRational::one()));
    EXPECT_EQ(to_interval("011"_bits), DyadicInterval(ratio(3, 3), ratio(1, 1)));
    EXPECT_EQ(to_interval("00"_bits), DyadicInterval(DyadicRational::zero(), ratio(1, 2)));
    EXPECT_EQ(to_interval("111"_bits).hi(), DyadicRational::one());
    EXPECT_THROW(DyadicInterval(ratio(1, 1), ratio(1, 1)), Error);
}

TEST(Dyadic, IntervalRelations) {
    DyadicInterval quarter(DyadicRational::zero(), ratio(1, 2));
    DyadicInterval next(ratio(1, 2), ratio(3, 3));
    EXPECT_FALSE(interval_intersects(quarter, next));
    EXPECT_FALSE(interval_intersects(to_interval("1"_bits), to_interval("011"_bits)));
    EXPECT_TRUE(interval_contains(to_interval(""_bits), to_interval("011"_bits)));
    EXPECT_FALSE(interval_contains(to_interval("011"_bits), to_interval(""_bits)));
}

TEST(Dyadic, CoveredByUnion) {
    std::vector<DyadicInterval> halves{to_interval("1"_bits), to_interval("0"_bits)};
    EXPECT_TRUE(interval_covered_by(to_interval(""_bits), halves));
    EXPECT_FALSE(interval_covered_by(to_interval(""_bits), {to_interval("1"_bits), to_interval("00"_bits)}));
    EXPECT_TRUE(interval_covered_by(to_interval("01"_bits), {to_interval("010"_bits), to_interval("011"_bits)}));
    EXPECT_FALSE(interval_covered_by(to_interval("01"_bits), {}));
}

class BitStringProperties : public ::testing::Test {
protected:
    gen::Rng rng{20240611};
};

TEST_F(BitStringProperties, PrefixIsPartialOrder) {
    for (int i = 0; i < 3000; ++i) {
        auto a = gen::bits(rng, 6), b = gen::bits(rng, 6), c = gen::bits(rng, 6);
        EXPECT_TRUE(is_prefix(a, a));
        if (is_prefix(a, b) && is_prefix(b, a)) {
            EXPECT_EQ(a, b);
        }
        if (is_prefix(a, b) && is_prefix(b, c)) {
            EXPECT_TRUE(is_prefix(a, c));
        }
        // With short strings chained prefixes are rare; force some.
        auto ab = a + b, abc = a + b + c;
        EXPECT_TRUE(is_prefix(a, ab) && is_prefix(ab, abc) && is_prefix(a, abc));
    }
}

TEST_F(BitStringProperties, ComparableIsReflexiveAndSymmetric) {
    for (int i = 0; i < 3000; ++i) {
        auto a = gen::bits(rng, 6), b = gen::bits(rng, 6);
        EXPECT_TRUE(comparable(a, a));
        EXPECT_EQ(comparable(a, b), comparable(b, a));
        EXPECT_EQ(comparable(a, b), oracle::comparable(a.to_string(), b.to_string()));
    }
}

TEST_F(BitStringProperties, IntervalsMirrorPrefixRelations) {
    for (int i = 0; i < 5000; ++i) {
        auto a = gen::bits(rng, 8), b = gen::bits(rng, 8);
        EXPECT_EQ(interval_intersects(to_interval(a), to_interval(b)), comparable(a, b)) << a << " " << b;
        EXPECT_EQ(interval_contains(to_interval(b), to_interval(a)), is_prefix(b, a)) << a << " " << b;
    }
}

TEST_F(BitStringProperties, IntervalsMatchIntegerOracle) {
    for (int i = 0; i < 3000; ++i) {
        auto a = gen::bits(rng, 20), b = gen::bits(rng, 20);
        auto [alo, ahi] = oracle::interval(a.to_string());
        auto [blo, bhi] = oracle::interval(b.to_string());
        EXPECT_EQ(to_interval(a).lo() < to_interval(b).lo(), alo < blo);
        EXPECT_EQ(to_interval(a).hi() <= to_interval(b).hi(), ahi <= bhi);
        EXPECT_EQ(interval_intersects(to_interval(a), to_interval(b)), alo < bhi && blo < ahi);
    }
}

TEST_F(BitStringProperties, StripUndoesConcatenation) {
    for (int i = 0; i < 2000; ++i) {
        auto p = gen::bits(rng, 70), s = gen::bits(rng, 70);
        EXPECT_EQ(strip_prefix(p, p + s), s);
    }
}
