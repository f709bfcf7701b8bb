#include <gtest/gtest.h>

#include "ag/error.hpp"
#include "ag/time.hpp"

using ag::Rational;
using ag::TimeRef;

TEST(ParseDecimal, ExactRationals)
{
    EXPECT_EQ(ag::parse_decimal("2391.115375"), Rational(2391115375, 1000000));
    EXPECT_EQ(ag::parse_decimal("0.26"), Rational(26, 100));
    EXPECT_EQ(ag::parse_decimal("0.08"), Rational(8, 100));
    EXPECT_EQ(ag::parse_decimal("-1.5"), Rational(-3, 2));
    EXPECT_EQ(ag::parse_decimal("1e3"), Rational(1000));
    EXPECT_EQ(ag::parse_decimal("25e-2"), Rational(1, 4));
    EXPECT_EQ(ag::parse_decimal("1/3"), Rational(1, 3));
    EXPECT_EQ(ag::parse_decimal(".5"), Rational(1, 2));
}

TEST(ParseDecimal, LeadingZerosAreNotOctal)
{
    EXPECT_EQ(ag::parse_decimal("010"), Rational(10));
    EXPECT_EQ(ag::parse_decimal("0.09"), Rational(9, 100));
    EXPECT_EQ(ag::parse_decimal("08/09"), Rational(8, 9));
}

TEST(ParseDecimal, RejectsGarbage)
{
    for (const char* bad : {"", "abc", "1.2.3", "1/0", "-", ".", "1e", "0x10", "1 2"})
    {
        try
        {
            ag::parse_decimal(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        }
        catch (const ag::Error& e)
        {
            EXPECT_EQ(e.code(), ag::ErrorCode::MalformedNumber) << bad;
        }
    }
}

TEST(FormatDecimal, TerminatingAndRepeating)
{
    EXPECT_EQ(ag::format_decimal(Rational(2212, 100)), "22.12");
    EXPECT_EQ(ag::format_decimal(Rational(2212, 100), 3), "22.120");
    EXPECT_EQ(ag::format_decimal(Rational(-1, 8)), "-0.125");
    EXPECT_EQ(ag::format_decimal(Rational(1, 3)), "1/3");
    EXPECT_EQ(ag::format_decimal(Rational(7)), "7");
}

TEST(TimeRef, LexicalFormIsKeptVerbatim)
{
    TimeRef a = TimeRef::parse("", "2391.606000");
    TimeRef b = TimeRef::parse("", "2391.606");
    EXPECT_EQ(a.lexical(), "2391.606000");
    EXPECT_TRUE(a.same_point(b));
    EXPECT_NE(a, b);
    EXPECT_EQ(ag::compare(a, b), std::strong_ordering::equal);
}

TEST(TimeRef, ComputedUsesMinimalScale)
{
    TimeRef t = TimeRef::computed("", ag::parse_decimal("21.86") + ag::parse_decimal("0.26"), 2);
    EXPECT_EQ(t.lexical(), "22.12");
}

TEST(TimeRef, CrossTimelineComparisonThrows)
{
    try
    {
        (void)ag::compare(TimeRef::parse("a", "1"), TimeRef::parse("b", "2"));
        FAIL();
    }
    catch (const ag::Error& e)
    {
        EXPECT_EQ(e.code(), ag::ErrorCode::CrossTimelineComparison);
        EXPECT_EQ(e.witness(), "a vs b");
    }
}

TEST(Timeline, SampleUnitNeedsRate)
{
    ag::Timeline t{"timit", ag::TimeUnit::samples, std::nullopt, {}};
    EXPECT_THROW(t.check(), ag::Error);
    t.rate = Rational(16000);
    EXPECT_NO_THROW(t.check());
    t.rate = Rational(0);
    EXPECT_THROW(t.check(), ag::Error);
}

TEST(TimeUnit, NamesRoundTrip)
{
    for (auto u : {ag::TimeUnit::samples, ag::TimeUnit::seconds, ag::TimeUnit::milliseconds, ag::TimeUnit::ordinal})
    {
        EXPECT_EQ(ag::parse_time_unit(ag::to_string(u)), u);
    }
    EXPECT_FALSE(ag::parse_time_unit("fortnights"));
}
