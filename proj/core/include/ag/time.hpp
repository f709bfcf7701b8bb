#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ag
{

/// Exact rational offsets. No floating point is used for time anywhere.
using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal spelling ("2391.115375", "-1", "1e-3", "7/3") exactly.
/// Throws Error(MalformedNumber).
Rational parse_decimal(std::string_view text);

/// Number of digits after the decimal point in a decimal spelling ("22.10" -> 2).
std::size_t decimal_scale(std::string_view text) noexcept;

/// Renders a rational as a terminating decimal with at least `min_scale`
/// fractional digits. Non-terminating values fall back to "p/q".
std::string format_decimal(const Rational& value, std::size_t min_scale = 0);

/// A point on a named timeline. `lexical` is the source spelling and is what
/// serializers emit, so offsets round-trip bit-exactly.
class TimeRef
{
public:
    TimeRef(std::string timeline, Rational offset, std::string lexical);

    /// Offset parsed from its lexical spelling.
    static TimeRef parse(std::string timeline, std::string lexical);
    /// Offset computed in code; the lexical form is derived with `min_scale`.
    static TimeRef computed(std::string timeline, const Rational& offset, std::size_t min_scale = 0);

    const std::string& timeline() const noexcept { return m_timeline; }
    const Rational& offset() const noexcept { return m_offset; }
    const std::string& lexical() const noexcept { return m_lexical; }

    /// Same timeline and equal offset, regardless of spelling.
    bool same_point(const TimeRef& other) const noexcept;

    /// Representational equality: timeline, offset and spelling.
    friend bool operator==(const TimeRef&, const TimeRef&) = default;

private:
    std::string m_timeline;
    Rational m_offset;
    std::string m_lexical;
};

/// Orders two times on the same timeline. Throws Error(CrossTimelineComparison)
/// when the timelines differ; times on different timelines are incomparable.
std::strong_ordering compare(const TimeRef& a, const TimeRef& b);

enum class TimeUnit
{
    samples,
    seconds,
    milliseconds,
    ordinal, ///< ordered positions with no physical unit (token indices)
};

std::string_view to_string(TimeUnit unit) noexcept;
std::optional<TimeUnit> parse_time_unit(std::string_view text) noexcept;

/// A named, totally ordered offset domain shared by a set of signal files.
struct Timeline
{
    std::string id;
    TimeUnit unit = TimeUnit::seconds;
    std::optional<Rational> rate; ///< samples per second; required for TimeUnit::samples
    std::vector<std::string> signals;

    /// Throws Error(InvalidTimeline) on rate <= 0 or a samples unit without a rate.
    void check() const;

    friend bool operator==(const Timeline&, const Timeline&) = default;
};

} // namespace ag
