#include "ag/time.hpp"

#include <cctype>

#include "ag/error.hpp"

namespace ag
{

namespace
{

using boost::multiprecision::cpp_int;

[[noreturn]] void malformed(std::string_view text)
{
    throw Error(ErrorCode::MalformedNumber, "malformed number '" + std::string(text) + "'",
                std::string(text));
}

bool all_digits(std::string_view s)
{
    if (s.empty())
    {
        return false;
    }
    for (char c : s)
    {
        if (!std::isdigit(static_cast<unsigned char>(c)))
        {
            return false;
        }
    }
    return true;
}

/// cpp_int's string constructor reads a leading 0 as an octal prefix.
cpp_int decimal_digits(std::string_view digits)
{
    auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? cpp_int(0) : cpp_int(std::string(digits.substr(first)));
}

cpp_int pow10(std::size_t n)
{
    cpp_int r = 1;
    for (std::size_t i = 0; i < n; ++i)
    {
        r *= 10;
    }
    return r;
}

} // namespace

Rational parse_decimal(std::string_view text)
{
    std::string_view s = text;
    if (s.empty())
    {
        malformed(text);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos)
    {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        bool negative = !num.empty() && (num[0] == '-' || num[0] == '+');
        std::string_view num_digits = negative ? num.substr(1) : num;
        if (!all_digits(num_digits) || !all_digits(den))
        {
            malformed(text);
        }
        cpp_int d = decimal_digits(den);
        if (d == 0)
        {
            malformed(text);
        }
        cpp_int n = decimal_digits(num_digits);
        if (num[0] == '-')
        {
            n = -n;
        }
        return Rational(n, d);
    }

    bool negative = false;
    if (s[0] == '-' || s[0] == '+')
    {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos)
    {
        std::string_view exp_text = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+'))
        {
            exp_negative = exp_text[0] == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6)
        {
            malformed(text);
        }
        exponent = std::stol(std::string(exp_text));
        if (exp_negative)
        {
            exponent = -exponent;
        }
        s = s.substr(0, e);
    }

    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos)
    {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty())
    {
        malformed(text);
    }
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    {
        malformed(text);
    }

    cpp_int mantissa = decimal_digits(std::string(int_part) + std::string(frac_part));
    long scale = static_cast<long>(frac_part.size()) - exponent;
    Rational value;
    if (scale >= 0)
    {
        value = Rational(mantissa, pow10(static_cast<std::size_t>(scale)));
    }
    else
    {
        value = Rational(mantissa * pow10(static_cast<std::size_t>(-scale)));
    }
    return negative ? Rational(-value) : value;
}

std::size_t decimal_scale(std::string_view text) noexcept
{
    auto dot = text.find('.');
    if (dot == std::string_view::npos)
    {
        return 0;
    }
    std::size_t n = 0;
    for (std::size_t i = dot + 1; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
    {
        ++n;
    }
    return n;
}

std::string format_decimal(const Rational& value, std::size_t min_scale)
{
    cpp_int num = boost::multiprecision::numerator(value);
    cpp_int den = boost::multiprecision::denominator(value);

    // Terminating iff the denominator has no prime factors besides 2 and 5.
    cpp_int rest = den;
    std::size_t twos = 0;
    std::size_t fives = 0;
    while (rest % 2 == 0)
    {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0)
    {
        rest /= 5;
        ++fives;
    }
    if (rest != 1)
    {
        return num.str() + "/" + den.str();
    }

    std::size_t scale = std::max({twos, fives, min_scale});
    cpp_int scaled = num * pow10(scale) / den;
    bool negative = scaled < 0;
    if (negative)
    {
        scaled = -scaled;
    }
    std::string digits = scaled.str();
    if (digits.size() <= scale)
    {
        digits.insert(0, scale - digits.size() + 1, '0');
    }
    std::string out = negative ? "-" : "";
    out += digits.substr(0, digits.size() - scale);
    if (scale > 0)
    {
        out += '.';
        out += digits.substr(digits.size() - scale);
    }
    return out;
}

TimeRef::TimeRef(std::string timeline, Rational offset, std::string lexical)
    : m_timeline(std::move(timeline))
    , m_offset(std::move(offset))
    , m_lexical(std::move(lexical))
{
}

TimeRef TimeRef::parse(std::string timeline, std::string lexical)
{
    Rational offset = parse_decimal(lexical);
    return TimeRef(std::move(timeline), std::move(offset), std::move(lexical));
}

TimeRef TimeRef::computed(std::string timeline, const Rational& offset, std::size_t min_scale)
{
    return TimeRef(std::move(timeline), offset, format_decimal(offset, min_scale));
}

bool TimeRef::same_point(const TimeRef& other) const noexcept
{
    return m_timeline == other.m_timeline && m_offset == other.m_offset;
}

std::strong_ordering compare(const TimeRef& a, const TimeRef& b)
{
    if (a.timeline() != b.timeline())
    {
        throw Error(ErrorCode::CrossTimelineComparison,
                    "cannot compare times on timelines '" + a.timeline() + "' and '" + b.timeline() + "'",
                    a.timeline() + " vs " + b.timeline());
    }
    if (a.offset() < b.offset())
    {
        return std::strong_ordering::less;
    }
    if (b.offset() < a.offset())
    {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string_view to_string(TimeUnit unit) noexcept
{
    switch (unit)
    {
    case TimeUnit::samples: return "samples";
    case TimeUnit::seconds: return "seconds";
    case TimeUnit::milliseconds: return "milliseconds";
    case TimeUnit::ordinal: return "ordinal";
    }
    return "seconds";
}

std::optional<TimeUnit> parse_time_unit(std::string_view text) noexcept
{
    if (text == "samples") return TimeUnit::samples;
    if (text == "seconds") return TimeUnit::seconds;
    if (text == "milliseconds") return TimeUnit::milliseconds;
    if (text == "ordinal") return TimeUnit::ordinal;
    return std::nullopt;
}

void Timeline::check() const
{
    if (rate && *rate <= 0)
    {
        throw Error(ErrorCode::InvalidTimeline, "timeline '" + id + "' has a non-positive rate", id);
    }
    if (unit == TimeUnit::samples && !rate)
    {
        throw Error(ErrorCode::InvalidTimeline, "timeline '" + id + "' counts samples but declares no rate", id);
    }
}

} // namespace ag
