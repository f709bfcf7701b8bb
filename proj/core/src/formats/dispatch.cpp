#include <array>

#include "common.hpp"

namespace ag::formats
{

std::string_view to_string(PunctuationPolicy policy) noexcept
{
    switch (policy)
    {
    case PunctuationPolicy::attach: return "attach";
    case PunctuationPolicy::instant: return "instant";
    case PunctuationPolicy::separate: return "separate";
    }
    return "instant";
}

std::optional<PunctuationPolicy> parse_punctuation_policy(std::string_view text) noexcept
{
    if (text == "attach") return PunctuationPolicy::attach;
    if (text == "instant") return PunctuationPolicy::instant;
    if (text == "separate") return PunctuationPolicy::separate;
    return std::nullopt;
}

std::string ReaderOptions::type_for(const std::string& tier, const std::string& fallback) const
{
    auto it = type_names.find(tier);
    return it == type_names.end() ? fallback : it->second;
}

namespace
{

constexpr std::array<std::pair<Format, std::string_view>, 9> names{{
    {Format::timit, "timit"},
    {Format::partitur, "partitur"},
    {Format::chat, "chat"},
    {Format::lacito, "lacito"},
    {Format::callhome, "callhome"},
    {Format::utf, "utf"},
    {Format::swb, "swb"},
    {Format::muc7, "muc7"},
    {Format::agxml, "agxml"},
}};

} // namespace

std::string_view to_string(Format format) noexcept
{
    for (const auto& [f, name] : names)
    {
        if (f == format)
        {
            return name;
        }
    }
    return "agxml";
}

Format parse_format(std::string_view text)
{
    for (const auto& [f, name] : names)
    {
        if (name == text)
        {
            return f;
        }
    }
    throw Error(ErrorCode::UnknownFormat, "unknown format '" + std::string(text) + "'", std::string(text));
}

Arity arity(Format format) noexcept
{
    switch (format)
    {
    case Format::timit: return {2, 2};
    case Format::swb: return {1, 4};
    default: return {1, 1};
    }
}

ReadResult read(Format format, std::span<const std::string> inputs, const ReaderOptions& options)
{
    Arity a = arity(format);
    if (inputs.size() < a.min || inputs.size() > a.max)
    {
        throw Error(ErrorCode::UnknownFormat,
                    std::string(to_string(format)) + " takes " + std::to_string(a.min) +
                        (a.max != a.min ? "-" + std::to_string(a.max) : "") + " inputs, got " +
                        std::to_string(inputs.size()),
                    std::string(to_string(format)));
    }
    auto at = [&](std::size_t i) { return i < inputs.size() ? std::string_view(inputs[i]) : std::string_view(); };
    switch (format)
    {
    case Format::timit: return read_timit(at(0), at(1), options);
    case Format::partitur: return read_partitur(at(0), options);
    case Format::chat: return read_chat(at(0), options);
    case Format::lacito: return read_lacito(at(0), options);
    case Format::callhome: return read_callhome(at(0), options);
    case Format::utf: return read_utf(at(0), options);
    case Format::swb: return read_swb(at(0), at(1), at(2), at(3), options);
    case Format::muc7: return read_muc7(at(0), options);
    case Format::agxml: break;
    }
    throw Error(ErrorCode::UnknownFormat, "agxml is read with from_xml, not a format reader", "agxml");
}

} // namespace ag::formats
