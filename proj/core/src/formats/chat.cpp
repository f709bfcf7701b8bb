#include <algorithm>
#include <optional>

#include "common.hpp"

namespace ag::formats
{

namespace
{

struct Utterance
{
    std::string speaker;
    std::string text;
    std::size_t line;
    std::optional<std::pair<std::string, std::string>> times; // ms
};

/// Drops "[...]" codes and "<"/">" scope brackets.
std::string strip_codes(std::string_view text)
{
    std::string out;
    int depth = 0;
    for (char c : text)
    {
        if (c == '[')
        {
            ++depth;
            continue;
        }
        if (c == ']')
        {
            depth = depth > 0 ? depth - 1 : 0;
            continue;
        }
        if (depth > 0 || c == '<' || c == '>')
        {
            continue;
        }
        out += c;
    }
    return out;
}

/// Utterance terminators such as "+/." or "+..." count as punctuation.
bool is_terminator(std::string_view token)
{
    return token.size() > 1 && token.front() == '+';
}

} // namespace

ReadResult read_chat(std::string_view text, const ReaderOptions& options)
{
    Metadata metadata;
    std::vector<Utterance> utterances;
    std::vector<std::string> signals;
    enum class Last
    {
        none,
        header,
        utterance,
        dependent,
    } last = Last::none;

    for (const detail::Line& line : detail::split_lines(text))
    {
        std::string_view body = line.text;
        if (detail::trim(body).empty())
        {
            continue;
        }
        char lead = body.front();
        if (lead == ' ' || lead == '\t')
        {
            std::string_view more = detail::trim(body);
            if (last == Last::header)
            {
                metadata.back().second += ' ';
                metadata.back().second += more;
            }
            else if (last == Last::utterance)
            {
                utterances.back().text += ' ';
                utterances.back().text += more;
            }
            else if (last == Last::none)
            {
                detail::fail(ErrorCode::MalformedLine, "continuation line before any tier", line.number,
                             std::string(more));
            }
            continue;
        }
        auto colon = body.find(':');
        if (lead == '@')
        {
            if (colon == std::string_view::npos)
            {
                metadata.emplace_back(std::string(detail::trim(body.substr(1))), "");
            }
            else
            {
                metadata.emplace_back(std::string(detail::trim(body.substr(1, colon - 1))),
                                      std::string(detail::trim(body.substr(colon + 1))));
            }
            last = Last::header;
        }
        else if (lead == '*')
        {
            if (colon == std::string_view::npos || colon < 2)
            {
                detail::fail(ErrorCode::MalformedLine, "expected '*SPK: text'", line.number, std::string(body));
            }
            utterances.push_back({std::string(body.substr(1, colon - 1)),
                                  std::string(detail::trim(body.substr(colon + 1))), line.number, std::nullopt});
            last = Last::utterance;
        }
        else if (lead == '%')
        {
            if (utterances.empty())
            {
                detail::fail(ErrorCode::OrphanDependentTier, "dependent tier before any utterance", line.number,
                             std::string(body));
            }
            if (colon == std::string_view::npos)
            {
                detail::fail(ErrorCode::MalformedLine, "expected '%tier: ...'", line.number, std::string(body));
            }
            std::string tier(detail::trim(body.substr(1, colon - 1)));
            if (tier == "snd")
            {
                auto fields = detail::split_ws(body.substr(colon + 1));
                if (fields.size() != 3)
                {
                    detail::fail(ErrorCode::MalformedLine, "expected '%snd: \"file\" start end'", line.number,
                                 std::string(body));
                }
                std::string file(fields[0]);
                if (file.size() >= 2 && file.front() == '"' && file.back() == '"')
                {
                    file = file.substr(1, file.size() - 2);
                }
                Rational start = detail::number_at(fields[1], line.number);
                Rational end = detail::number_at(fields[2], line.number);
                if (end < start)
                {
                    detail::fail(ErrorCode::NonMonotonicTimes, "%snd ends before it starts", line.number,
                                 std::string(body));
                }
                if (std::find(signals.begin(), signals.end(), file) == signals.end())
                {
                    signals.push_back(file);
                }
                utterances.back().times.emplace(std::string(fields[1]), std::string(fields[2]));
            }
            last = Last::dependent;
        }
        else
        {
            detail::fail(ErrorCode::MalformedLine, "unrecognised line", line.number, std::string(body));
        }
    }

    std::string speaker_type = options.type_for("speaker", "speaker");
    std::string word_type = options.type_for("word", "W");
    std::string punct_type = options.type_for("punct", "PUNCT");

    GraphBuilder builder(options.annotation_ns);
    for (const Utterance& u : utterances)
    {
        GraphBuilder::Node first =
            u.times ? builder.add_node(detail::time_at(options, u.times->first)) : builder.add_node();
        detail::TokenChain chain(builder, first, options.punctuation, word_type, punct_type);
        for (const std::string& token : detail::tokenize(strip_codes(u.text), options.punctuation))
        {
            if (options.punctuation != PunctuationPolicy::attach && is_terminator(token))
            {
                chain.punctuation(token);
            }
            else
            {
                chain.token(token);
            }
        }
        if (chain.current() == first)
        {
            chain.move_to(builder.add_node());
        }
        if (u.times)
        {
            builder.set_time(chain.current(), detail::time_at(options, u.times->second));
        }
        chain.finish();
        builder.add_arc(first, Label{speaker_type, u.speaker}, chain.current());
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::milliseconds);
    timeline.signals = std::move(signals);
    return {builder.build(), std::move(timeline), std::move(metadata)};
}

} // namespace ag::formats
