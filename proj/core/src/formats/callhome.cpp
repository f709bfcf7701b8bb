#include <map>

#include "common.hpp"

namespace ag::formats
{

namespace
{

struct Stretch
{
    Rational start;
    Rational end;
    std::string start_text;
    std::string end_text;
    std::string speaker;
    std::string text;
    std::size_t line;
};

std::vector<Stretch> parse_stretches(std::string_view text)
{
    std::vector<Stretch> out;
    for (const detail::Line& line : detail::split_lines(text))
    {
        if (detail::trim(line.text).empty())
        {
            continue;
        }
        bool continuation = line.text[0] == ' ' || line.text[0] == '\t';
        if (continuation)
        {
            if (out.empty())
            {
                detail::fail(ErrorCode::MalformedStretch, "continuation line before any stretch", line.number,
                             std::string(detail::trim(line.text)));
            }
            out.back().text += ' ';
            out.back().text += detail::trim(line.text);
            continue;
        }
        auto fields = detail::split_ws(line.text);
        if (fields.size() < 3 || fields[2].back() != ':' || fields[2].size() < 2)
        {
            detail::fail(ErrorCode::MalformedStretch, "expected '<start> <end> <speaker>: <text>'", line.number,
                         std::string(line.text));
        }
        Stretch s;
        s.start = detail::number_at(fields[0], line.number, ErrorCode::MalformedStretch);
        s.end = detail::number_at(fields[1], line.number, ErrorCode::MalformedStretch);
        if (s.end < s.start)
        {
            detail::fail(ErrorCode::MalformedStretch, "stretch ends before it starts", line.number,
                         std::string(fields[0]) + " " + std::string(fields[1]));
        }
        s.start_text = std::string(fields[0]);
        s.end_text = std::string(fields[1]);
        s.speaker = std::string(fields[2].substr(0, fields[2].size() - 1));
        auto colon = line.text.find(':');
        s.text = std::string(detail::trim(line.text.substr(colon + 1)));
        s.line = line.number;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

ReadResult read_callhome(std::string_view text, const ReaderOptions& options)
{
    std::vector<Stretch> stretches = parse_stretches(text);

    // Group into turns: a stretch joins its speaker's open turn when the
    // silence since that turn's last stretch is within merge_gap.
    std::vector<std::vector<const Stretch*>> turns;
    std::map<std::string, std::size_t> open;
    for (const Stretch& s : stretches)
    {
        auto it = open.find(s.speaker);
        if (it != open.end())
        {
            Rational gap = s.start - turns[it->second].back()->end;
            if (gap >= 0 && gap <= options.merge_gap)
            {
                turns[it->second].push_back(&s);
                continue;
            }
        }
        open[s.speaker] = turns.size();
        turns.push_back({&s});
    }

    std::string speaker_type = options.type_for("speaker", "speaker");
    std::string word_type = options.type_for("word", "W");
    std::string punct_type = options.type_for("punct", word_type);
    std::string gap_type = options.type_for("gap", "GAP");

    GraphBuilder builder(options.annotation_ns);
    for (const auto& turn : turns)
    {
        GraphBuilder::Node first = builder.add_node(detail::time_at(options, turn.front()->start_text));
        detail::TokenChain chain(builder, first, options.punctuation, word_type, punct_type);
        for (std::size_t i = 0; i < turn.size(); ++i)
        {
            const Stretch& s = *turn[i];
            if (i > 0)
            {
                const Stretch& prev = *turn[i - 1];
                if (s.start != prev.end)
                {
                    GraphBuilder::Node next = builder.add_node(detail::time_at(options, s.start_text));
                    builder.add_arc(chain.current(), Label{gap_type}, next);
                    chain.move_to(next);
                }
            }
            GraphBuilder::Node stretch_start = chain.current();
            for (const std::string& token : detail::tokenize(s.text, options.punctuation))
            {
                chain.token(token);
            }
            if (chain.current() == stretch_start)
            {
                // Nothing took up time. A lone stretch is carried by the
                // speaker arc alone; inside a turn it becomes a gap.
                if (turn.size() == 1)
                {
                    chain.move_to(builder.add_node());
                }
                else
                {
                    chain.arc(Label{gap_type});
                }
            }
            builder.set_time(chain.current(), detail::time_at(options, s.end_text));
        }
        builder.add_arc(first, Label{speaker_type, turn.front()->speaker}, chain.current());
        chain.finish();
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::seconds);
    return {builder.build(), std::move(timeline), {}};
}

} // namespace ag::formats
