#include <algorithm>
#include <map>

#include "common.hpp"

namespace ag::formats
{

namespace
{

struct Segment
{
    std::string start;
    std::string end;
    std::string label;
    std::size_t line;
};

bool is_integer(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<Segment> parse_segments(std::string_view text)
{
    std::vector<Segment> out;
    std::optional<Rational> previous_start;
    for (const detail::Line& line : detail::split_lines(text))
    {
        auto fields = detail::split_ws(line.text);
        if (fields.empty())
        {
            continue;
        }
        if (fields.size() < 3 || !is_integer(fields[0]) || !is_integer(fields[1]))
        {
            detail::fail(ErrorCode::MalformedLine, "expected '<start> <end> <label>'", line.number,
                         std::string(line.text));
        }
        Rational start = parse_decimal(fields[0]);
        Rational end = parse_decimal(fields[1]);
        if (end < start || (previous_start && start < *previous_start))
        {
            detail::fail(ErrorCode::NonMonotonicTimes, "segment times go backwards", line.number,
                         std::string(line.text));
        }
        previous_start = start;
        std::string label(fields[2]);
        for (std::size_t i = 3; i < fields.size(); ++i)
        {
            label += ' ';
            label += fields[i];
        }
        out.push_back({std::string(fields[0]), std::string(fields[1]), std::move(label), line.number});
    }
    return out;
}

} // namespace

ReadResult read_timit(std::string_view wrd_text, std::string_view phn_text, const ReaderOptions& options)
{
    std::vector<Segment> words;
    std::vector<Segment> phones;
    try
    {
        words = parse_segments(wrd_text);
    }
    catch (const Error& e)
    {
        throw Error(e.code(), std::string("wrd: ") + e.what(), e.witness(), e.line());
    }
    try
    {
        phones = parse_segments(phn_text);
    }
    catch (const Error& e)
    {
        throw Error(e.code(), std::string("phn: ") + e.what(), e.witness(), e.line());
    }

    // One node per distinct offset, numbered in ascending time.
    std::map<Rational, std::string> offsets;
    for (const auto* tier : {&words, &phones})
    {
        for (const Segment& s : *tier)
        {
            offsets.emplace(parse_decimal(s.start), s.start);
            offsets.emplace(parse_decimal(s.end), s.end);
        }
    }

    GraphBuilder builder(options.annotation_ns);
    std::map<Rational, GraphBuilder::Node> node_at;
    for (const auto& [value, lexical] : offsets)
    {
        node_at.emplace(value, builder.add_node(detail::time_at(options, lexical)));
    }

    std::string word_type = options.type_for("wrd", "W");
    std::string phone_type = options.type_for("phn", "P");
    for (const auto& [tier, type] : {std::pair{&words, word_type}, std::pair{&phones, phone_type}})
    {
        for (const Segment& s : *tier)
        {
            builder.add_arc(node_at.at(parse_decimal(s.start)), Label{type, s.label},
                            node_at.at(parse_decimal(s.end)));
        }
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::samples, Rational(16000));
    return {builder.build(), std::move(timeline), {}};
}

std::pair<std::string, std::string> write_timit(const AnnotationGraph& graph, const ReaderOptions& options)
{
    std::string word_type = options.type_for("wrd", "W");
    std::string phone_type = options.type_for("phn", "P");
    struct Row
    {
        Rational start, end;
        std::string text;
    };
    std::vector<Row> words;
    std::vector<Row> phones;
    for (const Arc& arc : graph.arcs())
    {
        const TimeRef* s = graph.time(arc.source);
        const TimeRef* t = graph.time(arc.target);
        if (!s || !t)
        {
            continue;
        }
        Row row{s->offset(), t->offset(), s->lexical() + " " + t->lexical() + " " + arc.label.content() + "\n"};
        if (arc.label.type() == word_type)
        {
            words.push_back(std::move(row));
        }
        else if (arc.label.type() == phone_type)
        {
            phones.push_back(std::move(row));
        }
    }
    auto render = [](std::vector<Row>& rows) {
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            return a.start != b.start ? a.start < b.start : a.end < b.end;
        });
        std::string out;
        for (const Row& r : rows)
        {
            out += r.text;
        }
        return out;
    };
    return {render(words), render(phones)};
}

} // namespace ag::formats
