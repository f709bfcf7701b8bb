#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"

namespace ag::formats
{

namespace
{

struct MauSegment
{
    Rational start;
    Rational end;
    std::string start_text;
    std::string end_text;
    long anchor;
    std::string label;
    std::size_t line;
};

struct DialogAct
{
    std::vector<long> anchors;
    std::string label;
    std::size_t line;
};

long anchor_at(std::string_view text, std::size_t line)
{
    Rational value = detail::number_at(text, line);
    if (boost::multiprecision::denominator(value) != 1)
    {
        detail::fail(ErrorCode::MalformedLine, "anchor must be an integer", line, std::string(text));
    }
    return static_cast<long>(boost::multiprecision::numerator(value));
}

std::string rest_after(std::string_view text, std::size_t fields_to_skip)
{
    std::string_view s = detail::trim(text);
    for (std::size_t i = 0; i < fields_to_skip; ++i)
    {
        auto sp = s.find_first_of(" \t");
        s = sp == std::string_view::npos ? std::string_view() : detail::trim(s.substr(sp));
    }
    return std::string(s);
}

} // namespace

ReadResult read_partitur(std::string_view text, const ReaderOptions& options)
{
    std::map<long, std::string> kan;
    std::map<long, std::string> ort;
    std::vector<std::pair<long, std::size_t>> references; // anchors used by TRL
    std::vector<MauSegment> mau;
    std::vector<DialogAct> das;
    Metadata metadata;

    for (const detail::Line& line : detail::split_lines(text))
    {
        std::string_view body = detail::trim(line.text);
        if (body.empty())
        {
            continue;
        }
        auto colon = body.find(':');
        if (colon == std::string_view::npos)
        {
            detail::fail(ErrorCode::MalformedLine, "expected '<TIER>: ...'", line.number, std::string(body));
        }
        std::string tier(detail::trim(body.substr(0, colon)));
        std::string_view rest = detail::trim(body.substr(colon + 1));
        auto fields = detail::split_ws(rest);

        if (tier == "KAN" || tier == "ORT")
        {
            if (fields.size() < 2)
            {
                detail::fail(ErrorCode::MalformedLine, tier + " line needs an anchor and a form", line.number,
                             std::string(body));
            }
            (tier == "KAN" ? kan : ort)[anchor_at(fields[0], line.number)] = rest_after(rest, 1);
        }
        else if (tier == "TRL")
        {
            if (fields.empty())
            {
                detail::fail(ErrorCode::MalformedLine, "TRL line needs an anchor", line.number, std::string(body));
            }
            references.emplace_back(anchor_at(fields[0], line.number), line.number);
        }
        else if (tier == "MAU")
        {
            if (fields.size() < 4)
            {
                detail::fail(ErrorCode::MalformedLine, "MAU line needs start, duration, anchor and label",
                             line.number, std::string(body));
            }
            Rational start = detail::number_at(fields[0], line.number);
            Rational duration = detail::number_at(fields[1], line.number);
            Rational end = start + duration;
            if (options.mau_end == MauEnd::start_plus_duration_plus_one)
            {
                end += 1;
            }
            mau.push_back({start, end, std::string(fields[0]), format_decimal(end), anchor_at(fields[2], line.number),
                           rest_after(rest, 3), line.number});
        }
        else if (tier == "DAS")
        {
            if (fields.size() < 2)
            {
                detail::fail(ErrorCode::MalformedLine, "DAS line needs anchors and a label", line.number,
                             std::string(body));
            }
            DialogAct act{{}, rest_after(rest, 1), line.number};
            std::string_view list = fields[0];
            while (!list.empty())
            {
                auto comma = list.find(',');
                act.anchors.push_back(anchor_at(list.substr(0, comma), line.number));
                list = comma == std::string_view::npos ? std::string_view() : list.substr(comma + 1);
            }
            das.push_back(std::move(act));
        }
        else if (tier.size() <= 3 && std::all_of(tier.begin(), tier.end(), [](char c) { return c >= 'A' && c <= 'Z'; }))
        {
            metadata.emplace_back(tier, std::string(rest));
        }
        else
        {
            detail::fail(ErrorCode::MalformedLine, "unknown tier '" + tier + "'", line.number, tier);
        }
    }

    auto check_anchor = [&](long anchor, std::size_t line) {
        if (!kan.contains(anchor))
        {
            detail::fail(ErrorCode::UnknownAnchor, "anchor " + std::to_string(anchor) + " is not defined by KAN",
                         line, std::to_string(anchor));
        }
    };
    for (const auto& [anchor, form] : ort)
    {
        check_anchor(anchor, 0);
    }
    for (const auto& [anchor, line] : references)
    {
        check_anchor(anchor, line);
    }
    for (const MauSegment& m : mau)
    {
        if (m.anchor != -1)
        {
            check_anchor(m.anchor, m.line);
        }
    }
    for (const DialogAct& d : das)
    {
        for (long a : d.anchors)
        {
            check_anchor(a, d.line);
        }
    }

    // Segments of one anchor must follow each other without overlap or gap.
    std::map<long, std::vector<const MauSegment*>> by_anchor;
    for (const MauSegment& m : mau)
    {
        if (m.anchor != -1)
        {
            by_anchor[m.anchor].push_back(&m);
        }
    }
    Rational slack = options.mau_end == MauEnd::start_plus_duration ? Rational(1) : Rational(0);
    for (auto& [anchor, segs] : by_anchor)
    {
        std::sort(segs.begin(), segs.end(), [](const MauSegment* a, const MauSegment* b) { return a->start < b->start; });
        for (std::size_t i = 1; i < segs.size(); ++i)
        {
            Rational gap = segs[i]->start - segs[i - 1]->end;
            if (gap < 0 || gap > slack)
            {
                detail::fail(ErrorCode::OverlappingMAUWithinAnchor,
                             "segments of anchor " + std::to_string(anchor) + " are not contiguous", segs[i]->line,
                             std::to_string(anchor));
            }
        }
    }

    GraphBuilder builder(options.annotation_ns);
    std::map<Rational, GraphBuilder::Node> timed;
    auto node_at = [&](const Rational& t, const std::string& lexical) {
        auto it = timed.find(t);
        if (it == timed.end())
        {
            it = timed.emplace(t, builder.add_node(detail::time_at(options, lexical))).first;
        }
        return it->second;
    };

    // Timed nodes in ascending order first, so ids follow the signal.
    std::vector<const MauSegment*> ordered;
    for (const MauSegment& m : mau)
    {
        ordered.push_back(&m);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const MauSegment* a, const MauSegment* b) { return a->start < b->start; });
    std::map<Rational, std::string> lexical;
    for (const MauSegment* m : ordered)
    {
        lexical.emplace(m->start, m->start_text);
        lexical.emplace(m->end, m->end_text);
    }
    for (const auto& [t, lex] : lexical)
    {
        node_at(t, lex);
    }

    std::string mau_type = options.type_for("MAU", "M");
    for (const MauSegment* m : ordered)
    {
        Label label = m->anchor == -1 ? Label{mau_type, m->label}
                                      : Label{mau_type, m->label, std::to_string(m->anchor)};
        builder.add_arc(node_at(m->start, m->start_text), std::move(label), node_at(m->end, m->end_text));
    }

    // Word chain over all KAN anchors; boundaries are timed where MAU
    // segments cover the word, otherwise shared untimed nodes.
    std::map<long, GraphBuilder::Node> word_start;
    std::map<long, GraphBuilder::Node> word_end;
    std::optional<GraphBuilder::Node> previous_end;
    for (const auto& [anchor, form] : kan)
    {
        auto segs = by_anchor.find(anchor);
        GraphBuilder::Node start;
        GraphBuilder::Node end;
        if (segs != by_anchor.end())
        {
            start = node_at(segs->second.front()->start, segs->second.front()->start_text);
            end = node_at(segs->second.back()->end, segs->second.back()->end_text);
        }
        else
        {
            start = previous_end ? *previous_end : builder.add_node();
            end = builder.add_node();
        }
        word_start[anchor] = start;
        word_end[anchor] = end;
        previous_end = end;
    }
    std::string ort_type = options.type_for("ORT", "O");
    for (const auto& [anchor, word] : ort)
    {
        builder.add_arc(word_start.at(anchor), Label{ort_type, word, std::to_string(anchor)}, word_end.at(anchor));
    }
    std::string das_type = options.type_for("DAS", "D");
    for (const DialogAct& d : das)
    {
        auto [lo, hi] = std::minmax_element(d.anchors.begin(), d.anchors.end());
        builder.add_arc(word_start.at(*lo), Label{das_type, d.label}, word_end.at(*hi));
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::samples, Rational(16000));
    return {builder.build(), std::move(timeline), std::move(metadata)};
}

} // namespace ag::formats
