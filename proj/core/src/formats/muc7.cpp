#include <algorithm>
#include <map>
#include <numeric>

#include "common.hpp"

namespace ag::formats
{

namespace
{

struct Mention
{
    std::string id;
    std::optional<std::string> ref;
    std::optional<std::string> min;
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<std::string> tokens;
    std::size_t line = 0;
};

/// Numeric ids order numerically, anything else lexically after them.
bool id_less(const std::string& a, const std::string& b)
{
    auto numeric = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    bool na = numeric(a);
    bool nb = numeric(b);
    if (na && nb)
    {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
    if (na != nb)
    {
        return na;
    }
    return a < b;
}

} // namespace

ReadResult read_muc7(std::string_view sgml_text, const ReaderOptions& options)
{
    std::vector<Mention> mentions;
    std::vector<std::size_t> open;
    std::size_t position = 0;

    for (const detail::Piece& piece : detail::scan_tags(sgml_text))
    {
        if (!piece.is_tag)
        {
            for (std::string_view token : detail::split_ws(piece.text))
            {
                for (std::size_t m : open)
                {
                    mentions[m].tokens.emplace_back(token);
                }
                ++position;
            }
            continue;
        }
        const detail::Tag& tag = piece.tag;
        if (tag.name != "coref")
        {
            continue;
        }
        if (tag.closing)
        {
            if (open.empty())
            {
                detail::fail(ErrorCode::UnbalancedTag, "</COREF> without an open <COREF>", piece.line, tag.raw);
            }
            mentions[open.back()].end = position;
            open.pop_back();
            continue;
        }
        const std::string* id = tag.attribute("id");
        if (!id || id->empty())
        {
            detail::fail(ErrorCode::MalformedLine, "<COREF> without ID", piece.line, tag.raw);
        }
        Mention m;
        m.id = *id;
        if (const std::string* ref = tag.attribute("ref"))
        {
            m.ref = *ref;
        }
        if (const std::string* min = tag.attribute("min"))
        {
            m.min = *min;
        }
        m.start = position;
        m.line = piece.line;
        open.push_back(mentions.size());
        mentions.push_back(std::move(m));
    }
    if (!open.empty())
    {
        const Mention& m = mentions[open.back()];
        detail::fail(ErrorCode::UnbalancedTag, "<COREF ID=\"" + m.id + "\"> is never closed", m.line, m.id);
    }

    // Union-find over mention indices; REF links an anaphor to its antecedent.
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < mentions.size(); ++i)
    {
        if (!by_id.emplace(mentions[i].id, i).second)
        {
            detail::fail(ErrorCode::MalformedLine, "duplicate COREF ID " + mentions[i].id, mentions[i].line,
                         mentions[i].id);
        }
    }
    std::vector<std::size_t> parent(mentions.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
        {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < mentions.size(); ++i)
    {
        if (!mentions[i].ref)
        {
            continue;
        }
        auto it = by_id.find(*mentions[i].ref);
        if (it == by_id.end())
        {
            detail::fail(ErrorCode::DanglingRef, "REF=\"" + *mentions[i].ref + "\" names no COREF", mentions[i].line,
                         *mentions[i].ref);
        }
        parent[find(i)] = find(it->second);
    }
    std::map<std::size_t, std::string> representative;
    for (std::size_t i = 0; i < mentions.size(); ++i)
    {
        auto [it, inserted] = representative.emplace(find(i), mentions[i].id);
        if (!inserted && id_less(mentions[i].id, it->second))
        {
            it->second = mentions[i].id;
        }
    }

    GraphBuilder builder(options.annotation_ns);
    std::map<std::size_t, GraphBuilder::Node> boundary;
    std::vector<std::size_t> offsets;
    for (const Mention& m : mentions)
    {
        offsets.push_back(m.start);
        offsets.push_back(m.end);
    }
    std::sort(offsets.begin(), offsets.end());
    for (std::size_t k : offsets)
    {
        if (!boundary.contains(k))
        {
            boundary[k] = builder.add_node(detail::time_at(options, std::to_string(k)));
        }
    }

    std::string type = options.type_for("coref", "coref");
    for (std::size_t i = 0; i < mentions.size(); ++i)
    {
        const Mention& m = mentions[i];
        std::string content = m.min.value_or("");
        if (!m.min)
        {
            for (const std::string& token : m.tokens)
            {
                content += content.empty() ? token : " " + token;
            }
        }
        GraphBuilder::Node to = boundary.at(m.end);
        if (m.end == m.start)
        {
            to = builder.add_node(detail::time_at(options, std::to_string(m.end)));
        }
        builder.add_arc(boundary.at(m.start), Label{type, content, representative.at(find(i)), m.id}, to);
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::ordinal);
    return {builder.build(), std::move(timeline), {}};
}

} // namespace ag::formats
