#include <optional>
#include <regex>

#include "common.hpp"

namespace ag::formats
{

namespace
{

/// "[you=>you]['ve=>have]" -> "you_have".
std::string expand_contraction(const std::string& e_form, std::size_t line)
{
    static const std::regex part(R"(\[([^\]=]*)=>([^\]]*)\])");
    std::string out;
    std::size_t matched = 0;
    for (auto it = std::sregex_iterator(e_form.begin(), e_form.end(), part); it != std::sregex_iterator(); ++it)
    {
        if (!out.empty())
        {
            out += '_';
        }
        out += (*it)[2].str();
        matched += it->length();
    }
    if (out.empty() || matched != e_form.size())
    {
        detail::fail(ErrorCode::MalformedLine, "malformed contraction e_form", line, e_form);
    }
    return out;
}

std::string replace_hyphen_tags(std::string_view text)
{
    static const std::regex hyphen(R"(<\s*hyphen\s*>)", std::regex::icase);
    return std::regex_replace(std::string(text), hyphen, "-");
}

class TurnReader
{
public:
    TurnReader(GraphBuilder& builder, const ReaderOptions& options, const detail::Tag& tag, std::size_t line)
        : m_builder(builder)
        , m_options(options)
        , m_speaker(required(tag, "speaker", line))
        , m_start(detail::time_at(options, required(tag, "starttime", line)))
        , m_end(detail::time_at(options, required(tag, "endtime", line)))
        , m_first(builder.add_node(m_start))
        , m_chain(builder, m_first, options.punctuation, options.type_for("word", "W"),
                  options.type_for("punct", "PUNCT"))
    {
        if (m_end.offset() < m_start.offset())
        {
            detail::fail(ErrorCode::TimeOutsideTurn, "turn ends before it starts", line, m_end.lexical());
        }
    }

    void text(std::string_view body)
    {
        for (std::string_view raw : detail::split_ws(body))
        {
            std::string token(raw);
            if (token.front() == '{')
            {
                std::string noise = token.substr(1);
                m_chain.arc(Label{m_options.type_for("noise", "NOISE"), noise.empty() ? "noise" : noise});
                continue;
            }
            auto span = m_chain.token(token);
            if (m_contraction && span)
            {
                m_builder.add_arc(span->first, Label{m_options.type_for("lexical", "L"), *m_contraction},
                                  span->second);
                m_contraction.reset();
            }
        }
    }

    void tag(const detail::Tag& tag, std::size_t line)
    {
        if (tag.name == "time")
        {
            anchor(required(tag, "sec", line), line);
        }
        else if (tag.name == "b_overlap")
        {
            anchor(required(tag, "starttime", line), line);
            m_overlap_end = required(tag, "endtime", line);
        }
        else if (tag.name == "e_overlap")
        {
            if (!m_overlap_end)
            {
                detail::fail(ErrorCode::UnbalancedTag, "<e_overlap> without <b_overlap>", line, tag.raw);
            }
            anchor(*m_overlap_end, line);
            m_overlap_end.reset();
        }
        else if (tag.name == "b_enamex")
        {
            m_enamex.push_back({m_chain.current(), required(tag, "type", line)});
        }
        else if (tag.name == "e_enamex")
        {
            if (m_enamex.empty())
            {
                detail::fail(ErrorCode::UnbalancedTag, "<e_enamex> without <b_enamex>", line, tag.raw);
            }
            auto [from, type] = m_enamex.back();
            m_enamex.pop_back();
            m_builder.add_arc(from, Label{m_options.type_for("enamex", "EN"), type}, m_chain.current());
        }
        else if (tag.name == "contraction")
        {
            m_contraction = expand_contraction(required(tag, "e_form", line), line);
        }
        else if (tag.name == "hyphen")
        {
            // Already folded into the text.
        }
    }

    void close(std::size_t line)
    {
        if (m_overlap_end || !m_enamex.empty())
        {
            detail::fail(ErrorCode::UnbalancedTag, "turn closes inside an open overlap or enamex", line, m_speaker);
        }
        anchor(m_end.lexical(), line);
        m_chain.finish();
        m_builder.add_arc(m_first, Label{m_options.type_for("speaker", "speaker"), m_speaker}, m_chain.current());
    }

private:
    static std::string required(const detail::Tag& tag, const std::string& key, std::size_t line)
    {
        const std::string* value = tag.attribute(key);
        if (!value)
        {
            detail::fail(ErrorCode::MalformedLine, "<" + tag.name + "> lacks " + key, line, tag.raw);
        }
        return *value;
    }

    /// Times the current boundary. If it is already timed differently, the
    /// chain steps forward over a gap to a new timed node.
    void anchor(const std::string& lexical, std::size_t line)
    {
        TimeRef t = detail::time_at(m_options, lexical);
        if (t.offset() < m_start.offset() || t.offset() > m_end.offset())
        {
            detail::fail(ErrorCode::TimeOutsideTurn,
                         "time " + lexical + " lies outside turn [" + m_start.lexical() + ", " + m_end.lexical() + "]",
                         line, lexical);
        }
        const auto& current = m_builder.time(m_chain.current());
        if (!current)
        {
            m_builder.set_time(m_chain.current(), std::move(t));
        }
        else if (!current->same_point(t))
        {
            if (t.offset() < current->offset())
            {
                detail::fail(ErrorCode::NonMonotonicTimes, "time " + lexical + " precedes " + current->lexical(),
                             line, lexical);
            }
            GraphBuilder::Node next = m_builder.add_node(std::move(t));
            m_builder.add_arc(m_chain.current(), Label{m_options.type_for("gap", "GAP")}, next);
            m_chain.move_to(next);
        }
    }

    GraphBuilder& m_builder;
    const ReaderOptions& m_options;
    std::string m_speaker;
    TimeRef m_start;
    TimeRef m_end;
    GraphBuilder::Node m_first;
    detail::TokenChain m_chain;
    std::optional<std::string> m_overlap_end;
    std::vector<std::pair<GraphBuilder::Node, std::string>> m_enamex;
    std::optional<std::string> m_contraction;
};

} // namespace

ReadResult read_utf(std::string_view sgml_text, const ReaderOptions& options)
{
    GraphBuilder builder(options.annotation_ns);
    std::optional<TurnReader> turn;
    for (const detail::Piece& piece : detail::scan_tags(replace_hyphen_tags(sgml_text)))
    {
        if (!piece.is_tag)
        {
            if (turn)
            {
                turn->text(piece.text);
            }
            continue;
        }
        const detail::Tag& tag = piece.tag;
        if (tag.name == "turn")
        {
            if (tag.closing)
            {
                if (!turn)
                {
                    detail::fail(ErrorCode::UnbalancedTag, "</turn> without <turn>", piece.line, tag.raw);
                }
                turn->close(piece.line);
                turn.reset();
            }
            else
            {
                if (turn)
                {
                    detail::fail(ErrorCode::UnbalancedTag, "<turn> inside an open turn", piece.line, tag.raw);
                }
                turn.emplace(builder, options, tag, piece.line);
            }
        }
        else if (turn)
        {
            turn->tag(tag, piece.line);
        }
    }
    if (turn)
    {
        detail::fail(ErrorCode::UnbalancedTag, "unterminated <turn>", 0, "turn");
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::seconds);
    return {builder.build(), std::move(timeline), {}};
}

} // namespace ag::formats
