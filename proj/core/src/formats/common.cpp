#include "common.hpp"

#include <algorithm>
#include <cctype>

namespace ag::formats::detail
{

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 1;
    while (!text.empty())
    {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r')
        {
            line.remove_suffix(1);
        }
        out.push_back({number++, line});
        if (nl == std::string_view::npos)
        {
            break;
        }
        text.remove_prefix(nl + 1);
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size())
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        {
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
        {
            ++i;
        }
        if (i > start)
        {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void fail(ErrorCode code, const std::string& message, std::size_t line, std::string witness)
{
    throw Error(code, message, std::move(witness), line);
}

Rational number_at(std::string_view text, std::size_t line, ErrorCode code)
{
    bool ok = !text.empty();
    for (char c : text)
    {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '-')
        {
            ok = false;
        }
    }
    if (!ok)
    {
        fail(code, "expected a number, found '" + std::string(text) + "'", line, std::string(text));
    }
    try
    {
        return parse_decimal(text);
    }
    catch (const Error&)
    {
        fail(code, "expected a number, found '" + std::string(text) + "'", line, std::string(text));
    }
}

bool is_punctuation(std::string_view token) noexcept
{
    if (token.empty())
    {
        return false;
    }
    return std::all_of(token.begin(), token.end(), [](char c) {
        return c == '.' || c == ',' || c == '?' || c == '!' || c == ';' || c == ':';
    });
}

std::vector<std::string> tokenize(std::string_view text, PunctuationPolicy policy)
{
    std::vector<std::string> out;
    for (std::string_view t : split_ws(text))
    {
        if (policy == PunctuationPolicy::attach && is_punctuation(t) && !out.empty())
        {
            out.back() += t;
        }
        else
        {
            out.emplace_back(t);
        }
    }
    return out;
}

std::pair<std::string, std::string> split_trailing_punctuation(std::string_view token)
{
    std::size_t end = token.size();
    while (end > 0 && is_punctuation(token.substr(end - 1, 1)))
    {
        --end;
    }
    return {std::string(token.substr(0, end)), std::string(token.substr(end))};
}

const std::string* Tag::attribute(const std::string& key) const
{
    auto it = attributes.find(key);
    return it == attributes.end() ? nullptr : &it->second;
}

namespace
{

Tag parse_tag(std::string_view body, std::size_t line)
{
    Tag tag;
    tag.raw = std::string(body);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i])))
        {
            ++i;
        }
    };
    skip();
    if (i < body.size() && body[i] == '/')
    {
        tag.closing = true;
        ++i;
    }
    std::size_t start = i;
    while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])) && body[i] != '/')
    {
        ++i;
    }
    tag.name = lowercase(body.substr(start, i - start));
    if (tag.name.empty())
    {
        fail(ErrorCode::UnbalancedTag, "tag without a name", line, tag.raw);
    }
    while (true)
    {
        skip();
        if (i >= body.size() || body[i] == '/')
        {
            break;
        }
        std::size_t key_start = i;
        while (i < body.size() && body[i] != '=' && !std::isspace(static_cast<unsigned char>(body[i])))
        {
            ++i;
        }
        std::string key = lowercase(body.substr(key_start, i - key_start));
        skip();
        std::string value;
        if (i < body.size() && body[i] == '=')
        {
            ++i;
            skip();
            if (i < body.size() && (body[i] == '"' || body[i] == '\''))
            {
                char quote = body[i++];
                std::size_t value_start = i;
                while (i < body.size() && body[i] != quote)
                {
                    ++i;
                }
                value = std::string(body.substr(value_start, i - value_start));
                if (i < body.size())
                {
                    ++i;
                }
            }
            else
            {
                std::size_t value_start = i;
                while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])))
                {
                    ++i;
                }
                value = std::string(body.substr(value_start, i - value_start));
            }
        }
        tag.attributes[key] = value;
    }
    return tag;
}

} // namespace

std::vector<Piece> scan_tags(std::string_view text)
{
    std::vector<Piece> out;
    std::size_t line = 1;
    std::size_t i = 0;
    std::string pending;
    std::size_t pending_line = 1;
    auto flush = [&] {
        if (!pending.empty())
        {
            Piece p;
            p.text = std::move(pending);
            p.line = pending_line;
            out.push_back(std::move(p));
            pending.clear();
        }
    };
    while (i < text.size())
    {
        char c = text[i];
        if (c == '<')
        {
            std::size_t tag_line = line;
            std::size_t j = i + 1;
            char quote = 0;
            while (j < text.size() && (quote != 0 || text[j] != '>'))
            {
                if (quote == 0 && (text[j] == '"' || text[j] == '\''))
                {
                    quote = text[j];
                }
                else if (quote != 0 && text[j] == quote)
                {
                    quote = 0;
                }
                if (text[j] == '\n')
                {
                    ++line;
                }
                ++j;
            }
            if (j >= text.size())
            {
                fail(ErrorCode::UnbalancedTag, "unterminated tag", tag_line, std::string(text.substr(i, 40)));
            }
            flush();
            Piece p;
            p.is_tag = true;
            p.tag = parse_tag(text.substr(i + 1, j - i - 1), tag_line);
            p.line = tag_line;
            out.push_back(std::move(p));
            i = j + 1;
            continue;
        }
        if (pending.empty())
        {
            pending_line = line;
        }
        if (c == '\n')
        {
            ++line;
        }
        pending += c;
        ++i;
    }
    flush();
    return out;
}

TokenChain::TokenChain(GraphBuilder& builder, Node start, PunctuationPolicy policy, std::string word_type,
                       std::string punct_type)
    : m_builder(builder)
    , m_current(start)
    , m_policy(policy)
    , m_word_type(std::move(word_type))
    , m_punct_type(std::move(punct_type))
{
}

std::pair<TokenChain::Node, TokenChain::Node> TokenChain::arc(Label label)
{
    Node from = m_current;
    Node to = m_builder.add_node();
    m_builder.add_arc(from, std::move(label), to);
    m_current = to;
    return {from, to};
}

void TokenChain::punctuation(std::string_view mark)
{
    Label label{m_punct_type, std::string(mark)};
    if (m_policy == PunctuationPolicy::separate)
    {
        arc(std::move(label));
        return;
    }
    Node p = m_builder.add_node();
    m_builder.add_arc(m_current, std::move(label), p);
    m_instants.emplace_back(m_current, p);
}

std::optional<std::pair<TokenChain::Node, TokenChain::Node>> TokenChain::token(std::string_view text)
{
    if (m_policy == PunctuationPolicy::attach)
    {
        return arc(Label{m_word_type, std::string(text)});
    }
    auto [word, punct] = split_trailing_punctuation(text);
    std::optional<std::pair<Node, Node>> out;
    if (!word.empty())
    {
        out = arc(Label{m_word_type, word});
    }
    if (!punct.empty())
    {
        punctuation(punct);
    }
    return out;
}

void TokenChain::finish()
{
    for (auto [boundary, instant] : m_instants)
    {
        if (const auto& t = m_builder.time(boundary))
        {
            m_builder.set_time(instant, *t);
        }
    }
    m_instants.clear();
}

TimeRef time_at(const ReaderOptions& options, std::string lexical)
{
    return TimeRef::parse(options.timeline_id, std::move(lexical));
}

Timeline make_timeline(const ReaderOptions& options, TimeUnit natural_unit, std::optional<Rational> natural_rate)
{
    Timeline timeline;
    timeline.id = options.timeline_id;
    timeline.unit = options.unit.value_or(natural_unit);
    timeline.rate = options.sample_rate ? options.sample_rate : natural_rate;
    timeline.check();
    return timeline;
}

} // namespace ag::formats::detail
