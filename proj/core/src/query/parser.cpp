#include <cctype>
#include <optional>
#include <regex>

#include "ag/error.hpp"
#include "ag/query.hpp"

namespace ag
{

namespace
{

struct Token
{
    enum class Kind
    {
        open,
        close,
        word,
        string,
        end,
    };
    Kind kind;
    std::string text;
    std::size_t position;
};

[[noreturn]] void syntax(const std::string& message, std::size_t position)
{
    throw Error(ErrorCode::QuerySyntax, message + " at offset " + std::to_string(position), std::to_string(position));
}

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size())
    {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)))
        {
            ++i;
        }
        else if (c == '(' || c == ')')
        {
            out.push_back({c == '(' ? Token::Kind::open : Token::Kind::close, std::string(1, c), i});
            ++i;
        }
        else if (c == '"')
        {
            std::size_t start = i++;
            std::string value;
            while (i < text.size() && text[i] != '"')
            {
                if (text[i] == '\\' && i + 1 < text.size())
                {
                    ++i;
                }
                value += text[i++];
            }
            if (i >= text.size())
            {
                syntax("unterminated string", start);
            }
            ++i;
            out.push_back({Token::Kind::string, std::move(value), start});
        }
        else
        {
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
                   text[i] != ')' && text[i] != '"')
            {
                ++i;
            }
            out.push_back({Token::Kind::word, std::string(text.substr(start, i - start)), start});
        }
    }
    out.push_back({Token::Kind::end, "", text.size()});
    return out;
}

/// type -> 1, content -> 2, fieldK -> K.
std::optional<std::size_t> field_number(std::string_view name)
{
    if (name == "type")
    {
        return 1;
    }
    if (name == "content")
    {
        return 2;
    }
    if (name.size() > 5 && name.starts_with("field") && name[5] != '0')
    {
        std::size_t k = 0;
        for (char c : name.substr(5))
        {
            if (!std::isdigit(static_cast<unsigned char>(c)) || k > 100000)
            {
                return std::nullopt;
            }
            k = k * 10 + static_cast<std::size_t>(c - '0');
        }
        return k;
    }
    return std::nullopt;
}

std::size_t require_field(std::string_view name, std::size_t position)
{
    auto k = field_number(name);
    if (!k)
    {
        throw Error(ErrorCode::UnknownField,
                    "unknown field '" + std::string(name) + "' (use type, content or fieldK) at offset " +
                        std::to_string(position),
                    std::string(name));
    }
    return *k;
}

bool is_keyword(std::string_view w)
{
    static constexpr std::string_view keywords[] = {"and",      "or",     "not",     "instant",   "overlaps",
                                                    "within",   "span",   "of",      "on",        "precedes",
                                                    "follows",  "includes", "inside", "component", "class"};
    for (std::string_view k : keywords)
    {
        if (w == k)
        {
            return true;
        }
    }
    return false;
}

class Parser
{
public:
    explicit Parser(std::string_view text) : m_tokens(lex(text)) {}

    QueryPtr run()
    {
        if (peek().kind == Token::Kind::end)
        {
            syntax("empty query", 0);
        }
        QueryPtr q = disjunction();
        if (peek().kind != Token::Kind::end)
        {
            syntax("unexpected '" + peek().text + "'", peek().position);
        }
        return q;
    }

private:
    const Token& peek() const { return m_tokens[m_pos]; }
    const Token& take() { return m_tokens[m_pos++]; }

    bool at_word(std::string_view w) const { return peek().kind == Token::Kind::word && peek().text == w; }

    void expect_word(std::string_view w)
    {
        if (!at_word(w))
        {
            syntax("expected '" + std::string(w) + "'", peek().position);
        }
        ++m_pos;
    }

    bool starts_unary() const
    {
        const Token& t = peek();
        return t.kind == Token::Kind::open || (t.kind == Token::Kind::word && t.text != "and" && t.text != "or");
    }

    QueryPtr disjunction()
    {
        QueryPtr q = conjunction();
        while (at_word("or"))
        {
            ++m_pos;
            q = either(q, conjunction());
        }
        return q;
    }

    QueryPtr conjunction()
    {
        QueryPtr q = unary();
        while (true)
        {
            if (at_word("and"))
            {
                ++m_pos;
                q = both(q, unary());
            }
            else if (starts_unary())
            {
                q = both(q, unary());
            }
            else
            {
                return q;
            }
        }
    }

    QueryPtr unary()
    {
        const Token& t = peek();
        if (t.kind == Token::Kind::open)
        {
            ++m_pos;
            QueryPtr q = disjunction();
            if (peek().kind != Token::Kind::close)
            {
                syntax("expected ')'", peek().position);
            }
            ++m_pos;
            return q;
        }
        if (t.kind != Token::Kind::word)
        {
            syntax(t.kind == Token::Kind::end ? "unexpected end of query" : "unexpected '" + t.text + "'",
                   t.position);
        }
        if (t.text == "not")
        {
            ++m_pos;
            return negate(unary());
        }
        return primitive();
    }

    std::string value()
    {
        const Token& t = peek();
        if (t.kind != Token::Kind::word && t.kind != Token::Kind::string)
        {
            syntax("expected a value", t.position);
        }
        ++m_pos;
        return t.text;
    }

    std::string number()
    {
        const Token& t = peek();
        std::string text = value();
        try
        {
            parse_decimal(text);
        }
        catch (const Error&)
        {
            syntax("expected a number, found '" + text + "'", t.position);
        }
        return text;
    }

    /// "(" query ")" or a label literal "TYPE/CONTENT/...".
    QueryPtr reference()
    {
        if (peek().kind == Token::Kind::open)
        {
            return unary();
        }
        std::size_t position = peek().position;
        std::string literal = value();
        QueryPtr q;
        std::size_t field = 1;
        std::size_t from = 0;
        while (true)
        {
            auto slash = literal.find('/', from);
            std::string part = literal.substr(from, slash == std::string::npos ? std::string::npos : slash - from);
            QueryPtr m = make_query(Query{FieldMatch{field++, part, false}});
            q = q ? both(q, m) : m;
            if (slash == std::string::npos)
            {
                break;
            }
            from = slash + 1;
        }
        if (!q)
        {
            syntax("empty label literal", position);
        }
        return q;
    }

    QueryPtr relation(RelationMatch::Kind kind, std::size_t field = 0)
    {
        return make_query(Query{RelationMatch{kind, field, reference()}});
    }

    QueryPtr interval(IntervalMatch::Mode mode)
    {
        if (at_word("span"))
        {
            ++m_pos;
            expect_word("of");
            return relation(mode == IntervalMatch::Mode::within ? RelationMatch::Kind::within_span
                                                                : RelationMatch::Kind::overlaps_span);
        }
        IntervalMatch m;
        m.mode = mode;
        std::size_t position = peek().position;
        m.start = number();
        m.end = number();
        if (parse_decimal(m.end) < parse_decimal(m.start))
        {
            syntax("interval ends before it starts", position);
        }
        if (at_word("on"))
        {
            ++m_pos;
            m.timeline = value();
        }
        return make_query(Query{std::move(m)});
    }

    QueryPtr primitive()
    {
        const Token& t = take();
        const std::string& w = t.text;
        if (w == "instant")
        {
            return make_query(Query{InstantMatch{}});
        }
        if (w == "overlaps")
        {
            return interval(IntervalMatch::Mode::overlaps);
        }
        if (w == "within")
        {
            return interval(IntervalMatch::Mode::within);
        }
        if (w == "precedes")
        {
            return relation(RelationMatch::Kind::precedes);
        }
        if (w == "follows")
        {
            return relation(RelationMatch::Kind::follows);
        }
        if (w == "includes")
        {
            return relation(RelationMatch::Kind::includes);
        }
        if (w == "inside")
        {
            return relation(RelationMatch::Kind::inside);
        }
        if (w == "component")
        {
            return relation(RelationMatch::Kind::component);
        }
        if (w == "class")
        {
            std::size_t position = peek().position;
            std::string name = value();
            return relation(RelationMatch::Kind::same_class, require_field(name, position));
        }
        auto op = w.find_first_of("=~");
        if (op == std::string::npos || op == 0)
        {
            syntax(is_keyword(w) ? "misplaced '" + w + "'" : "expected a predicate, found '" + w + "'", t.position);
        }
        std::size_t field = require_field(std::string_view(w).substr(0, op), t.position);
        std::string rhs = w.substr(op + 1);
        if (rhs.empty())
        {
            if (peek().kind != Token::Kind::string)
            {
                syntax("expected a value after '" + w + "'", peek().position);
            }
            rhs = take().text;
        }
        bool regex = w[op] == '~';
        if (regex)
        {
            try
            {
                std::regex check(rhs, std::regex::ECMAScript);
            }
            catch (const std::regex_error&)
            {
                syntax("invalid regular expression '" + rhs + "'", t.position);
            }
        }
        return make_query(Query{FieldMatch{field, std::move(rhs), regex}});
    }

    std::vector<Token> m_tokens;
    std::size_t m_pos = 0;
};

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"' || c == '\\')
        {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

std::string field_name(std::size_t k)
{
    return k == 1 ? "type" : k == 2 ? "content" : "field" + std::to_string(k);
}

} // namespace

QueryPtr parse_query(std::string_view text)
{
    return Parser(text).run();
}

QueryPtr make_query(Query q)
{
    return std::make_shared<const Query>(std::move(q));
}

QueryPtr both(QueryPtr a, QueryPtr b)
{
    return make_query(Query{BinaryQuery{BinaryQuery::Op::conjunction, std::move(a), std::move(b)}});
}

QueryPtr either(QueryPtr a, QueryPtr b)
{
    return make_query(Query{BinaryQuery{BinaryQuery::Op::disjunction, std::move(a), std::move(b)}});
}

QueryPtr negate(QueryPtr a)
{
    return make_query(Query{NotQuery{std::move(a)}});
}

std::string Query::str() const
{
    struct Printer
    {
        std::string operator()(const FieldMatch& m) const
        {
            return field_name(m.field) + (m.regex ? "~" : "=") + quote(m.value);
        }
        std::string operator()(const IntervalMatch& m) const
        {
            std::string out = m.mode == IntervalMatch::Mode::within ? "within " : "overlaps ";
            out += m.start + " " + m.end;
            if (m.timeline)
            {
                out += " on " + quote(*m.timeline);
            }
            return out;
        }
        std::string operator()(const InstantMatch&) const { return "instant"; }
        std::string operator()(const RelationMatch& m) const
        {
            std::string ref = "(" + m.reference->str() + ")";
            switch (m.kind)
            {
            case RelationMatch::Kind::precedes: return "precedes " + ref;
            case RelationMatch::Kind::follows: return "follows " + ref;
            case RelationMatch::Kind::includes: return "includes " + ref;
            case RelationMatch::Kind::inside: return "inside " + ref;
            case RelationMatch::Kind::component: return "component " + ref;
            case RelationMatch::Kind::same_class: return "class " + field_name(m.field) + " " + ref;
            case RelationMatch::Kind::within_span: return "within span of " + ref;
            case RelationMatch::Kind::overlaps_span: return "overlaps span of " + ref;
            }
            return ref;
        }
        std::string operator()(const NotQuery& m) const { return "not (" + m.operand->str() + ")"; }
        std::string operator()(const BinaryQuery& m) const
        {
            return "(" + m.lhs->str() + (m.op == BinaryQuery::Op::conjunction ? ") and (" : ") or (") +
                   m.rhs->str() + ")";
        }
    };
    return std::visit(Printer{}, node);
}

} // namespace ag
