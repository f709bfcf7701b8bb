#include "agtool/checks.hpp"

#include <sstream>

#include "ag/error.hpp"
#include "ag/relations.hpp"

namespace agtool
{

namespace
{

std::vector<std::string> words(std::string_view line)
{
    std::istringstream in{std::string(line)};
    std::vector<std::string> out;
    for (std::string w; in >> w;)
    {
        out.push_back(w);
    }
    return out;
}

/// Calls fn(line_number, line) for each line that is not a '#' comment.
/// Values such as "h#" may contain '#', so only whole lines are comments.
template <typename Fn>
void for_each_line(std::string_view text, Fn fn)
{
    std::size_t number = 0;
    while (!text.empty())
    {
        ++number;
        auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] == '#')
        {
            continue;
        }
        fn(number, line);
    }
}

[[noreturn]] void malformed(std::size_t line, std::string_view text, const std::string& what)
{
    throw ag::Error(ag::ErrorCode::MalformedLine, what, std::string(text), line);
}

} // namespace

Vocabulary parse_vocabulary(std::string_view text)
{
    Vocabulary out;
    for_each_line(text, [&](std::size_t number, std::string_view line) {
        auto ws = words(line);
        if (ws.empty())
        {
            return;
        }
        std::string type = ws.front();
        if (type.size() < 2 || type.back() != ':')
        {
            malformed(number, line, "vocabulary lines start with 'TYPE:'");
        }
        type.pop_back();
        auto& values = out[type];
        values.insert(ws.begin() + 1, ws.end());
    });
    return out;
}

std::vector<NestingRule> parse_rules(std::string_view text)
{
    std::vector<NestingRule> out;
    for_each_line(text, [&](std::size_t number, std::string_view line) {
        auto ws = words(line);
        if (ws.empty())
        {
            return;
        }
        if (ws.size() != 3 || ws[1] != "in")
        {
            malformed(number, line, "nesting rules read 'INNER in OUTER'");
        }
        out.push_back({ws[0], ws[2]});
    });
    return out;
}

std::vector<Finding> check_vocabulary(const ag::AnnotationGraph& graph, const Vocabulary& vocabulary)
{
    std::vector<Finding> out;
    for (const ag::Arc& arc : graph.arcs())
    {
        auto it = vocabulary.find(arc.label.type());
        if (it == vocabulary.end())
        {
            continue;
        }
        auto content = arc.label.field(2);
        std::string value = content ? std::string(*content) : std::string();
        if (!it->second.contains(value))
        {
            out.push_back({"vocabulary", "'" + value + "' is not in the " + arc.label.type() + " vocabulary",
                           arc.str()});
        }
    }
    return out;
}

std::vector<Finding> check_balance(const ag::AnnotationGraph& graph)
{
    static constexpr std::string_view opens = "([{<";
    static constexpr std::string_view closes = ")]}>";
    std::vector<Finding> out;
    for (const ag::Arc& arc : graph.arcs())
    {
        for (const std::string& field : arc.label.fields())
        {
            std::string stack;
            bool ok = true;
            std::size_t quotes = 0;
            for (char c : field)
            {
                if (c == '"')
                {
                    ++quotes;
                }
                else if (auto o = opens.find(c); o != std::string_view::npos)
                {
                    stack.push_back(closes[o]);
                }
                else if (closes.find(c) != std::string_view::npos)
                {
                    if (stack.empty() || stack.back() != c)
                    {
                        ok = false;
                        break;
                    }
                    stack.pop_back();
                }
            }
            if (!ok || !stack.empty() || quotes % 2 != 0)
            {
                out.push_back({"balance", "unbalanced brackets or quotes in '" + field + "'", arc.str()});
                break;
            }
        }
    }
    return out;
}

std::vector<Finding> check_nesting(const ag::AnnotationGraph& graph, const std::vector<NestingRule>& rules)
{
    std::vector<Finding> out;
    if (rules.empty())
    {
        return out;
    }
    ag::RelationContext relations(graph);
    const ag::Topology& topo = relations.topology();
    std::map<std::string, std::vector<std::size_t>> by_type;
    for (std::size_t i = 0; i < topo.arc_count(); ++i)
    {
        by_type[topo.arc(i).label.type()].push_back(i);
    }
    for (const NestingRule& rule : rules)
    {
        const auto& outers = by_type[rule.outer];
        for (std::size_t inner : by_type[rule.inner])
        {
            bool inside = false;
            for (std::size_t outer : outers)
            {
                if (relations.includes(outer, inner))
                {
                    inside = true;
                    break;
                }
            }
            if (!inside)
            {
                out.push_back({"nesting", rule.inner + " arc is not inside any " + rule.outer + " arc",
                               topo.arc(inner).str()});
            }
        }
    }
    return out;
}

} // namespace agtool
