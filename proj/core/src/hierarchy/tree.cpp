#include <cctype>

#include "ag/error.hpp"
#include "ag/hierarchy.hpp"

namespace ag
{

namespace
{

class PennParser
{
public:
    explicit PennParser(std::string_view text) : m_text(text) {}

    bool at_end()
    {
        skip_space();
        return m_pos == m_text.size();
    }

    SyntaxTree tree()
    {
        m_leaf_count = 0;
        SyntaxTree t = bracket();
        if (t.label.empty() && t.children.size() == 1 && !t.children.front().leaf)
        {
            SyntaxTree inner = std::move(t.children.front());
            return inner;
        }
        return t;
    }

private:
    void skip_space()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos])))
        {
            ++m_pos;
        }
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::MalformedTree, what + " at offset " + std::to_string(m_pos), std::string(m_text));
    }

    std::string atom()
    {
        std::size_t start = m_pos;
        while (m_pos < m_text.size() && !std::isspace(static_cast<unsigned char>(m_text[m_pos])) &&
               m_text[m_pos] != '(' && m_text[m_pos] != ')')
        {
            ++m_pos;
        }
        return std::string(m_text.substr(start, m_pos - start));
    }

    SyntaxTree bracket()
    {
        skip_space();
        if (m_pos >= m_text.size() || m_text[m_pos] != '(')
        {
            fail("expected '('");
        }
        ++m_pos;
        skip_space();
        SyntaxTree node;
        if (m_pos < m_text.size() && m_text[m_pos] != '(' && m_text[m_pos] != ')')
        {
            node.label = atom();
        }
        while (true)
        {
            skip_space();
            if (m_pos >= m_text.size())
            {
                fail("unbalanced brackets");
            }
            if (m_text[m_pos] == ')')
            {
                ++m_pos;
                break;
            }
            if (m_text[m_pos] == '(')
            {
                node.children.push_back(bracket());
            }
            else if (std::string token = atom(); !is_boundary_marker(token))
            {
                node.children.push_back(SyntaxTree::make_leaf(std::move(token), m_leaf_count++));
            }
        }
        if (node.children.empty())
        {
            fail("constituent without children");
        }
        return node;
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
    std::size_t m_leaf_count = 0;
};

void collect_leaves(const SyntaxTree& t, std::vector<const SyntaxTree*>& out)
{
    if (t.leaf)
    {
        out.push_back(&t);
        return;
    }
    for (const SyntaxTree& c : t.children)
    {
        collect_leaves(c, out);
    }
}

} // namespace

SyntaxTree SyntaxTree::make_leaf(std::string token, std::size_t position)
{
    SyntaxTree t;
    t.label = std::move(token);
    t.position = position;
    t.leaf = true;
    return t;
}

SyntaxTree SyntaxTree::make_node(std::string label, std::vector<SyntaxTree> children)
{
    SyntaxTree t;
    t.label = std::move(label);
    t.children = std::move(children);
    return t;
}

std::vector<const SyntaxTree*> SyntaxTree::leaves() const
{
    std::vector<const SyntaxTree*> out;
    collect_leaves(*this, out);
    return out;
}

std::string SyntaxTree::str() const
{
    if (leaf)
    {
        return label;
    }
    std::string out = "(" + label;
    for (const SyntaxTree& c : children)
    {
        out += ' ';
        out += c.str();
    }
    out += ')';
    return out;
}

SyntaxTree parse_penn(std::string_view text)
{
    PennParser parser(text);
    SyntaxTree t = parser.tree();
    if (!parser.at_end())
    {
        throw Error(ErrorCode::MalformedTree, "trailing text after tree", std::string(text));
    }
    return t;
}

std::vector<SyntaxTree> parse_penn_forest(std::string_view text)
{
    PennParser parser(text);
    std::vector<SyntaxTree> out;
    while (!parser.at_end())
    {
        out.push_back(parser.tree());
    }
    return out;
}

bool is_empty_element(std::string_view token) noexcept
{
    return (!token.empty() && token.front() == '*') || token == "0" || token == "[" || token == "]" ||
           token == "+";
}

bool is_boundary_marker(std::string_view token) noexcept
{
    return token == "E_S" || token == "N_S";
}

} // namespace ag
