#include <cctype>
#include <map>
#include <optional>
#include <regex>

#include "ag/hierarchy.hpp"
#include "common.hpp"

namespace ag::formats
{

namespace
{

using Node = GraphBuilder::Node;

struct Word
{
    std::string text;
    std::string norm; ///< lowercased, trailing punctuation removed, <x> as [x]
    Node from;
    Node to;
    bool nonspeech;
};

/// Form used to line up tokens across the streams.
std::string normalize(std::string_view token)
{
    std::string out = detail::lowercase(token);
    for (char& c : out)
    {
        if (c == '<')
        {
            c = '[';
        }
        else if (c == '>')
        {
            c = ']';
        }
    }
    while (!out.empty() && detail::is_punctuation(std::string_view(&out.back(), 1)))
    {
        out.pop_back();
    }
    return out;
}

/// Word arcs of the aligned-word file, one chain per speaker.
std::vector<Word> read_words(std::string_view text, GraphBuilder& builder, const ReaderOptions& options)
{
    std::vector<Word> words;
    std::map<std::string, Node> chain;
    std::string word_type = options.type_for("word", "W");
    std::string gap_type = options.type_for("gap", "GAP");
    for (const detail::Line& line : detail::split_lines(text))
    {
        auto fields = detail::split_ws(line.text);
        if (fields.empty())
        {
            continue;
        }
        if (fields.size() != 4)
        {
            detail::fail(ErrorCode::MalformedLine, "expected '<speaker> <start> <duration> <word>'", line.number,
                         std::string(line.text));
        }
        std::string speaker(fields[0]);
        std::string token(fields[3]);
        auto current = chain.find(speaker);
        Word w{token, normalize(token), 0, 0, false};
        w.nonspeech = !w.norm.empty() && w.norm.front() == '[';

        if (fields[1] == "*" || fields[2] == "*")
        {
            w.from = current != chain.end() ? current->second : builder.add_node();
            w.to = builder.add_node();
        }
        else
        {
            TimeRef start = detail::time_at(options, std::string(fields[1]));
            Rational duration = detail::number_at(fields[2], line.number);
            if (duration < 0)
            {
                detail::fail(ErrorCode::NonMonotonicTimes, "negative duration", line.number, std::string(fields[2]));
            }
            std::size_t scale = std::max(decimal_scale(fields[1]), decimal_scale(fields[2]));
            TimeRef end = TimeRef::computed(options.timeline_id, start.offset() + duration, scale);

            if (current == chain.end())
            {
                w.from = builder.add_node(start);
            }
            else if (const auto& t = builder.time(current->second); t && t->same_point(start))
            {
                w.from = current->second;
            }
            else
            {
                if (t && start.offset() < t->offset())
                {
                    detail::fail(ErrorCode::NonMonotonicTimes,
                                 "word starts at " + start.lexical() + " before its speaker's previous word ends",
                                 line.number, start.lexical());
                }
                w.from = builder.add_node(start);
                builder.add_arc(current->second, Label{gap_type}, w.from);
            }
            w.to = builder.add_node(end);
        }
        builder.add_arc(w.from, Label{word_type, token}, w.to);
        chain[speaker] = w.to;
        words.push_back(std::move(w));
    }
    return words;
}

/// Nodes created while lining up sub-word and punctuation tokens, shared by
/// every stream so that part-of-speech and Treebank arcs meet.
struct SharedNodes
{
    std::map<std::pair<std::size_t, std::size_t>, Node> splits;   // (word, char offset)
    std::map<std::pair<std::size_t, std::size_t>, Node> instants; // (word, k-th mark)
};

class Aligner
{
public:
    Aligner(const std::vector<Word>& words, GraphBuilder& builder, SharedNodes& shared, std::string stream)
        : m_words(words), m_builder(builder), m_shared(shared), m_stream(std::move(stream))
    {
    }

    /// Source and target node of the next token. Punctuation becomes an
    /// instant after the last word; other tokens consume a prefix of the
    /// next word (non-speech words are skipped unless they match).
    std::pair<Node, Node> next(std::string_view raw, std::size_t line)
    {
        ++m_position;
        std::string x = normalize(raw);
        if (x.empty())
        {
            if (m_offset != 0 || !m_last)
            {
                failure(raw, line);
            }
            std::pair key{*m_last, m_marks++};
            auto it = m_shared.instants.find(key);
            if (it == m_shared.instants.end())
            {
                const Word& w = m_words[*m_last];
                Node instant = m_builder.time(w.to) ? m_builder.add_node(*m_builder.time(w.to)) : m_builder.add_node();
                m_builder.retain(instant);
                it = m_shared.instants.emplace(key, instant).first;
            }
            return {m_words[*m_last].to, it->second};
        }
        if (m_offset == 0)
        {
            while (m_next < m_words.size() && m_words[m_next].nonspeech && m_words[m_next].norm != x)
            {
                ++m_next;
            }
        }
        if (m_next >= m_words.size() || m_words[m_next].norm.compare(m_offset, x.size(), x) != 0)
        {
            failure(raw, line);
        }
        const Word& w = m_words[m_next];
        Node from = m_offset == 0 ? w.from : split(m_next, m_offset);
        m_offset += x.size();
        if (m_offset < w.norm.size())
        {
            return {from, split(m_next, m_offset)};
        }
        m_last = m_next++;
        m_offset = 0;
        m_marks = 0;
        return {from, w.to};
    }

    /// Target of the most recent complete word.
    std::optional<Node> last_target() const
    {
        return m_last ? std::optional<Node>(m_words[*m_last].to) : std::nullopt;
    }

private:
    Node split(std::size_t word, std::size_t offset)
    {
        auto [it, inserted] = m_shared.splits.try_emplace({word, offset}, 0);
        if (inserted)
        {
            it->second = m_builder.add_node();
            m_builder.retain(it->second);
        }
        return it->second;
    }

    [[noreturn]] void failure(std::string_view raw, std::size_t line) const
    {
        std::string expected = m_next < m_words.size() ? m_words[m_next].text : "end of words";
        detail::fail(ErrorCode::AlignmentFailure,
                     m_stream + " token " + std::to_string(m_position) + " '" + std::string(raw) +
                         "' does not line up with word '" + expected + "'",
                     line, std::to_string(m_position));
    }

    const std::vector<Word>& m_words;
    GraphBuilder& m_builder;
    SharedNodes& m_shared;
    std::string m_stream;
    std::size_t m_next = 0;
    std::size_t m_offset = 0;
    std::size_t m_marks = 0;
    std::optional<std::size_t> m_last;
    std::size_t m_position = 0;
};

void read_pos(std::string_view text, Aligner& aligner, GraphBuilder& builder, const ReaderOptions& options)
{
    std::string type = options.type_for("pos", "Pos");
    bool skip_mark = false;
    for (const detail::Line& line : detail::split_lines(text))
    {
        for (std::string_view token : detail::split_ws(line.text))
        {
            if (token == "[" || token == "]" || token.starts_with("===="))
            {
                continue;
            }
            auto slash = token.rfind('/');
            if (slash == std::string_view::npos || slash == 0 || slash + 1 == token.size())
            {
                detail::fail(ErrorCode::MalformedLine, "expected 'word/TAG'", line.number, std::string(token));
            }
            std::string_view word = token.substr(0, slash);
            std::string_view tag = token.substr(slash + 1);
            if (tag == "SYM" && word.starts_with("Speaker"))
            {
                skip_mark = true;
                continue;
            }
            if (skip_mark && detail::is_punctuation(word))
            {
                skip_mark = false;
                continue;
            }
            skip_mark = false;
            auto [from, to] = aligner.next(word, line.number);
            builder.add_arc(from, Label{type, detail::lowercase(word), std::string(tag)}, to);
        }
    }
}

void read_disfluencies(std::string_view text, Aligner& aligner, GraphBuilder& builder, const ReaderOptions& options)
{
    static const std::regex unit_prefix(R"([A-Za-z]+\.\d+:)");
    std::string type = options.type_for("disfluency", "DISF");

    struct Mark
    {
        std::string kind;
        std::optional<Node> start;
        std::optional<Node> plus;
        std::size_t line;
    };
    std::vector<Mark> marks;
    std::vector<std::size_t> brackets;
    std::vector<std::size_t> fillers;
    std::vector<std::size_t> pending;
    std::optional<Node> last;

    auto close = [&](std::size_t index, const std::string& kind) {
        const Mark& m = marks[index];
        if (m.start && last)
        {
            builder.add_arc(*m.start, Label{type, kind}, *last);
        }
    };

    for (const detail::Line& line : detail::split_lines(text))
    {
        for (std::string_view token : detail::split_ws(line.text))
        {
            if (token == "/" || std::regex_match(token.begin(), token.end(), unit_prefix))
            {
                continue;
            }
            if (token == "[")
            {
                brackets.push_back(marks.size());
                pending.push_back(marks.size());
                marks.push_back({"restart", std::nullopt, std::nullopt, line.number});
            }
            else if (token == "+")
            {
                if (brackets.empty())
                {
                    detail::fail(ErrorCode::UnbalancedTag, "'+' outside a restart", line.number, "+");
                }
                marks[brackets.back()].plus = last;
            }
            else if (token == "]")
            {
                if (brackets.empty())
                {
                    detail::fail(ErrorCode::UnbalancedTag, "']' without '['", line.number, "]");
                }
                std::size_t index = brackets.back();
                brackets.pop_back();
                close(index, "restart");
                const Mark& m = marks[index];
                if (m.start && m.plus && last)
                {
                    builder.add_arc(*m.start, Label{type, "reparandum"}, *m.plus);
                    builder.add_arc(*m.plus, Label{type, "repair"}, *last);
                }
            }
            else if (token.size() >= 2 && token.front() == '{')
            {
                fillers.push_back(marks.size());
                pending.push_back(marks.size());
                marks.push_back({std::string(token.substr(1)), std::nullopt, std::nullopt, line.number});
            }
            else if (token == "}")
            {
                if (fillers.empty())
                {
                    detail::fail(ErrorCode::UnbalancedTag, "'}' without '{'", line.number, "}");
                }
                close(fillers.back(), marks[fillers.back()].kind);
                fillers.pop_back();
            }
            else
            {
                std::string norm = normalize(token);
                bool wordlike = std::any_of(norm.begin(), norm.end(),
                                            [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
                if (!wordlike)
                {
                    continue;
                }
                auto [from, to] = aligner.next(token, line.number);
                for (std::size_t index : pending)
                {
                    marks[index].start = from;
                }
                pending.clear();
                last = to;
            }
        }
    }
    if (!brackets.empty() || !fillers.empty())
    {
        std::size_t index = !brackets.empty() ? brackets.back() : fillers.back();
        detail::fail(ErrorCode::UnbalancedTag, "unclosed disfluency bracket", marks[index].line, marks[index].kind);
    }
}

bool is_code_tree(const SyntaxTree& tree)
{
    return tree.label == "CODE" || (tree.label.empty() && !tree.children.empty() && tree.children[0].label == "CODE");
}

} // namespace

ReadResult read_swb(std::string_view word_text, std::string_view pos_text, std::string_view disfl_text,
                    std::string_view tree_text, const ReaderOptions& options)
{
    GraphBuilder builder(options.annotation_ns);
    std::vector<Word> words = read_words(word_text, builder, options);
    SharedNodes shared;

    if (!pos_text.empty())
    {
        Aligner aligner(words, builder, shared, "part-of-speech");
        read_pos(pos_text, aligner, builder, options);
    }
    if (!disfl_text.empty())
    {
        Aligner aligner(words, builder, shared, "disfluency");
        read_disfluencies(disfl_text, aligner, builder, options);
    }

    std::vector<SyntaxTree> trees;
    std::vector<std::vector<std::pair<Node, Node>>> leaves;
    if (!tree_text.empty())
    {
        Aligner aligner(words, builder, shared, "treebank");
        for (SyntaxTree& tree : parse_penn_forest(tree_text))
        {
            if (is_code_tree(tree))
            {
                continue;
            }
            std::vector<std::pair<Node, Node>> spans;
            for (const SyntaxTree* leaf : tree.leaves())
            {
                if (is_boundary_marker(leaf->label) || is_empty_element(leaf->label))
                {
                    continue;
                }
                spans.push_back(aligner.next(leaf->label, 0));
            }
            trees.push_back(std::move(tree));
            leaves.push_back(std::move(spans));
        }
    }

    AnnotationGraph base = builder.build();
    if (trees.empty())
    {
        Timeline timeline = detail::make_timeline(options, TimeUnit::seconds);
        return {std::move(base), std::move(timeline), {}};
    }

    std::vector<NodeId> ids = builder.ids();
    TimeMap times;
    for (std::size_t n = 0; n < ids.size(); ++n)
    {
        if (const auto& t = builder.time(n))
        {
            times.emplace(ids[n], *t);
        }
    }
    ArcSet arcs = base.arcs();
    ChartOptions chart;
    chart.constituent_type = options.type_for("treebank", "T");
    for (std::size_t i = 0; i < trees.size(); ++i)
    {
        std::vector<Arc> pseudo;
        for (auto [from, to] : leaves[i])
        {
            pseudo.push_back(Arc{ids[from], Label{"W"}, ids[to]});
        }
        chart.trace_prefix = "s" + std::to_string(i) + "t";
        ChartPiece piece = constituent_arcs(trees[i], pseudo, times, chart);
        arcs.insert(piece.arcs.begin(), piece.arcs.end());
        times.insert(piece.times.begin(), piece.times.end());
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::seconds);
    return {AnnotationGraph::build(std::move(arcs), std::move(times)), std::move(timeline), {}};
}

} // namespace ag::formats
