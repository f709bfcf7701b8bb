#include <algorithm>
#include <map>

#include "ag/error.hpp"
#include "ag/hierarchy.hpp"

namespace ag
{

namespace
{

/// What a tree leaf contributes to the chart.
struct LeafRef
{
    bool trace = false;
    std::size_t index = 0; // word index, or trace slot
};

struct TraceSlot
{
    NodeId from;
    NodeId to;
};

class ChartWriter
{
public:
    ChartWriter(std::span<const Arc> words, const TimeMap& times, const ChartOptions& options)
        : m_words(words), m_times(times), m_options(options)
    {
    }

    ChartPiece run(const SyntaxTree& tree)
    {
        std::size_t found = count_words(tree);
        if (found != m_words.size())
        {
            throw Error(ErrorCode::FringeMismatch,
                        "tree has " + std::to_string(found) + " word leaves but " + std::to_string(m_words.size()) +
                            " word arcs were given",
                        "expected " + std::to_string(m_words.size()) + ", found " + std::to_string(found));
        }
        visit(tree);
        return std::move(m_piece);
    }

private:
    struct Extent
    {
        std::optional<std::size_t> first_word, last_word;
        std::optional<std::size_t> first_trace, last_trace;
    };

    static std::size_t count_words(const SyntaxTree& tree)
    {
        std::size_t n = 0;
        for (const SyntaxTree* leaf : tree.leaves())
        {
            if (!is_boundary_marker(leaf->label) && !is_empty_element(leaf->label))
            {
                ++n;
            }
        }
        return n;
    }

    const NodeId& boundary(std::size_t words_before) const
    {
        if (m_words.empty())
        {
            throw Error(ErrorCode::FringeMismatch, "empty elements need at least one word to attach to",
                        "expected 0, found 0");
        }
        return words_before == 0 ? m_words.front().source : m_words[words_before - 1].target;
    }

    std::size_t add_trace(const std::string& token)
    {
        const NodeId& at = boundary(m_next_word);
        std::size_t& count = m_traces_at[m_next_word];
        NodeId from = count == 0 ? at : m_slots[m_last_slot_at.at(m_next_word)].to;
        NodeId to(at.str() + "." + m_options.trace_prefix + std::to_string(count));
        ++count;
        m_piece.arcs.insert(Arc{from, Label{m_options.trace_type, token}, to});
        if (auto it = m_times.find(at); it != m_times.end())
        {
            m_piece.times.insert_or_assign(to, it->second);
        }
        m_slots.push_back({from, to});
        m_last_slot_at[m_next_word] = m_slots.size() - 1;
        return m_slots.size() - 1;
    }

    Extent visit(const SyntaxTree& node)
    {
        Extent ext;
        if (node.leaf)
        {
            if (is_boundary_marker(node.label))
            {
                return ext;
            }
            if (is_empty_element(node.label))
            {
                std::size_t slot = add_trace(node.label);
                ext.first_trace = ext.last_trace = slot;
                return ext;
            }
            ext.first_word = ext.last_word = m_next_word++;
            return ext;
        }
        for (const SyntaxTree& child : node.children)
        {
            Extent c = visit(child);
            if (c.first_word)
            {
                if (!ext.first_word)
                {
                    ext.first_word = c.first_word;
                }
                ext.last_word = c.last_word;
            }
            if (c.first_trace)
            {
                if (!ext.first_trace)
                {
                    ext.first_trace = c.first_trace;
                }
                ext.last_trace = c.last_trace;
            }
        }
        if (node.label.empty())
        {
            return ext;
        }
        Label label{m_options.constituent_type, node.label};
        if (ext.first_word)
        {
            m_piece.arcs.insert(Arc{m_words[*ext.first_word].source, label, m_words[*ext.last_word].target});
        }
        else if (ext.first_trace)
        {
            m_piece.arcs.insert(Arc{m_slots[*ext.first_trace].from, label, m_slots[*ext.last_trace].to});
        }
        return ext;
    }

    std::span<const Arc> m_words;
    const TimeMap& m_times;
    const ChartOptions& m_options;
    ChartPiece m_piece;
    std::size_t m_next_word = 0;
    std::vector<TraceSlot> m_slots;
    std::map<std::size_t, std::size_t> m_traces_at;
    std::map<std::size_t, std::size_t> m_last_slot_at;
};

struct Span
{
    std::size_t start;
    std::size_t end;
    std::string category;
    std::size_t rank;
    std::vector<std::size_t> children;
};

} // namespace

ChartPiece constituent_arcs(const SyntaxTree& tree, std::span<const Arc> words, const TimeMap& times,
                            const ChartOptions& options)
{
    return ChartWriter(words, times, options).run(tree);
}

AnnotationGraph tree_to_chart(const SyntaxTree& tree, const std::vector<Arc>& words, const TimeMap& times,
                              const ChartOptions& options)
{
    ChartPiece piece = constituent_arcs(tree, words, times, options);
    piece.arcs.insert(words.begin(), words.end());
    TimeMap all = times;
    all.insert(piece.times.begin(), piece.times.end());
    return AnnotationGraph::build(std::move(piece.arcs), std::move(all));
}

std::vector<SyntaxTree> chart_to_trees(const AnnotationGraph& graph, const ForestOptions& options)
{
    std::map<NodeId, const Arc*> word_out;
    std::map<NodeId, const Arc*> word_in;
    for (const Arc& arc : graph.arcs())
    {
        if (arc.label.type() != options.word_type)
        {
            continue;
        }
        if (!word_out.emplace(arc.source, &arc).second || !word_in.emplace(arc.target, &arc).second)
        {
            throw Error(ErrorCode::InvalidChart, "word arcs branch at " + arc.str(), arc.str());
        }
    }

    // Word chains, ordered by their first node.
    std::vector<const Arc*> words;
    std::map<NodeId, std::pair<std::size_t, std::size_t>> boundary; // node -> (chain, word index)
    std::size_t chain = 0;
    for (const auto& [node, first] : word_out)
    {
        if (word_in.contains(node))
        {
            continue;
        }
        boundary.emplace(node, std::make_pair(chain, words.size()));
        for (const Arc* w = first; w != nullptr;)
        {
            words.push_back(w);
            boundary.emplace(w->target, std::make_pair(chain, words.size()));
            auto next = word_out.find(w->target);
            w = next == word_out.end() ? nullptr : next->second;
        }
        ++chain;
    }
    if (words.size() != word_out.size())
    {
        throw Error(ErrorCode::InvalidChart, "word arcs do not form chains");
    }

    auto rank_of = [&](const std::string& category) {
        auto it = std::find(options.type_rank.begin(), options.type_rank.end(), category);
        return static_cast<std::size_t>(it - options.type_rank.begin());
    };

    std::vector<Span> spans;
    for (const Arc& arc : graph.arcs())
    {
        if (arc.label.type() != options.constituent_type)
        {
            continue;
        }
        auto s = boundary.find(arc.source);
        auto t = boundary.find(arc.target);
        if (s == boundary.end() || t == boundary.end() || s->second.first != t->second.first ||
            t->second.second <= s->second.second)
        {
            throw Error(ErrorCode::InvalidChart, "constituent " + arc.str() + " does not span a word stretch",
                        arc.str());
        }
        spans.push_back({s->second.second, t->second.second, arc.label.content(), rank_of(arc.label.content()), {}});
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
        if (a.start != b.start)
            return a.start < b.start;
        if (a.end != b.end)
            return a.end > b.end;
        if (a.rank != b.rank)
            return a.rank < b.rank;
        return a.category < b.category;
    });
    for (std::size_t i = 1; i < spans.size(); ++i)
    {
        const Span& a = spans[i - 1];
        const Span& b = spans[i];
        if (a.start == b.start && a.end == b.end && a.rank == b.rank)
        {
            throw Error(ErrorCode::AmbiguousNesting,
                        "constituents " + a.category + " and " + b.category + " span the same words",
                        a.category + " ~ " + b.category);
        }
    }

    std::vector<std::size_t> roots;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < spans.size(); ++i)
    {
        while (!stack.empty() && spans[stack.back()].end <= spans[i].start)
        {
            stack.pop_back();
        }
        if (!stack.empty() && spans[i].end > spans[stack.back()].end)
        {
            const Span& outer = spans[stack.back()];
            throw Error(ErrorCode::CrossingBrackets,
                        "constituents " + outer.category + " and " + spans[i].category + " overlap partially",
                        outer.category + " x " + spans[i].category);
        }
        (stack.empty() ? roots : spans[stack.back()].children).push_back(i);
        stack.push_back(i);
    }

    auto leaf = [&](std::size_t k) { return SyntaxTree::make_leaf(words[k]->label.content(), k); };

    // Children interleaved with the words they do not cover.
    auto fill = [&](auto& self, std::size_t start, std::size_t end,
                    const std::vector<std::size_t>& kids) -> std::vector<SyntaxTree> {
        std::vector<SyntaxTree> out;
        std::size_t pos = start;
        for (std::size_t k : kids)
        {
            for (; pos < spans[k].start; ++pos)
            {
                out.push_back(leaf(pos));
            }
            out.push_back(SyntaxTree::make_node(spans[k].category,
                                                self(self, spans[k].start, spans[k].end, spans[k].children)));
            pos = spans[k].end;
        }
        for (; pos < end; ++pos)
        {
            out.push_back(leaf(pos));
        }
        return out;
    };
    return fill(fill, 0, words.size(), roots);
}

} // namespace ag
