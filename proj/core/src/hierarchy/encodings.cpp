#include <algorithm>
#include <map>
#include <set>

#include "ag/error.hpp"
#include "ag/hierarchy.hpp"

namespace ag
{

namespace
{

std::string class_id(std::size_t position)
{
    return std::to_string(position + 1);
}

/// Word arcs of one type in chain order.
std::vector<const Arc*> word_chain(const AnnotationGraph& graph, const std::string& word_type)
{
    std::map<NodeId, const Arc*> out;
    std::set<NodeId> targets;
    for (const Arc& arc : graph.arcs())
    {
        if (arc.label.type() == word_type)
        {
            out.emplace(arc.source, &arc);
            targets.insert(arc.target);
        }
    }
    std::vector<const Arc*> chain;
    for (const auto& [node, first] : out)
    {
        if (targets.contains(node))
        {
            continue;
        }
        for (const Arc* w = first; w != nullptr;)
        {
            chain.push_back(w);
            auto next = out.find(w->target);
            w = next == out.end() ? nullptr : next->second;
        }
    }
    return chain;
}

struct Numbered
{
    const SyntaxTree* node;
    std::size_t id;
    std::size_t parent; // 0 for the root
};

void number_preorder(const SyntaxTree& t, std::size_t parent, std::vector<Numbered>& out)
{
    std::size_t id = out.size() + 1;
    out.push_back({&t, id, parent});
    for (const SyntaxTree& c : t.children)
    {
        number_preorder(c, id, out);
    }
}

} // namespace

AnnotationGraph encode_dependencies(const std::vector<Arc>& words,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& heads,
                                    const TimeMap& times)
{
    std::vector<std::optional<std::size_t>> head_of(words.size());
    for (const auto& [dependent, head] : heads)
    {
        if (dependent >= words.size() || head >= words.size())
        {
            std::size_t bad = dependent >= words.size() ? dependent : head;
            throw Error(ErrorCode::UnknownToken, "no word at position " + std::to_string(bad), std::to_string(bad));
        }
        if (head_of[dependent])
        {
            throw Error(ErrorCode::MultipleHeads,
                        "word " + std::to_string(dependent) + " (" + words[dependent].label.content() +
                            ") has more than one head",
                        std::to_string(dependent));
        }
        head_of[dependent] = head;
    }
    ArcSet arcs;
    for (std::size_t i = 0; i < words.size(); ++i)
    {
        const Arc& w = words[i];
        arcs.insert(Arc{w.source,
                        Label{w.label.type(), w.label.content(), class_id(i), head_of[i] ? class_id(*head_of[i]) : ""},
                        w.target});
    }
    return AnnotationGraph::build(std::move(arcs), times);
}

std::vector<std::optional<std::size_t>> decode_dependencies(const AnnotationGraph& graph,
                                                            const std::string& word_type)
{
    auto chain = word_chain(graph, word_type);
    std::map<std::string, std::size_t> by_class;
    for (std::size_t i = 0; i < chain.size(); ++i)
    {
        if (auto deps = chain[i]->label.field(3))
        {
            by_class.emplace(std::string(*deps), i);
        }
    }
    std::vector<std::optional<std::size_t>> out(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i)
    {
        auto head = chain[i]->label.field(4);
        if (!head || head->empty())
        {
            continue;
        }
        auto it = by_class.find(std::string(*head));
        if (it == by_class.end())
        {
            throw Error(ErrorCode::UnknownToken, "head class " + std::string(*head) + " names no word",
                        std::string(*head));
        }
        out[i] = it->second;
    }
    return out;
}

AnnotationGraph encode_discontinuous(const SyntaxTree& tree, const std::vector<Arc>& words, const TimeMap& times,
                                     const ChartOptions& options)
{
    for (const SyntaxTree* leaf : tree.leaves())
    {
        if (leaf->position >= words.size() || words[leaf->position].label.content() != leaf->label)
        {
            throw Error(ErrorCode::UnknownToken, "leaf '" + leaf->label + "' does not match a word", leaf->label);
        }
    }

    std::vector<Numbered> nodes;
    number_preorder(tree, 0, nodes);

    struct Extent
    {
        std::size_t lo, hi, count;
    };
    std::vector<Extent> extent(nodes.size());
    bool discontinuous = false;
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        if (nodes[i].node->leaf)
        {
            continue;
        }
        std::set<std::size_t> positions;
        for (const SyntaxTree* leaf : nodes[i].node->leaves())
        {
            positions.insert(leaf->position);
        }
        extent[i] = {*positions.begin(), *positions.rbegin(), positions.size()};
        if (extent[i].hi - extent[i].lo + 1 != extent[i].count)
        {
            discontinuous = true;
        }
    }

    ArcSet arcs;
    std::set<std::size_t> labelled_words;
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        const Numbered& n = nodes[i];
        std::string parent = n.parent == 0 ? "" : std::to_string(n.parent);
        if (n.node->leaf)
        {
            const Arc& w = words[n.node->position];
            if (discontinuous)
            {
                arcs.insert(Arc{w.source, Label{w.label.type(), w.label.content(), std::to_string(n.id), parent},
                                w.target});
                labelled_words.insert(n.node->position);
            }
            continue;
        }
        if (n.node->label.empty())
        {
            continue;
        }
        Label label = discontinuous
                          ? Label{options.constituent_type, n.node->label, std::to_string(n.id), parent}
                          : Label{options.constituent_type, n.node->label};
        arcs.insert(Arc{words[extent[i].lo].source, std::move(label), words[extent[i].hi].target});
    }
    for (std::size_t k = 0; k < words.size(); ++k)
    {
        if (!labelled_words.contains(k))
        {
            arcs.insert(words[k]);
        }
    }
    return AnnotationGraph::build(std::move(arcs), times);
}

} // namespace ag
