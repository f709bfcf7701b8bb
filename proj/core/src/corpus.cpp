#include "ag/corpus.hpp"

#include "ag/algebra.hpp"
#include "ag/error.hpp"

namespace ag
{

void TimelineRegistry::add(Timeline timeline)
{
    timeline.check();
    if (m_timelines.contains(timeline.id))
    {
        throw Error(ErrorCode::InvalidTimeline, "timeline '" + timeline.id + "' is already registered", timeline.id);
    }
    std::string id = timeline.id;
    m_timelines.emplace(std::move(id), std::move(timeline));
}

const Timeline* TimelineRegistry::find(const std::string& id) const
{
    auto it = m_timelines.find(id);
    return it == m_timelines.end() ? nullptr : &it->second;
}

void Corpus::add_graph(std::string name, AnnotationGraph graph)
{
    if (m_graphs.contains(name))
    {
        throw Error(ErrorCode::NodeIdCollision, "graph '" + name + "' is already in the corpus", name);
    }
    for (const NodeId& node : graph.nodes())
    {
        if (auto it = m_owner.find(node); it != m_owner.end())
        {
            throw Error(ErrorCode::NodeIdCollision,
                        "node id '" + node.str() + "' is already used by graph '" + it->second + "'", node.str());
        }
    }
    for (const NodeId& node : graph.nodes())
    {
        m_owner.emplace(node, name);
    }
    m_graphs.emplace(std::move(name), std::move(graph));
}

AnnotationGraph Corpus::merged() const
{
    AnnotationGraph out;
    for (const auto& [name, graph] : m_graphs)
    {
        out = disjoint_union(out, graph);
    }
    return out;
}

} // namespace ag
