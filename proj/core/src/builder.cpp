#include "ag/builder.hpp"

namespace ag
{

std::string canonical_node_id(const std::string& ns, std::size_t k)
{
    return ns.empty() ? std::to_string(k) : ns + "#" + std::to_string(k);
}

GraphBuilder::GraphBuilder(std::string ns) : m_ns(std::move(ns))
{
}

GraphBuilder::Node GraphBuilder::add_node()
{
    m_times.emplace_back();
    return m_times.size() - 1;
}

GraphBuilder::Node GraphBuilder::add_node(TimeRef time)
{
    m_times.emplace_back(std::move(time));
    return m_times.size() - 1;
}

void GraphBuilder::set_time(Node node, TimeRef time)
{
    m_times.at(node) = std::move(time);
}

void GraphBuilder::add_arc(Node source, Label label, Node target)
{
    m_times.at(source);
    m_times.at(target);
    m_arcs.push_back({source, std::move(label), target});
}

void GraphBuilder::retain(Node node)
{
    m_times.at(node);
    m_retained.push_back(node);
}

std::vector<NodeId> GraphBuilder::ids() const
{
    std::vector<bool> used(m_times.size(), false);
    for (Node n : m_retained)
    {
        used[n] = true;
    }
    for (const PendingArc& arc : m_arcs)
    {
        used[arc.source] = true;
        used[arc.target] = true;
    }
    std::vector<NodeId> ids;
    ids.reserve(m_times.size());
    std::size_t k = 0;
    std::size_t spare = 0;
    for (std::size_t n = 0; n < m_times.size(); ++n)
    {
        if (used[n])
        {
            ids.emplace_back(canonical_node_id(m_ns, k++));
        }
        else
        {
            // Unused handles never reach the graph; give them a distinct
            // placeholder so id_of stays total.
            ids.emplace_back(canonical_node_id(m_ns, m_times.size() + spare++) + "?");
        }
    }
    return ids;
}

NodeId GraphBuilder::id_of(Node node) const
{
    return ids().at(node);
}

AnnotationGraph GraphBuilder::build() const
{
    auto node_ids = ids();
    ArcSet arcs;
    for (const PendingArc& arc : m_arcs)
    {
        arcs.insert(Arc{node_ids[arc.source], arc.label, node_ids[arc.target]});
    }
    TimeMap times;
    for (std::size_t n = 0; n < m_times.size(); ++n)
    {
        if (m_times[n])
        {
            times.emplace(node_ids[n], *m_times[n]);
        }
    }
    return AnnotationGraph::build(std::move(arcs), std::move(times));
}

} // namespace ag
