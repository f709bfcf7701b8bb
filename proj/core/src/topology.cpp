#include "ag/topology.hpp"

#include <algorithm>
#include <numeric>

namespace ag
{

Topology::Topology(const AnnotationGraph& graph)
{
    m_nodes.reserve(graph.nodes().size());
    for (const NodeId& node : graph.nodes())
    {
        m_node_index.emplace(node.str(), m_nodes.size());
        m_nodes.push_back(&node);
        m_time.push_back(graph.time(node));
    }
    m_out.resize(m_nodes.size());
    m_in.resize(m_nodes.size());
    m_arcs.reserve(graph.arcs().size());
    for (const Arc& arc : graph.arcs())
    {
        std::size_t index = m_arcs.size();
        std::size_t s = m_node_index.at(arc.source.str());
        std::size_t t = m_node_index.at(arc.target.str());
        m_arcs.push_back(&arc);
        m_source.push_back(s);
        m_target.push_back(t);
        m_out[s].push_back(index);
        m_in[t].push_back(index);
    }
}

std::optional<std::size_t> Topology::index_of(const NodeId& node) const
{
    auto it = m_node_index.find(node.str());
    if (it == m_node_index.end())
    {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::size_t> Topology::index_of(const Arc& arc) const
{
    auto s = index_of(arc.source);
    if (!s)
    {
        return std::nullopt;
    }
    for (std::size_t a : m_out[*s])
    {
        if (*m_arcs[a] == arc)
        {
            return a;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> Topology::topological_order() const
{
    std::vector<std::size_t> indegree(m_nodes.size(), 0);
    for (std::size_t t : m_target)
    {
        ++indegree[t];
    }
    std::vector<std::size_t> order;
    order.reserve(m_nodes.size());
    for (std::size_t n = 0; n < m_nodes.size(); ++n)
    {
        if (indegree[n] == 0)
        {
            order.push_back(n);
        }
    }
    for (std::size_t head = 0; head < order.size(); ++head)
    {
        for (std::size_t a : m_out[order[head]])
        {
            if (--indegree[m_target[a]] == 0)
            {
                order.push_back(m_target[a]);
            }
        }
    }
    if (order.size() != m_nodes.size())
    {
        return std::nullopt;
    }
    return order;
}

std::vector<std::size_t> Topology::components(std::size_t* count) const
{
    // Union-find with the smaller index as representative, so that a single
    // ascending pass yields ids ordered by smallest member.
    std::vector<std::size_t> parent(m_nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
        {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t a = 0; a < m_arcs.size(); ++a)
    {
        std::size_t x = find(m_source[a]);
        std::size_t y = find(m_target[a]);
        if (x != y)
        {
            parent[std::max(x, y)] = std::min(x, y);
        }
    }
    std::vector<std::size_t> id(m_nodes.size());
    std::vector<std::size_t> dense(m_nodes.size(), m_nodes.size());
    std::size_t next = 0;
    for (std::size_t n = 0; n < m_nodes.size(); ++n)
    {
        std::size_t root = find(n);
        if (dense[root] == m_nodes.size())
        {
            dense[root] = next++;
        }
        id[n] = dense[root];
    }
    if (count)
    {
        *count = next;
    }
    return id;
}

} // namespace ag
