#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ag/graph.hpp"

namespace ag
{

/// Index-based adjacency view over a graph. Node indices follow the sorted
/// node set; arc indices follow the sorted arc set. The graph must outlive
/// the view.
class Topology
{
public:
    explicit Topology(const AnnotationGraph& graph);

    std::size_t node_count() const noexcept { return m_nodes.size(); }
    std::size_t arc_count() const noexcept { return m_arcs.size(); }

    const NodeId& node(std::size_t index) const { return *m_nodes[index]; }
    const Arc& arc(std::size_t index) const { return *m_arcs[index]; }
    std::optional<std::size_t> index_of(const NodeId& node) const;
    std::optional<std::size_t> index_of(const Arc& arc) const;

    std::size_t source(std::size_t arc) const { return m_source[arc]; }
    std::size_t target(std::size_t arc) const { return m_target[arc]; }

    /// Outgoing / incoming arc indices per node.
    const std::vector<std::size_t>& out_arcs(std::size_t node) const { return m_out[node]; }
    const std::vector<std::size_t>& in_arcs(std::size_t node) const { return m_in[node]; }

    /// Time of node `index`, or nullptr.
    const TimeRef* time(std::size_t index) const { return m_time[index]; }

    /// Kahn order; nullopt when the graph has a cycle.
    std::optional<std::vector<std::size_t>> topological_order() const;

    /// Component id per node on the undirected view; ids are dense and
    /// numbered by smallest member node.
    std::vector<std::size_t> components(std::size_t* count = nullptr) const;

private:
    std::vector<const NodeId*> m_nodes;
    std::vector<const Arc*> m_arcs;
    std::vector<std::size_t> m_source;
    std::vector<std::size_t> m_target;
    std::vector<std::vector<std::size_t>> m_out;
    std::vector<std::vector<std::size_t>> m_in;
    std::vector<const TimeRef*> m_time;
    std::unordered_map<std::string, std::size_t> m_node_index;
};

} // namespace ag
