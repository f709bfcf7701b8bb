#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ag/graph.hpp"

namespace ag
{

/**
 * @brief Incremental construction with canonical node ids.
 *
 * @details
 * Nodes are handles until build(). Used nodes are then numbered in
 * allocation order and named "<ns>#<k>" (or "<k>" with an empty namespace),
 * so identical input always yields byte-identical ids.
 */
class GraphBuilder
{
public:
    using Node = std::size_t;

    explicit GraphBuilder(std::string ns = {});

    Node add_node();
    Node add_node(TimeRef time);

    /// Overwrites any previous time.
    void set_time(Node node, TimeRef time);
    const std::optional<TimeRef>& time(Node node) const { return m_times.at(node); }

    void add_arc(Node source, Label label, Node target);

    std::size_t arc_count() const noexcept { return m_arcs.size(); }

    /// Numbers a node as if used even when no arc touches it, so arcs added
    /// outside the builder can refer to it through id_of().
    void retain(Node node);

    /// Validated graph (throws ValidationError).
    AnnotationGraph build() const;
    /// Final id a node will receive; only meaningful for used nodes.
    NodeId id_of(Node node) const;
    /// id_of() for every handle, indexed by handle.
    std::vector<NodeId> ids() const;

private:
    struct PendingArc
    {
        Node source;
        Label label;
        Node target;
    };

    std::string m_ns;
    std::vector<std::optional<TimeRef>> m_times;
    std::vector<PendingArc> m_arcs;
    std::vector<Node> m_retained;
};

/// Canonical id for local number `k` in namespace `ns`.
std::string canonical_node_id(const std::string& ns, std::size_t k);

} // namespace ag
