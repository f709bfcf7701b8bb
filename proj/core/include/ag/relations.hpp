#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "ag/graph.hpp"
#include "ag/topology.hpp"

namespace ag
{

/// Strict inclusion uses the literal (irreflexive) precedence on both ends;
/// non-strict also admits shared boundary nodes.
enum class Inclusion
{
    strict,
    non_strict,
};

/**
 * @brief Cached structural and temporal relations over one graph.
 *
 * @details
 * Reachability and the precedence closure are computed on construction by
 * plain transitive closure over bitsets. Arc inclusion closures are built on
 * first use. The context owns a copy of the graph, so it stays valid
 * independently of the caller's graph value. Copies share state.
 *
 * @par Thread Safety
 * All member functions are const and safe for concurrent use.
 */
class RelationContext
{
public:
    explicit RelationContext(AnnotationGraph graph);

    const AnnotationGraph& graph() const noexcept;
    const Topology& topology() const noexcept;

    /// A directed path of at least one arc leads from n1 to n2.
    bool s_precedes(const NodeId& n1, const NodeId& n2) const;
    /// Both timed on the same timeline and tau(n1) < tau(n2).
    bool t_precedes(const NodeId& n1, const NodeId& n2) const;
    /// Transitive closure of s_precedes and t_precedes.
    bool precedes(const NodeId& n1, const NodeId& n2) const;

    bool s_includes(const Arc& p, const Arc& q, Inclusion mode = Inclusion::non_strict) const;
    bool t_includes(const Arc& p, const Arc& q, Inclusion mode = Inclusion::non_strict) const;
    /// Transitive closure of s_includes and t_includes.
    bool includes(const Arc& p, const Arc& q, Inclusion mode = Inclusion::non_strict) const;

    /// Greatest time among timed strict s-predecessors of the source.
    std::optional<TimeRef> glb(const Arc& arc) const;
    /// Least time among timed strict s-successors of the target.
    std::optional<TimeRef> lub(const Arc& arc) const;

    // Index-based access (indices as in topology()).
    bool s_precedes(std::size_t n1, std::size_t n2) const;
    bool t_precedes(std::size_t n1, std::size_t n2) const;
    bool precedes(std::size_t n1, std::size_t n2) const;
    bool includes(std::size_t p, std::size_t q, Inclusion mode = Inclusion::non_strict) const;
    const std::optional<TimeRef>& glb_of_node(std::size_t node) const;
    const std::optional<TimeRef>& lub_of_node(std::size_t node) const;

    /// Row of the reachability matrix: bit j set iff node j is a strict
    /// s-successor of `node`.
    const boost::dynamic_bitset<>& s_successors(std::size_t node) const;

private:
    struct State;

    std::size_t node_index(const NodeId& node) const;
    std::size_t arc_index(const Arc& arc) const;

    std::shared_ptr<const State> m_state;
};

/// Arcs grouped by the value of one label field.
struct EquivalenceClasses
{
    std::size_t field_index = 0; ///< 1-based
    std::map<std::string, ArcSet> classes;
};

/// Partition of the arcs carrying field `field_index` (1-based) by exact
/// string equality of that field. Arcs lacking the field are skipped.
EquivalenceClasses equivalence_classes(const AnnotationGraph& graph, std::size_t field_index);

/// The other members of `arc`'s class; empty when the arc is unclassified.
ArcSet linked(const EquivalenceClasses& classes, const Arc& arc);

} // namespace ag
