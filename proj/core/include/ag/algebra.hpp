#pragma once

#include <functional>
#include <vector>

#include "ag/graph.hpp"

namespace ag
{

using ArcPredicate = std::function<bool(const Arc&)>;

/// Restriction of `graph` to the arcs selected by `keep`; nodes and times
/// follow the arcs.
AnnotationGraph subgraph(const AnnotationGraph& graph, const ArcPredicate& keep);
/// Throws Error(ArcNotInGraph) when `keep` names an arc outside the graph.
AnnotationGraph subgraph(const AnnotationGraph& graph, const ArcSet& keep);

/// Componentwise union. Throws Error(NodeIdCollision) when node sets overlap.
AnnotationGraph disjoint_union(const AnnotationGraph& a, const AnnotationGraph& b);

/// Boolean algebra over the subgraphs of `whole`. Each operand must be a
/// subgraph of `whole` (Error(NotASubgraph) otherwise).
AnnotationGraph unite(const AnnotationGraph& a, const AnnotationGraph& b, const AnnotationGraph& whole);
AnnotationGraph intersect(const AnnotationGraph& a, const AnnotationGraph& b, const AnnotationGraph& whole);
AnnotationGraph complement(const AnnotationGraph& a, const AnnotationGraph& whole);

/// Arc-set inclusion with agreeing times.
bool is_subgraph(const AnnotationGraph& part, const AnnotationGraph& whole);

/// Arcs partitioned by connected component of the undirected view, ordered by
/// smallest member node.
std::vector<ArcSet> connected_components(const AnnotationGraph& graph);

/// Arcs whose endpoints carry the same time on the same timeline.
ArcSet instants(const AnnotationGraph& graph);

} // namespace ag
