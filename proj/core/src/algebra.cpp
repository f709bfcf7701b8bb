#include "ag/algebra.hpp"

#include <algorithm>
#include <iterator>

#include "ag/error.hpp"
#include "ag/topology.hpp"

namespace ag
{

namespace
{

void require_subgraph(const AnnotationGraph& part, const AnnotationGraph& whole)
{
    if (!is_subgraph(part, whole))
    {
        throw Error(ErrorCode::NotASubgraph, "operand is not a subgraph of the enclosing graph");
    }
}

} // namespace

AnnotationGraph subgraph(const AnnotationGraph& graph, const ArcPredicate& keep)
{
    ArcSet arcs;
    for (const Arc& arc : graph.arcs())
    {
        if (keep(arc))
        {
            arcs.insert(arc);
        }
    }
    // Removing arcs cannot break any invariant, so no revalidation is needed.
    return AnnotationGraph::assemble(std::move(arcs), graph.times());
}

AnnotationGraph subgraph(const AnnotationGraph& graph, const ArcSet& keep)
{
    for (const Arc& arc : keep)
    {
        if (!graph.contains(arc))
        {
            throw Error(ErrorCode::ArcNotInGraph, "arc " + arc.str() + " is not in the graph", arc.str());
        }
    }
    return AnnotationGraph::assemble(keep, graph.times());
}

AnnotationGraph disjoint_union(const AnnotationGraph& a, const AnnotationGraph& b)
{
    for (const NodeId& node : b.nodes())
    {
        if (a.contains(node))
        {
            throw Error(ErrorCode::NodeIdCollision, "node id '" + node.str() + "' occurs in both graphs", node.str());
        }
    }
    ArcSet arcs = a.arcs();
    arcs.insert(b.arcs().begin(), b.arcs().end());
    TimeMap times = a.times();
    times.insert(b.times().begin(), b.times().end());
    return AnnotationGraph::assemble(std::move(arcs), std::move(times));
}

AnnotationGraph unite(const AnnotationGraph& a, const AnnotationGraph& b, const AnnotationGraph& whole)
{
    require_subgraph(a, whole);
    require_subgraph(b, whole);
    ArcSet arcs = a.arcs();
    arcs.insert(b.arcs().begin(), b.arcs().end());
    return AnnotationGraph::assemble(std::move(arcs), whole.times());
}

AnnotationGraph intersect(const AnnotationGraph& a, const AnnotationGraph& b, const AnnotationGraph& whole)
{
    require_subgraph(a, whole);
    require_subgraph(b, whole);
    ArcSet arcs;
    std::set_intersection(a.arcs().begin(), a.arcs().end(), b.arcs().begin(), b.arcs().end(),
                          std::inserter(arcs, arcs.end()));
    return AnnotationGraph::assemble(std::move(arcs), whole.times());
}

AnnotationGraph complement(const AnnotationGraph& a, const AnnotationGraph& whole)
{
    require_subgraph(a, whole);
    ArcSet arcs;
    std::set_difference(whole.arcs().begin(), whole.arcs().end(), a.arcs().begin(), a.arcs().end(),
                        std::inserter(arcs, arcs.end()));
    return AnnotationGraph::assemble(std::move(arcs), whole.times());
}

bool is_subgraph(const AnnotationGraph& part, const AnnotationGraph& whole)
{
    if (!std::includes(whole.arcs().begin(), whole.arcs().end(), part.arcs().begin(), part.arcs().end()))
    {
        return false;
    }
    for (const NodeId& node : part.nodes())
    {
        const TimeRef* p = part.time(node);
        const TimeRef* w = whole.time(node);
        if ((p == nullptr) != (w == nullptr) || (p && !(*p == *w)))
        {
            return false;
        }
    }
    return true;
}

std::vector<ArcSet> connected_components(const AnnotationGraph& graph)
{
    Topology topo(graph);
    std::size_t count = 0;
    auto comp = topo.components(&count);
    std::vector<ArcSet> out(count);
    for (std::size_t a = 0; a < topo.arc_count(); ++a)
    {
        out[comp[topo.source(a)]].insert(topo.arc(a));
    }
    return out;
}

ArcSet instants(const AnnotationGraph& graph)
{
    ArcSet out;
    for (const Arc& arc : graph.arcs())
    {
        const TimeRef* s = graph.time(arc.source);
        const TimeRef* t = graph.time(arc.target);
        if (s && t && s->same_point(*t))
        {
            out.insert(arc);
        }
    }
    return out;
}

} // namespace ag
