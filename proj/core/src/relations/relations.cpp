#include "ag/relations.hpp"

#include <mutex>

#include "ag/error.hpp"
#include "ag/validate.hpp"

namespace ag
{

namespace
{

using Bits = boost::dynamic_bitset<>;
using Matrix = std::vector<Bits>;

void close_transitively(Matrix& m)
{
    for (std::size_t k = 0; k < m.size(); ++k)
    {
        for (std::size_t i = 0; i < m.size(); ++i)
        {
            if (m[i][k])
            {
                m[i] |= m[k];
            }
        }
    }
}

bool time_less(const TimeRef* a, const TimeRef* b, bool allow_equal)
{
    if (!a || !b || a->timeline() != b->timeline())
    {
        return false;
    }
    return allow_equal ? a->offset() <= b->offset() : a->offset() < b->offset();
}

} // namespace

struct RelationContext::State
{
    explicit State(AnnotationGraph g) : graph(std::move(g)), topo(graph) {}

    AnnotationGraph graph;
    Topology topo;
    Matrix reach;
    Matrix closure;
    std::vector<std::optional<TimeRef>> glb;
    std::vector<std::optional<TimeRef>> lub;

    mutable std::once_flag inclusion_once[2];
    mutable Matrix inclusion[2];

    bool s_leq(std::size_t a, std::size_t b, Inclusion mode) const
    {
        return reach[a][b] || (mode == Inclusion::non_strict && a == b);
    }

    bool t_leq(std::size_t a, std::size_t b, Inclusion mode) const
    {
        return time_less(topo.time(a), topo.time(b), mode == Inclusion::non_strict);
    }

    bool s_inc(std::size_t p, std::size_t q, Inclusion mode) const
    {
        return s_leq(topo.source(p), topo.source(q), mode) && s_leq(topo.target(q), topo.target(p), mode);
    }

    bool t_inc(std::size_t p, std::size_t q, Inclusion mode) const
    {
        return t_leq(topo.source(p), topo.source(q), mode) && t_leq(topo.target(q), topo.target(p), mode);
    }

    const Matrix& inclusion_closure(Inclusion mode) const
    {
        std::size_t slot = mode == Inclusion::strict ? 0 : 1;
        std::call_once(inclusion_once[slot], [&] {
            std::size_t m = topo.arc_count();
            Matrix out(m, Bits(m));
            for (std::size_t p = 0; p < m; ++p)
            {
                for (std::size_t q = 0; q < m; ++q)
                {
                    if (s_inc(p, q, mode) || t_inc(p, q, mode))
                    {
                        out[p].set(q);
                    }
                }
            }
            close_transitively(out);
            inclusion[slot] = std::move(out);
        });
        return inclusion[slot];
    }
};

RelationContext::RelationContext(AnnotationGraph graph)
{
    auto state = std::make_shared<State>(std::move(graph));
    const Topology& topo = state->topo;
    std::size_t n = topo.node_count();

    state->reach.assign(n, Bits(n));
    if (auto order = topo.topological_order())
    {
        for (auto it = order->rbegin(); it != order->rend(); ++it)
        {
            Bits& row = state->reach[*it];
            for (std::size_t a : topo.out_arcs(*it))
            {
                row.set(topo.target(a));
                row |= state->reach[topo.target(a)];
            }
        }
    }
    else
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t a : topo.out_arcs(i))
            {
                state->reach[i].set(topo.target(a));
            }
        }
        close_transitively(state->reach);
    }

    state->closure = state->reach;
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            if (time_less(topo.time(i), topo.time(j), false))
            {
                state->closure[i].set(j);
            }
        }
    }
    close_transitively(state->closure);

    auto bounds = propagate_bounds(state->graph);
    state->glb.resize(n);
    state->lub.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const NodeBounds& b = bounds.at(topo.node(i));
        state->glb[i] = b.lower;
        state->lub[i] = b.upper;
    }
    m_state = std::move(state);
}

const AnnotationGraph& RelationContext::graph() const noexcept
{
    return m_state->graph;
}

const Topology& RelationContext::topology() const noexcept
{
    return m_state->topo;
}

std::size_t RelationContext::node_index(const NodeId& node) const
{
    auto index = m_state->topo.index_of(node);
    if (!index)
    {
        throw Error(ErrorCode::UnknownNode, "node '" + node.str() + "' is not in the graph", node.str());
    }
    return *index;
}

std::size_t RelationContext::arc_index(const Arc& arc) const
{
    auto index = m_state->topo.index_of(arc);
    if (!index)
    {
        throw Error(ErrorCode::ArcNotInGraph, "arc " + arc.str() + " is not in the graph", arc.str());
    }
    return *index;
}

bool RelationContext::s_precedes(const NodeId& n1, const NodeId& n2) const
{
    return s_precedes(node_index(n1), node_index(n2));
}

bool RelationContext::t_precedes(const NodeId& n1, const NodeId& n2) const
{
    return t_precedes(node_index(n1), node_index(n2));
}

bool RelationContext::precedes(const NodeId& n1, const NodeId& n2) const
{
    return precedes(node_index(n1), node_index(n2));
}

bool RelationContext::s_includes(const Arc& p, const Arc& q, Inclusion mode) const
{
    return m_state->s_inc(arc_index(p), arc_index(q), mode);
}

bool RelationContext::t_includes(const Arc& p, const Arc& q, Inclusion mode) const
{
    return m_state->t_inc(arc_index(p), arc_index(q), mode);
}

bool RelationContext::includes(const Arc& p, const Arc& q, Inclusion mode) const
{
    return includes(arc_index(p), arc_index(q), mode);
}

std::optional<TimeRef> RelationContext::glb(const Arc& arc) const
{
    return m_state->glb[m_state->topo.source(arc_index(arc))];
}

std::optional<TimeRef> RelationContext::lub(const Arc& arc) const
{
    return m_state->lub[m_state->topo.target(arc_index(arc))];
}

bool RelationContext::s_precedes(std::size_t n1, std::size_t n2) const
{
    return m_state->reach[n1][n2];
}

bool RelationContext::t_precedes(std::size_t n1, std::size_t n2) const
{
    return time_less(m_state->topo.time(n1), m_state->topo.time(n2), false);
}

bool RelationContext::precedes(std::size_t n1, std::size_t n2) const
{
    return m_state->closure[n1][n2];
}

bool RelationContext::includes(std::size_t p, std::size_t q, Inclusion mode) const
{
    return m_state->inclusion_closure(mode)[p][q];
}

const std::optional<TimeRef>& RelationContext::glb_of_node(std::size_t node) const
{
    return m_state->glb[node];
}

const std::optional<TimeRef>& RelationContext::lub_of_node(std::size_t node) const
{
    return m_state->lub[node];
}

const boost::dynamic_bitset<>& RelationContext::s_successors(std::size_t node) const
{
    return m_state->reach[node];
}

EquivalenceClasses equivalence_classes(const AnnotationGraph& graph, std::size_t field_index)
{
    EquivalenceClasses out;
    out.field_index = field_index;
    for (const Arc& arc : graph.arcs())
    {
        if (auto value = arc.label.field(field_index))
        {
            out.classes[std::string(*value)].insert(arc);
        }
    }
    return out;
}

ArcSet linked(const EquivalenceClasses& classes, const Arc& arc)
{
    auto value = arc.label.field(classes.field_index);
    if (!value)
    {
        return {};
    }
    auto it = classes.classes.find(std::string(*value));
    if (it == classes.classes.end() || !it->second.contains(arc))
    {
        return {};
    }
    ArcSet out = it->second;
    out.erase(arc);
    return out;
}

} // namespace ag
