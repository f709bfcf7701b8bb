#include "ag/validate.hpp"

#include <algorithm>
#include <set>

#include "ag/topology.hpp"

namespace ag
{

namespace
{

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (i > 0)
        {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

std::vector<std::string> node_names(const Topology& topo, const std::vector<std::size_t>& path)
{
    std::vector<std::string> out;
    out.reserve(path.size());
    for (std::size_t n : path)
    {
        out.push_back(topo.node(n).str());
    }
    return out;
}

/// One directed cycle as a closed node path (first == last), or empty.
std::vector<std::size_t> find_cycle(const Topology& topo)
{
    enum class Mark { white, grey, black };
    std::vector<Mark> mark(topo.node_count(), Mark::white);

    for (std::size_t root = 0; root < topo.node_count(); ++root)
    {
        if (mark[root] != Mark::white)
        {
            continue;
        }
        // (node, next out-arc position)
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        mark[root] = Mark::grey;
        while (!stack.empty())
        {
            auto& [node, pos] = stack.back();
            const auto& out = topo.out_arcs(node);
            if (pos == out.size())
            {
                mark[node] = Mark::black;
                stack.pop_back();
                continue;
            }
            std::size_t next = topo.target(out[pos++]);
            if (mark[next] == Mark::grey)
            {
                std::vector<std::size_t> cycle;
                auto it = std::find_if(stack.begin(), stack.end(),
                                       [&](const auto& frame) { return frame.first == next; });
                for (; it != stack.end(); ++it)
                {
                    cycle.push_back(it->first);
                }
                cycle.push_back(next);
                return cycle;
            }
            if (mark[next] == Mark::white)
            {
                mark[next] = Mark::grey;
                stack.emplace_back(next, 0);
            }
        }
    }
    return {};
}

/// Timelines used by each component; a component is mixed when it has more
/// than one.
std::vector<std::set<std::string>> component_timelines(const Topology& topo, const std::vector<std::size_t>& comp,
                                                       std::size_t count)
{
    std::vector<std::set<std::string>> out(count);
    for (std::size_t n = 0; n < topo.node_count(); ++n)
    {
        if (const TimeRef* t = topo.time(n))
        {
            out[comp[n]].insert(t->timeline());
        }
    }
    return out;
}

/// Greatest time among the strict ancestors of each node, with a back-pointer
/// so the ancestor path can be recovered.
struct Ancestry
{
    std::vector<const TimeRef*> best;   // max tau over strict ancestors
    std::vector<std::size_t> from;      // predecessor through which best is reached
    std::vector<bool> direct;           // best is the predecessor's own time
};

Ancestry lower_bounds(const Topology& topo, const std::vector<std::size_t>& order, const std::vector<bool>& skip)
{
    std::size_t n = topo.node_count();
    Ancestry anc{std::vector<const TimeRef*>(n, nullptr), std::vector<std::size_t>(n, 0), std::vector<bool>(n, false)};
    for (std::size_t node : order)
    {
        if (skip[node])
        {
            continue;
        }
        for (std::size_t a : topo.in_arcs(node))
        {
            std::size_t p = topo.source(a);
            if (const TimeRef* t = topo.time(p); t && (!anc.best[node] || anc.best[node]->offset() < t->offset()))
            {
                anc.best[node] = t;
                anc.from[node] = p;
                anc.direct[node] = true;
            }
            if (const TimeRef* t = anc.best[p]; t && (!anc.best[node] || anc.best[node]->offset() < t->offset()))
            {
                anc.best[node] = t;
                anc.from[node] = p;
                anc.direct[node] = false;
            }
        }
    }
    return anc;
}

/// Path from the ancestor realising anc.best[node] down to `node`.
std::vector<std::size_t> ancestor_path(const Ancestry& anc, std::size_t node)
{
    std::vector<std::size_t> rev{node};
    std::size_t cur = node;
    while (true)
    {
        std::size_t p = anc.from[cur];
        rev.push_back(p);
        if (anc.direct[cur])
        {
            break;
        }
        cur = p;
    }
    return {rev.rbegin(), rev.rend()};
}

} // namespace

bool ValidationReport::has(ErrorCode kind) const noexcept
{
    return std::any_of(m_entries.begin(), m_entries.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::str() const
{
    std::string out;
    for (const Violation& v : m_entries)
    {
        if (!out.empty())
        {
            out += '\n';
        }
        out += std::string(to_string(v.kind)) + ": " + v.message;
        if (!v.witness.empty())
        {
            out += " [" + join(v.witness, " -> ") + "]";
        }
    }
    return out;
}

namespace
{

ErrorCode first_kind(const ValidationReport& report)
{
    return report.entries().empty() ? ErrorCode::CycleFound : report.entries().front().kind;
}

std::string first_witness(const ValidationReport& report)
{
    return report.entries().empty() ? std::string() : join(report.entries().front().witness, " -> ");
}

} // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(first_kind(report), report.str(), first_witness(report))
    , m_report(std::move(report))
{
}

ValidationReport validate(const AnnotationGraph& graph)
{
    ValidationReport report;
    Topology topo(graph);

    std::size_t count = 0;
    std::vector<std::size_t> comp = topo.components(&count);
    auto timelines = component_timelines(topo, comp, count);

    std::vector<bool> mixed_component(count, false);
    for (std::size_t c = 0; c < count; ++c)
    {
        if (timelines[c].size() > 1)
        {
            mixed_component[c] = true;
            std::vector<std::string> witness(timelines[c].begin(), timelines[c].end());
            report.add({ErrorCode::MixedTimelines, "one connected component uses several timelines", witness});
        }
    }

    for (std::size_t a = 0; a < topo.arc_count(); ++a)
    {
        const TimeRef* s = topo.time(topo.source(a));
        const TimeRef* t = topo.time(topo.target(a));
        if (s && t && s->timeline() == t->timeline() && t->offset() < s->offset())
        {
            const Arc& arc = topo.arc(a);
            report.add({ErrorCode::ArcTimeReversed,
                        "arc " + arc.str() + " ends at " + t->lexical() + " before it starts at " + s->lexical(),
                        {arc.str()}});
        }
    }

    auto order = topo.topological_order();
    if (!order)
    {
        auto cycle = find_cycle(topo);
        report.add({ErrorCode::CycleFound, "the arcs contain a directed cycle", node_names(topo, cycle)});
        return report;
    }

    std::vector<bool> skip(topo.node_count());
    for (std::size_t n = 0; n < topo.node_count(); ++n)
    {
        skip[n] = mixed_component[comp[n]];
    }
    Ancestry anc = lower_bounds(topo, *order, skip);

    // A violating path of two nodes is a reversed arc and is reported above.
    // Longer ones are detected through the best time two or more steps back.
    for (std::size_t node : *order)
    {
        const TimeRef* own = topo.time(node);
        if (skip[node] || !own)
        {
            continue;
        }
        std::optional<std::size_t> worst;
        for (std::size_t a : topo.in_arcs(node))
        {
            std::size_t p = topo.source(a);
            if (anc.best[p] && own->offset() < anc.best[p]->offset() &&
                (!worst || anc.best[*worst]->offset() < anc.best[p]->offset()))
            {
                worst = p;
            }
        }
        if (worst)
        {
            auto path = ancestor_path(anc, *worst);
            path.push_back(node);
            const TimeRef* start = topo.time(path.front());
            report.add({ErrorCode::PathConditionViolated,
                        "path from " + topo.node(path.front()).str() + " at " + start->lexical() + " reaches " +
                            topo.node(node).str() + " at " + own->lexical(),
                        node_names(topo, path)});
        }
    }
    return report;
}

std::map<NodeId, NodeBounds> propagate_bounds(const AnnotationGraph& graph)
{
    std::map<NodeId, NodeBounds> out;
    Topology topo(graph);
    for (std::size_t n = 0; n < topo.node_count(); ++n)
    {
        out.emplace(topo.node(n), NodeBounds{});
    }
    auto order = topo.topological_order();
    if (!order)
    {
        return out;
    }
    std::size_t count = 0;
    auto comp = topo.components(&count);
    auto timelines = component_timelines(topo, comp, count);
    std::vector<bool> skip(topo.node_count());
    for (std::size_t n = 0; n < topo.node_count(); ++n)
    {
        skip[n] = timelines[comp[n]].size() > 1;
    }

    std::vector<const TimeRef*> lower(topo.node_count(), nullptr);
    std::vector<const TimeRef*> upper(topo.node_count(), nullptr);
    for (std::size_t node : *order)
    {
        if (skip[node])
        {
            continue;
        }
        for (std::size_t a : topo.in_arcs(node))
        {
            std::size_t p = topo.source(a);
            for (const TimeRef* t : {topo.time(p), lower[p]})
            {
                if (t && (!lower[node] || lower[node]->offset() < t->offset()))
                {
                    lower[node] = t;
                }
            }
        }
    }
    for (auto it = order->rbegin(); it != order->rend(); ++it)
    {
        std::size_t node = *it;
        if (skip[node])
        {
            continue;
        }
        for (std::size_t a : topo.out_arcs(node))
        {
            std::size_t s = topo.target(a);
            for (const TimeRef* t : {topo.time(s), upper[s]})
            {
                if (t && (!upper[node] || t->offset() < upper[node]->offset()))
                {
                    upper[node] = t;
                }
            }
        }
    }
    for (std::size_t n = 0; n < topo.node_count(); ++n)
    {
        NodeBounds& b = out.at(topo.node(n));
        if (lower[n])
        {
            b.lower = *lower[n];
        }
        if (upper[n])
        {
            b.upper = *upper[n];
        }
    }
    return out;
}

bool is_anchored(const AnnotationGraph& graph)
{
    Topology topo(graph);
    for (std::size_t n = 0; n < topo.node_count(); ++n)
    {
        bool terminal = topo.in_arcs(n).empty() || topo.out_arcs(n).empty();
        if (terminal && !topo.time(n))
        {
            return false;
        }
    }
    return true;
}

bool is_totally_anchored(const AnnotationGraph& graph)
{
    return graph.times().size() == graph.nodes().size();
}

} // namespace ag
