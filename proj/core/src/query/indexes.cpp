#include <algorithm>

#include "ag/error.hpp"
#include "ag/query.hpp"
#include "extent.hpp"

namespace ag
{

namespace detail
{

std::optional<IndexSet::Extent> arc_extent(const RelationContext& relations, std::size_t arc)
{
    const Topology& topo = relations.topology();
    std::size_t s = topo.source(arc);
    std::size_t t = topo.target(arc);
    const TimeRef* start = topo.time(s);
    const TimeRef* end = topo.time(t);
    if (!start && relations.glb_of_node(s))
    {
        start = &*relations.glb_of_node(s);
    }
    if (!end && relations.lub_of_node(t))
    {
        end = &*relations.lub_of_node(t);
    }
    if (!start || !end || start->timeline() != end->timeline())
    {
        return std::nullopt;
    }
    return IndexSet::Extent{start->timeline(), start->offset(), end->offset(), arc};
}

bool overlaps(const Rational& a, const Rational& b, const Rational& start, const Rational& end)
{
    const Rational& lo = std::max(a, start);
    const Rational& hi = std::min(b, end);
    return lo < hi || ((a == b || start == end) && lo <= hi);
}

bool within(const Rational& a, const Rational& b, const Rational& start, const Rational& end)
{
    return start <= a && b <= end;
}

} // namespace detail

IndexSet::IndexSet(const AnnotationGraph& graph, const RelationContext& relations)
{
    const Topology& topo = relations.topology();
    std::size_t n = topo.arc_count();
    m_extent.resize(n);
    for (const Arc& arc : graph.arcs())
    {
        m_arcs.push_back(&arc);
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        const Arc& arc = *m_arcs[i];
        for (std::size_t k = 1; k <= arc.label.size(); ++k)
        {
            ArcBits& bits = m_fields[{k, arc.label.fields()[k - 1]}];
            if (bits.empty())
            {
                bits.resize(n);
            }
            bits.set(i);
        }
        m_extent[i] = detail::arc_extent(relations, i);
        if (m_extent[i])
        {
            m_by_start[m_extent[i]->timeline].push_back(*m_extent[i]);
        }
    }
    for (auto& [timeline, entries] : m_by_start)
    {
        std::sort(entries.begin(), entries.end(), [](const Extent& a, const Extent& b) {
            return a.start != b.start ? a.start < b.start : a.arc < b.arc;
        });
    }

    std::size_t count = 0;
    std::vector<std::size_t> node_component = topo.components(&count);
    m_components.assign(count, ArcBits(n));
    m_component.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        m_component[i] = node_component[topo.source(i)];
        m_components[m_component[i]].set(i);
    }
}

std::size_t IndexSet::index_of(const Arc& arc) const
{
    auto it = std::lower_bound(m_arcs.begin(), m_arcs.end(), &arc,
                               [](const Arc* a, const Arc* b) { return *a < *b; });
    if (it == m_arcs.end() || !(**it == arc))
    {
        throw Error(ErrorCode::ArcNotInGraph, "arc " + arc.str() + " is not indexed", arc.str());
    }
    return static_cast<std::size_t>(it - m_arcs.begin());
}

ArcBits IndexSet::with_field(std::size_t field, const std::string& value) const
{
    auto it = m_fields.find({field, value});
    return it == m_fields.end() ? ArcBits(m_arcs.size()) : it->second;
}

ArcBits IndexSet::overlapping(const std::string& timeline, const Rational& start, const Rational& end) const
{
    ArcBits out(m_arcs.size());
    auto it = m_by_start.find(timeline);
    if (it == m_by_start.end())
    {
        return out;
    }
    // Only extents starting at or before `end` can overlap.
    auto last = std::upper_bound(it->second.begin(), it->second.end(), end,
                                 [](const Rational& v, const Extent& e) { return v < e.start; });
    for (auto e = it->second.begin(); e != last; ++e)
    {
        if (detail::overlaps(e->start, e->end, start, end))
        {
            out.set(e->arc);
        }
    }
    return out;
}

ArcBits IndexSet::within(const std::string& timeline, const Rational& start, const Rational& end) const
{
    ArcBits out(m_arcs.size());
    auto it = m_by_start.find(timeline);
    if (it == m_by_start.end())
    {
        return out;
    }
    auto first = std::lower_bound(it->second.begin(), it->second.end(), start,
                                  [](const Extent& e, const Rational& v) { return e.start < v; });
    for (auto e = first; e != it->second.end() && e->start <= end; ++e)
    {
        if (e->end <= end)
        {
            out.set(e->arc);
        }
    }
    return out;
}

std::size_t IndexSet::interval_entries() const noexcept
{
    std::size_t n = 0;
    for (const auto& [timeline, entries] : m_by_start)
    {
        n += entries.size();
    }
    return n;
}

std::vector<std::string> IndexSet::timelines() const
{
    std::vector<std::string> out;
    for (const auto& [timeline, entries] : m_by_start)
    {
        out.push_back(timeline);
    }
    return out;
}

IndexSet build_indexes(const AnnotationGraph& graph)
{
    RelationContext relations(graph);
    return IndexSet(graph, relations);
}

} // namespace ag
