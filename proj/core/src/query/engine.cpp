#include <regex>
#include <set>

#include "ag/algebra.hpp"
#include "ag/error.hpp"
#include "ag/query.hpp"
#include "extent.hpp"

namespace ag
{

QueryEngine::QueryEngine(AnnotationGraph corpus, bool use_indexes)
    : m_relations(std::move(corpus))
    , m_indexes(m_relations.graph(), m_relations)
    , m_use_indexes(use_indexes)
{
}

AnnotationGraph QueryEngine::eval(const Query& query) const
{
    ArcBits bits = select(query);
    ArcSet arcs;
    for (std::size_t i = bits.find_first(); i != ArcBits::npos; i = bits.find_next(i))
    {
        arcs.insert(*m_indexes.arcs()[i]);
    }
    return subgraph(corpus(), arcs);
}

AnnotationGraph QueryEngine::eval(std::string_view text) const
{
    return eval(*parse_query(text));
}

ArcBits QueryEngine::select(const Query& query) const
{
    struct Visitor
    {
        const QueryEngine& self;
        ArcBits operator()(const FieldMatch& m) const { return self.field(m); }
        ArcBits operator()(const IntervalMatch& m) const { return self.interval(m); }
        ArcBits operator()(const InstantMatch&) const { return self.instant(); }
        ArcBits operator()(const RelationMatch& m) const { return self.relation(m); }
        ArcBits operator()(const NotQuery& m) const { return ~self.select(*m.operand); }
        ArcBits operator()(const BinaryQuery& m) const
        {
            ArcBits lhs = self.select(*m.lhs);
            ArcBits rhs = self.select(*m.rhs);
            return m.op == BinaryQuery::Op::conjunction ? lhs & rhs : lhs | rhs;
        }
    };
    return std::visit(Visitor{*this}, query.node);
}

ArcBits QueryEngine::field(const FieldMatch& m) const
{
    const auto& arcs = m_indexes.arcs();
    ArcBits out(arcs.size());
    std::optional<std::regex> pattern;
    if (m.regex)
    {
        try
        {
            pattern.emplace(m.value, std::regex::ECMAScript);
        }
        catch (const std::regex_error& e)
        {
            throw Error(ErrorCode::QuerySyntax, "bad regular expression '" + m.value + "': " + e.what(), m.value);
        }
    }
    if (m_use_indexes && !m.regex)
    {
        return m_indexes.with_field(m.field, m.value);
    }
    for (std::size_t i = 0; i < arcs.size(); ++i)
    {
        auto value = arcs[i]->label.field(m.field);
        if (!value)
        {
            continue;
        }
        bool hit = pattern ? std::regex_match(value->begin(), value->end(), *pattern) : *value == m.value;
        if (hit)
        {
            out.set(i);
        }
    }
    return out;
}

std::string QueryEngine::default_timeline() const
{
    std::set<std::string> seen;
    for (const auto& [node, time] : corpus().times())
    {
        seen.insert(time.timeline());
    }
    if (seen.size() > 1)
    {
        throw Error(ErrorCode::CrossTimelineComparison,
                    "the corpus spans " + std::to_string(seen.size()) +
                        " timelines; name one with 'on <timeline>'",
                    *seen.begin() + " vs " + *std::next(seen.begin()));
    }
    return seen.empty() ? std::string() : *seen.begin();
}

ArcBits QueryEngine::interval(const IntervalMatch& m) const
{
    std::string timeline = m.timeline ? *m.timeline : default_timeline();
    Rational start = parse_decimal(m.start);
    Rational end = parse_decimal(m.end);
    bool within = m.mode == IntervalMatch::Mode::within;
    if (m_use_indexes)
    {
        return within ? m_indexes.within(timeline, start, end) : m_indexes.overlapping(timeline, start, end);
    }
    ArcBits out(m_indexes.arcs().size());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        auto e = detail::arc_extent(m_relations, i);
        if (e && e->timeline == timeline &&
            (within ? detail::within(e->start, e->end, start, end) : detail::overlaps(e->start, e->end, start, end)))
        {
            out.set(i);
        }
    }
    return out;
}

ArcBits QueryEngine::instant() const
{
    const Topology& topo = m_relations.topology();
    ArcBits out(topo.arc_count());
    for (std::size_t i = 0; i < topo.arc_count(); ++i)
    {
        const TimeRef* a = topo.time(topo.source(i));
        const TimeRef* b = topo.time(topo.target(i));
        if (a && b && a->same_point(*b))
        {
            out.set(i);
        }
    }
    return out;
}

ArcBits QueryEngine::relation(const RelationMatch& m) const
{
    ArcBits reference = select(*m.reference);
    const Topology& topo = m_relations.topology();
    std::size_t n = topo.arc_count();
    ArcBits out(n);
    std::vector<std::size_t> refs;
    for (std::size_t r = reference.find_first(); r != ArcBits::npos; r = reference.find_next(r))
    {
        refs.push_back(r);
    }
    if (refs.empty())
    {
        return out;
    }

    using Kind = RelationMatch::Kind;
    switch (m.kind)
    {
    case Kind::component:
        if (m_use_indexes)
        {
            for (std::size_t r : refs)
            {
                out |= m_indexes.component(m_indexes.component_of(r));
            }
            return out;
        }
        break;
    case Kind::same_class:
    {
        std::set<std::string> values;
        for (std::size_t r : refs)
        {
            if (auto v = topo.arc(r).label.field(m.field))
            {
                values.emplace(*v);
            }
        }
        if (m_use_indexes)
        {
            for (const std::string& v : values)
            {
                out |= m_indexes.with_field(m.field, v);
            }
            return out;
        }
        for (std::size_t q = 0; q < n; ++q)
        {
            if (auto v = topo.arc(q).label.field(m.field); v && values.contains(std::string(*v)))
            {
                out.set(q);
            }
        }
        return out;
    }
    case Kind::within_span:
    case Kind::overlaps_span:
        if (m_use_indexes)
        {
            for (std::size_t r : refs)
            {
                const auto& e = m_indexes.extent(r);
                if (!e)
                {
                    continue;
                }
                out |= m.kind == Kind::within_span ? m_indexes.within(e->timeline, e->start, e->end)
                                                   : m_indexes.overlapping(e->timeline, e->start, e->end);
            }
            return out;
        }
        break;
    default:
        break;
    }

    std::vector<std::size_t> component;
    if (m.kind == Kind::component)
    {
        component = topo.components();
    }
    std::vector<std::optional<IndexSet::Extent>> extents;
    if (m.kind == Kind::within_span || m.kind == Kind::overlaps_span)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            extents.push_back(detail::arc_extent(m_relations, i));
        }
    }

    for (std::size_t q = 0; q < n; ++q)
    {
        for (std::size_t r : refs)
        {
            bool hit = false;
            switch (m.kind)
            {
            case Kind::precedes:
                hit = topo.target(q) == topo.source(r) || m_relations.s_precedes(topo.target(q), topo.source(r));
                break;
            case Kind::follows:
                hit = topo.target(r) == topo.source(q) || m_relations.s_precedes(topo.target(r), topo.source(q));
                break;
            case Kind::includes: hit = m_relations.includes(q, r); break;
            case Kind::inside: hit = m_relations.includes(r, q); break;
            case Kind::component: hit = component[topo.source(q)] == component[topo.source(r)]; break;
            case Kind::within_span:
            case Kind::overlaps_span:
            {
                const auto& eq = extents[q];
                const auto& er = extents[r];
                if (eq && er && eq->timeline == er->timeline)
                {
                    hit = m.kind == Kind::within_span ? detail::within(eq->start, eq->end, er->start, er->end)
                                                      : detail::overlaps(eq->start, eq->end, er->start, er->end);
                }
                break;
            }
            case Kind::same_class: break;
            }
            if (hit)
            {
                out.set(q);
                break;
            }
        }
    }
    return out;
}

AnnotationGraph eval(const AnnotationGraph& corpus, std::string_view text)
{
    return QueryEngine(corpus).eval(text);
}

} // namespace ag
