#include <algorithm>
#include <iterator>

#include "ag/interchange.hpp"
#include "ag/query.hpp"

namespace ag
{

Delta diff(const AnnotationGraph& before, const AnnotationGraph& after)
{
    Delta d;
    std::set_difference(after.arcs().begin(), after.arcs().end(), before.arcs().begin(), before.arcs().end(),
                        std::inserter(d.added, d.added.end()));
    std::set_difference(before.arcs().begin(), before.arcs().end(), after.arcs().begin(), after.arcs().end(),
                        std::inserter(d.removed, d.removed.end()));
    for (const NodeId& node : after.nodes())
    {
        const TimeRef* old_time = before.contains(node) ? before.time(node) : nullptr;
        const TimeRef* new_time = after.time(node);
        bool same = (!old_time && !new_time) || (old_time && new_time && *old_time == *new_time);
        if (!same)
        {
            d.retimed.emplace(node, std::pair{old_time ? std::optional<TimeRef>(*old_time) : std::nullopt,
                                              new_time ? std::optional<TimeRef>(*new_time) : std::nullopt});
        }
    }
    return d;
}

AnnotationGraph apply(const AnnotationGraph& graph, const Delta& delta)
{
    ArcSet arcs = graph.arcs();
    for (const Arc& arc : delta.removed)
    {
        arcs.erase(arc);
    }
    arcs.insert(delta.added.begin(), delta.added.end());
    TimeMap times = graph.times();
    for (const auto& [node, change] : delta.retimed)
    {
        if (change.second)
        {
            times.insert_or_assign(node, *change.second);
        }
        else
        {
            times.erase(node);
        }
    }
    return AnnotationGraph::build(std::move(arcs), std::move(times));
}

std::string Delta::str() const
{
    std::string out;
    for (const Arc& arc : removed)
    {
        out += "- " + arc.str() + "\n";
    }
    for (const Arc& arc : added)
    {
        out += "+ " + arc.str() + "\n";
    }
    for (const auto& [node, change] : retimed)
    {
        out += "~ " + node.str() + " " + (change.first ? offset_attribute(*change.first) : "-") + " -> " +
               (change.second ? offset_attribute(*change.second) : "-") + "\n";
    }
    return out;
}

} // namespace ag
