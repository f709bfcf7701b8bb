#pragma once

#include <map>
#include <string>

#include "ag/graph.hpp"
#include "ag/time.hpp"

namespace ag
{

class TimelineRegistry
{
public:
    /// Throws Error(InvalidTimeline) on a duplicate id or a bad rate.
    void add(Timeline timeline);
    const Timeline* find(const std::string& id) const;
    const std::map<std::string, Timeline>& all() const noexcept { return m_timelines; }

private:
    std::map<std::string, Timeline> m_timelines;
};

/// Named annotation graphs whose node ids are unique across members, so the
/// whole corpus is always expressible as one disjoint union.
class Corpus
{
public:
    /// Throws Error(NodeIdCollision) when a node id is already used by another
    /// member or when the graph name is taken.
    void add_graph(std::string name, AnnotationGraph graph);

    TimelineRegistry& timelines() noexcept { return m_timelines; }
    const TimelineRegistry& timelines() const noexcept { return m_timelines; }
    const std::map<std::string, AnnotationGraph>& graphs() const noexcept { return m_graphs; }

    /// Disjoint union of all members.
    AnnotationGraph merged() const;

private:
    std::map<std::string, AnnotationGraph> m_graphs;
    std::map<NodeId, std::string> m_owner;
    TimelineRegistry m_timelines;
};

} // namespace ag
