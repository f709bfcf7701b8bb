#include "ag/error.hpp"
#include "ag/interchange.hpp"

namespace ag
{

QualifiedId QualifiedId::parse(std::string_view text)
{
    QualifiedId id;
    auto hash = text.rfind('#');
    if (hash == std::string_view::npos || hash == 0)
    {
        id.local = std::string(text);
        return id;
    }
    id.local = std::string(text.substr(hash + 1));
    std::string_view prefix = text.substr(0, hash);
    if (auto slash = prefix.rfind('/'); slash != std::string_view::npos)
    {
        id.authority = std::string(prefix.substr(0, slash));
        id.annotation = std::string(prefix.substr(slash + 1));
    }
    else
    {
        id.annotation = std::string(prefix);
    }
    return id;
}

std::string QualifiedId::str() const
{
    if (authority)
    {
        return *authority + "/" + annotation + "#" + local;
    }
    return annotation.empty() ? local : annotation + "#" + local;
}

std::string offset_attribute(const TimeRef& time)
{
    return time.timeline().empty() ? time.lexical() : time.timeline() + "#" + time.lexical();
}

TimeRef parse_offset_attribute(std::string_view text)
{
    auto hash = text.rfind('#');
    if (hash == std::string_view::npos)
    {
        return TimeRef::parse("", std::string(text));
    }
    return TimeRef::parse(std::string(text.substr(0, hash)), std::string(text.substr(hash + 1)));
}

namespace
{

[[noreturn]] void conflict(const std::string& what, const std::string& have, const std::string& want)
{
    throw Error(ErrorCode::ConflictingQualification,
                what + " is already qualified as '" + have + "', not '" + want + "'", have);
}

} // namespace

AnnotationGraph qualify(const AnnotationGraph& graph, const std::string& authority,
                        const std::string& annotation_ns, const std::string& timeline)
{
    std::map<NodeId, NodeId> renamed;
    for (const NodeId& node : graph.nodes())
    {
        QualifiedId id = QualifiedId::parse(node.str());
        if (!authority.empty())
        {
            if (id.authority && *id.authority != authority)
            {
                conflict("authority of node " + node.str(), *id.authority, authority);
            }
            id.authority = authority;
        }
        if (!annotation_ns.empty())
        {
            if (!id.annotation.empty() && id.annotation != annotation_ns)
            {
                conflict("annotation of node " + node.str(), id.annotation, annotation_ns);
            }
            id.annotation = annotation_ns;
        }
        renamed.emplace(node, NodeId(id.str()));
    }

    ArcSet arcs;
    for (const Arc& arc : graph.arcs())
    {
        arcs.insert(Arc{renamed.at(arc.source), arc.label, renamed.at(arc.target)});
    }
    TimeMap times;
    for (const auto& [node, time] : graph.times())
    {
        TimeRef t = time;
        if (!timeline.empty() && t.timeline() != timeline)
        {
            if (!t.timeline().empty())
            {
                conflict("offset of node " + node.str(), t.timeline(), timeline);
            }
            t = TimeRef(timeline, t.offset(), t.lexical());
        }
        times.emplace(renamed.at(node), std::move(t));
    }
    return AnnotationGraph::build(std::move(arcs), std::move(times));
}

} // namespace ag
