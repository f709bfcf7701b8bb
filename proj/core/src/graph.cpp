#include "ag/graph.hpp"

#include "ag/error.hpp"
#include "ag/validate.hpp"

namespace ag
{

NodeId::NodeId(std::string value) : m_value(std::move(value))
{
    if (m_value.empty())
    {
        throw Error(ErrorCode::EmptyNodeId, "node id must not be empty");
    }
}

Label::Label(std::vector<std::string> fields) : m_fields(std::move(fields))
{
    if (m_fields.empty())
    {
        throw Error(ErrorCode::EmptyLabel, "label must have at least one field");
    }
}

Label::Label(std::initializer_list<std::string> fields) : Label(std::vector<std::string>(fields))
{
}

const std::string& Label::content() const noexcept
{
    static const std::string empty;
    return m_fields.size() > 1 ? m_fields[1] : empty;
}

std::optional<std::string_view> Label::field(std::size_t index) const noexcept
{
    if (index == 0 || index > m_fields.size())
    {
        return std::nullopt;
    }
    return std::string_view(m_fields[index - 1]);
}

std::string Label::str() const
{
    std::string out;
    for (std::size_t i = 0; i < m_fields.size(); ++i)
    {
        if (i > 0)
        {
            out += '/';
        }
        out += m_fields[i];
    }
    return out;
}

std::string Arc::str() const
{
    return "<" + source.str() + ", " + label.str() + ", " + target.str() + ">";
}

AnnotationGraph::AnnotationGraph(ArcSet arcs, TimeMap times) : m_arcs(std::move(arcs))
{
    for (const Arc& arc : m_arcs)
    {
        m_nodes.insert(arc.source);
        m_nodes.insert(arc.target);
    }
    for (auto& [node, time] : times)
    {
        if (m_nodes.contains(node))
        {
            m_times.emplace(node, std::move(time));
        }
    }
}

AnnotationGraph AnnotationGraph::build(ArcSet arcs, TimeMap times)
{
    AnnotationGraph graph(std::move(arcs), std::move(times));
    ValidationReport report = validate(graph);
    if (!report.ok())
    {
        throw ValidationError(std::move(report));
    }
    return graph;
}

AnnotationGraph AnnotationGraph::build(const std::vector<Arc>& arcs, TimeMap times)
{
    return build(ArcSet(arcs.begin(), arcs.end()), std::move(times));
}

AnnotationGraph AnnotationGraph::build(std::initializer_list<Arc> arcs, TimeMap times)
{
    return build(ArcSet(arcs), std::move(times));
}

AnnotationGraph AnnotationGraph::assemble(ArcSet arcs, TimeMap times)
{
    return AnnotationGraph(std::move(arcs), std::move(times));
}

const TimeRef* AnnotationGraph::time(const NodeId& node) const
{
    auto it = m_times.find(node);
    return it == m_times.end() ? nullptr : &it->second;
}

} // namespace ag
