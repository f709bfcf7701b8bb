#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ag/error.hpp"
#include "ag/graph.hpp"

namespace ag
{

/// One violated invariant with its witness (a node path, an arc, or the
/// members of a component, rendered as strings).
struct Violation
{
    ErrorCode kind;
    std::string message;
    std::vector<std::string> witness;
};

class ValidationReport
{
public:
    void add(Violation violation) { m_entries.push_back(std::move(violation)); }

    bool ok() const noexcept { return m_entries.empty(); }
    const std::vector<Violation>& entries() const noexcept { return m_entries; }
    bool has(ErrorCode kind) const noexcept;

    std::string str() const;

private:
    std::vector<Violation> m_entries;
};

/// Thrown by AnnotationGraph::build and the readers; code() is the first
/// violation's kind, report() holds all of them.
class ValidationError : public Error
{
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return m_report; }

private:
    ValidationReport m_report;
};

/// Checks acyclicity, arc time order, one timeline per connected component,
/// and the path condition (for every path n1 ->* n2 with both ends timed,
/// tau(n1) <= tau(n2)). An empty report means the graph is well-formed.
ValidationReport validate(const AnnotationGraph& graph);

/// Bounds inherited through the arc structure. `lower` is the greatest time
/// among timed strict ancestors, `upper` the least among timed strict
/// descendants; both are absent when no such node exists. Only defined for
/// acyclic graphs whose components use one timeline.
struct NodeBounds
{
    std::optional<TimeRef> lower;
    std::optional<TimeRef> upper;
};

std::map<NodeId, NodeBounds> propagate_bounds(const AnnotationGraph& graph);

/// Every node lacking an incoming or an outgoing arc is timed.
bool is_anchored(const AnnotationGraph& graph);
/// The time function is total.
bool is_totally_anchored(const AnnotationGraph& graph);

} // namespace ag
