#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ag/time.hpp"

namespace ag
{

/// Opaque node identifier, optionally namespace-qualified ("ns#local").
class NodeId
{
public:
    /// Throws Error(EmptyNodeId) on an empty string.
    explicit NodeId(std::string value);

    const std::string& str() const noexcept { return m_value; }

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
    friend bool operator==(const NodeId&, const NodeId&) = default;

private:
    std::string m_value;
};

/// Fielded arc label. Field 1 is the type (layer), field 2 the content;
/// further fields are uninterpreted (class ids, references, ...).
/// Field accessors are 1-based to match the att_1, att_2, ... numbering.
class Label
{
public:
    /// Throws Error(EmptyLabel) when no field is given.
    explicit Label(std::vector<std::string> fields);
    Label(std::initializer_list<std::string> fields);

    const std::vector<std::string>& fields() const noexcept { return m_fields; }
    std::size_t size() const noexcept { return m_fields.size(); }

    const std::string& type() const noexcept { return m_fields.front(); }
    /// Field 2, or the empty string when the label has a single field.
    const std::string& content() const noexcept;
    /// 1-based field access; nullopt when out of range.
    std::optional<std::string_view> field(std::size_t index) const noexcept;

    /// "type/content/..." rendering used in messages and reports.
    std::string str() const;

    friend auto operator<=>(const Label&, const Label&) = default;
    friend bool operator==(const Label&, const Label&) = default;

private:
    std::vector<std::string> m_fields;
};

struct Arc
{
    NodeId source;
    Label label;
    NodeId target;

    std::string str() const;

    friend auto operator<=>(const Arc&, const Arc&) = default;
    friend bool operator==(const Arc&, const Arc&) = default;
};

using ArcSet = std::set<Arc>;
using TimeMap = std::map<NodeId, TimeRef>;

class ValidationReport;

/**
 * @brief An annotation graph: arcs, the node set they induce, and a partial
 * time function on those nodes.
 *
 * @details
 * Graphs are immutable values. The node set is always derived from the arcs,
 * so nodes of degree zero cannot be represented; times for nodes that no arc
 * uses are dropped on construction. Every edit produces a new graph through
 * build(), the algebra functions, or diff application.
 *
 * @par Thread Safety
 * Immutable after construction; safe for any number of concurrent readers.
 */
class AnnotationGraph
{
public:
    /// The empty graph.
    AnnotationGraph() = default;

    /// Builds and validates. Throws ValidationError listing every violation.
    static AnnotationGraph build(ArcSet arcs, TimeMap times = {});
    static AnnotationGraph build(const std::vector<Arc>& arcs, TimeMap times = {});
    static AnnotationGraph build(std::initializer_list<Arc> arcs, TimeMap times = {});

    /// Structural assembly without well-formedness checks. Only for
    /// diagnostics: parsing a possibly-invalid document before validate().
    static AnnotationGraph assemble(ArcSet arcs, TimeMap times = {});

    const ArcSet& arcs() const noexcept { return m_arcs; }
    const std::set<NodeId>& nodes() const noexcept { return m_nodes; }
    const TimeMap& times() const noexcept { return m_times; }

    bool empty() const noexcept { return m_arcs.empty(); }
    bool contains(const Arc& arc) const { return m_arcs.contains(arc); }
    bool contains(const NodeId& node) const { return m_nodes.contains(node); }

    /// Time of a node, or nullptr when untimed or absent.
    const TimeRef* time(const NodeId& node) const;

    friend bool operator==(const AnnotationGraph&, const AnnotationGraph&) = default;

private:
    AnnotationGraph(ArcSet arcs, TimeMap times);

    ArcSet m_arcs;
    std::set<NodeId> m_nodes;
    TimeMap m_times;
};

} // namespace ag
