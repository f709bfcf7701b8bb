#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ag/graph.hpp"
#include "ag/time.hpp"

namespace ag
{

/**
 * @brief A node identifier split into its qualification parts.
 *
 * @details
 * "http://host/~sb/timit-dr1-fjsp0#5" has authority "http://host/~sb",
 * annotation "timit-dr1-fjsp0" and local "5". The local part follows the
 * last '#', the annotation the last '/' before it. A string without a
 * non-empty prefix before '#' is entirely local. print(parse(s)) == s.
 */
struct QualifiedId
{
    std::optional<std::string> authority;
    std::string annotation;
    std::string local;

    static QualifiedId parse(std::string_view text);
    std::string str() const;
    bool qualified() const noexcept { return authority || !annotation.empty(); }

    friend bool operator==(const QualifiedId&, const QualifiedId&) = default;
};

/// Offset attribute spelling: "<timeline>#<lexical>", or the bare lexical
/// form on the unnamed timeline.
std::string offset_attribute(const TimeRef& time);
/// Inverse of offset_attribute(). Throws Error(MalformedNumber).
TimeRef parse_offset_attribute(std::string_view text);

/// A graph with the optional document-level blocks of the interchange form.
struct Document
{
    AnnotationGraph graph;
    std::vector<Timeline> timelines;
    std::vector<std::pair<std::string, std::string>> metadata;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Canonical interchange XML: one <arc> per line, sorted by the source
/// node's time or inherited lower bound, then source id, target id and label
/// fields. Offsets are written in their lexical form.
std::string to_xml(const AnnotationGraph& graph);
std::string to_xml(const Document& document);

/// Parses the interchange form. Throws Error(SchemaViolation) with the
/// element path as witness on structural problems, and ValidationError when
/// `validate_graph` is set and the arcs do not form a well-formed graph.
Document parse_xml(std::string_view xml, bool validate_graph = true);

/// parse_xml(xml).graph.
AnnotationGraph from_xml(std::string_view xml);

/// Qualifies every node id with authority and annotation namespace and every
/// offset with `timeline`. Empty arguments leave that part alone. Parts
/// already present must agree, otherwise Error(ConflictingQualification).
AnnotationGraph qualify(const AnnotationGraph& graph, const std::string& authority,
                        const std::string& annotation_ns, const std::string& timeline);

} // namespace ag
