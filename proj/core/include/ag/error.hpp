#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ag
{

/// Stable error categories. The names are part of the external contract:
/// CLI reports and scripting bindings surface them verbatim.
enum class ErrorCode
{
    // model
    EmptyNodeId,
    EmptyLabel,
    MalformedNumber,
    CrossTimelineComparison,
    InvalidTimeline,
    CycleFound,
    ArcTimeReversed,
    MixedTimelines,
    PathConditionViolated,
    ArcNotInGraph,
    NodeIdCollision,
    NotASubgraph,
    UnknownNode,
    // hierarchy
    FringeMismatch,
    CrossingBrackets,
    AmbiguousNesting,
    InvalidChart,
    UnknownToken,
    MultipleHeads,
    MalformedTree,
    // readers
    MalformedLine,
    NonMonotonicTimes,
    UnknownAnchor,
    OverlappingMAUWithinAnchor,
    OrphanDependentTier,
    MissingAudioAnchor,
    MalformedStretch,
    UnbalancedTag,
    TimeOutsideTurn,
    AlignmentFailure,
    DanglingRef,
    // interchange
    SchemaViolation,
    ConflictingQualification,
    // query
    QuerySyntax,
    UnknownField,
    // io
    IoError,
    UnknownFormat,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. Carries a category, a human message
/// and a witness (node path, arc, id, ...) suitable for machine reports.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message, std::string witness = {},
          std::optional<std::size_t> line = std::nullopt);

    ErrorCode code() const noexcept { return m_code; }
    const std::string& witness() const noexcept { return m_witness; }
    const std::optional<std::size_t>& line() const noexcept { return m_line; }

    /// Copy of this error with a source line attached (readers use this).
    Error at_line(std::size_t line) const;

private:
    ErrorCode m_code;
    std::string m_witness;
    std::optional<std::size_t> m_line;
};

} // namespace ag
