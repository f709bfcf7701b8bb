#include "ag/error.hpp"

namespace ag
{

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::EmptyNodeId: return "EmptyNodeId";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::CrossTimelineComparison: return "CrossTimelineComparison";
    case ErrorCode::InvalidTimeline: return "InvalidTimeline";
    case ErrorCode::CycleFound: return "CycleFound";
    case ErrorCode::ArcTimeReversed: return "ArcTimeReversed";
    case ErrorCode::MixedTimelines: return "MixedTimelines";
    case ErrorCode::PathConditionViolated: return "PathConditionViolated";
    case ErrorCode::ArcNotInGraph: return "ArcNotInGraph";
    case ErrorCode::NodeIdCollision: return "NodeIdCollision";
    case ErrorCode::NotASubgraph: return "NotASubgraph";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::FringeMismatch: return "FringeMismatch";
    case ErrorCode::CrossingBrackets: return "CrossingBrackets";
    case ErrorCode::AmbiguousNesting: return "AmbiguousNesting";
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::MultipleHeads: return "MultipleHeads";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::NonMonotonicTimes: return "NonMonotonicTimes";
    case ErrorCode::UnknownAnchor: return "UnknownAnchor";
    case ErrorCode::OverlappingMAUWithinAnchor: return "OverlappingMAUWithinAnchor";
    case ErrorCode::OrphanDependentTier: return "OrphanDependentTier";
    case ErrorCode::MissingAudioAnchor: return "MissingAudioAnchor";
    case ErrorCode::MalformedStretch: return "MalformedStretch";
    case ErrorCode::UnbalancedTag: return "UnbalancedTag";
    case ErrorCode::TimeOutsideTurn: return "TimeOutsideTurn";
    case ErrorCode::AlignmentFailure: return "AlignmentFailure";
    case ErrorCode::DanglingRef: return "DanglingRef";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ConflictingQualification: return "ConflictingQualification";
    case ErrorCode::QuerySyntax: return "QuerySyntax";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string witness,
             std::optional<std::size_t> line)
    : std::runtime_error(message)
    , m_code(code)
    , m_witness(std::move(witness))
    , m_line(line)
{
}

Error Error::at_line(std::size_t line) const
{
    return Error(m_code, what(), m_witness, line);
}

} // namespace ag
