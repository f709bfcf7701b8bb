#pragma once

#include <optional>

#include "ag/query.hpp"

namespace ag::detail
{

/// Source time (or glb) to target time (or lub); nullopt when either end is
/// unknown or the ends lie on different timelines.
std::optional<IndexSet::Extent> arc_extent(const RelationContext& relations, std::size_t arc);

/// Closed-interval overlap with positive length, or touching when either
/// interval is a single point.
bool overlaps(const Rational& a, const Rational& b, const Rational& start, const Rational& end);
bool within(const Rational& a, const Rational& b, const Rational& start, const Rational& end);

} // namespace ag::detail
