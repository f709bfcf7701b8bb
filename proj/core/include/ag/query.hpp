#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ag/graph.hpp"
#include "ag/relations.hpp"

namespace ag
{

/// Version of the query text grammar accepted by parse_query().
inline constexpr int query_grammar_version = 1;

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

/// Label field `field` (1-based) equals `value`, or fully matches it as an
/// ECMAScript regular expression.
struct FieldMatch
{
    std::size_t field = 1;
    std::string value;
    bool regex = false;
};

/// Arc extents against a literal interval. An arc's extent runs from its
/// source time (or glb) to its target time (or lub).
struct IntervalMatch
{
    enum class Mode
    {
        overlaps,
        within,
    };
    Mode mode = Mode::overlaps;
    std::optional<std::string> timeline; ///< nullopt: the corpus's only timeline
    std::string start;                   ///< lexical
    std::string end;
};

/// Arcs whose endpoints carry the same time.
struct InstantMatch
{
};

/// Arcs standing in a relation to at least one arc selected by `reference`.
struct RelationMatch
{
    enum class Kind
    {
        precedes,      ///< target reaches some reference source (or is it)
        follows,       ///< some reference target reaches the source (or is it)
        includes,      ///< includes some reference arc
        inside,        ///< included by some reference arc
        component,     ///< same connected component
        same_class,    ///< equal value in label field `field`
        within_span,   ///< extent within some reference extent
        overlaps_span, ///< extent overlaps some reference extent
    };
    Kind kind = Kind::precedes;
    std::size_t field = 0; ///< only for same_class
    QueryPtr reference;
};

struct NotQuery
{
    QueryPtr operand;
};

struct BinaryQuery
{
    enum class Op
    {
        conjunction,
        disjunction,
    };
    Op op = Op::conjunction;
    QueryPtr lhs;
    QueryPtr rhs;
};

/// Expression tree; every expression denotes a set of arcs of the corpus graph.
struct Query
{
    std::variant<FieldMatch, IntervalMatch, InstantMatch, RelationMatch, NotQuery, BinaryQuery> node;

    /// Canonical text; parse_query(q.str()) denotes the same arc set.
    std::string str() const;
};

QueryPtr make_query(Query q);
QueryPtr both(QueryPtr a, QueryPtr b);
QueryPtr either(QueryPtr a, QueryPtr b);
QueryPtr negate(QueryPtr a);

/// Throws Error(QuerySyntax) with the offending position as witness, and
/// Error(UnknownField) for field names other than type, content, fieldK.
QueryPtr parse_query(std::string_view text);

using ArcBits = boost::dynamic_bitset<>;

/**
 * @brief Lookup structures over one graph's arcs.
 *
 * @details
 * Arcs are numbered in ArcSet order. The interval index holds, per timeline,
 * every arc whose extent has both ends known; arcs without bounds are only
 * in the label and component indexes. Arc pointers refer into the graph
 * passed on construction, which must outlive the index.
 */
class IndexSet
{
public:
    struct Extent
    {
        std::string timeline;
        Rational start;
        Rational end;
        std::size_t arc;
    };

    IndexSet() = default;
    /// `relations` must be built over a graph equal to `graph`.
    IndexSet(const AnnotationGraph& graph, const RelationContext& relations);

    const std::vector<const Arc*>& arcs() const noexcept { return m_arcs; }
    std::size_t index_of(const Arc& arc) const;

    /// Arcs with `value` in label field `field`; empty when none.
    ArcBits with_field(std::size_t field, const std::string& value) const;
    /// Extent of an arc, if both ends are known.
    const std::optional<Extent>& extent(std::size_t arc) const { return m_extent.at(arc); }
    /// Arcs of `timeline` whose extents overlap / lie within [start, end].
    ArcBits overlapping(const std::string& timeline, const Rational& start, const Rational& end) const;
    ArcBits within(const std::string& timeline, const Rational& start, const Rational& end) const;
    std::size_t interval_entries() const noexcept;
    /// Timelines in use by any extent.
    std::vector<std::string> timelines() const;

    std::size_t component_of(std::size_t arc) const { return m_component.at(arc); }
    const ArcBits& component(std::size_t id) const { return m_components.at(id); }

private:
    std::vector<const Arc*> m_arcs;
    std::map<std::pair<std::size_t, std::string>, ArcBits> m_fields;
    std::vector<std::optional<Extent>> m_extent;
    std::map<std::string, std::vector<Extent>> m_by_start; ///< sorted by start
    std::vector<std::size_t> m_component;
    std::vector<ArcBits> m_components;
};

/// Indexes over `graph`, which must outlive the result.
IndexSet build_indexes(const AnnotationGraph& graph);

/**
 * @brief Evaluates queries against one corpus graph.
 *
 * @details
 * With `use_indexes` false every primitive is answered by scanning the arcs;
 * results are identical either way.
 *
 * @par Thread Safety
 * eval() is const and safe for concurrent use.
 */
class QueryEngine
{
public:
    explicit QueryEngine(AnnotationGraph corpus, bool use_indexes = true);

    const AnnotationGraph& corpus() const noexcept { return m_relations.graph(); }
    const IndexSet& indexes() const noexcept { return m_indexes; }

    /// Subgraph of the corpus selected by `query`.
    AnnotationGraph eval(const Query& query) const;
    AnnotationGraph eval(std::string_view text) const;
    ArcBits select(const Query& query) const;

private:
    ArcBits field(const FieldMatch& m) const;
    ArcBits interval(const IntervalMatch& m) const;
    ArcBits instant() const;
    ArcBits relation(const RelationMatch& m) const;
    std::string default_timeline() const;

    RelationContext m_relations;
    IndexSet m_indexes;
    bool m_use_indexes;
};

/// Convenience: QueryEngine(corpus).eval(text).
AnnotationGraph eval(const AnnotationGraph& corpus, std::string_view text);

/// Tuple-level difference between two graphs.
struct Delta
{
    ArcSet added;
    ArcSet removed;
    /// Nodes of the second graph whose time differs from the first graph's
    /// (absent in the first graph counts as untimed): node -> (old, new).
    std::map<NodeId, std::pair<std::optional<TimeRef>, std::optional<TimeRef>>> retimed;

    bool empty() const noexcept { return added.empty() && removed.empty() && retimed.empty(); }
    std::string str() const;

    friend bool operator==(const Delta&, const Delta&) = default;
};

Delta diff(const AnnotationGraph& before, const AnnotationGraph& after);
/// apply(g1, diff(g1, g2)) == g2. Throws ValidationError if the result is
/// not well-formed.
AnnotationGraph apply(const AnnotationGraph& graph, const Delta& delta);

} // namespace ag
