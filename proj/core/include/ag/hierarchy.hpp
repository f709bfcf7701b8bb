#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ag/graph.hpp"

namespace ag
{

/// Ordered tree whose leaves are tokens. For ordinary trees leaf positions
/// increase left to right; a discontinuous tree may list them scrambled.
struct SyntaxTree
{
    std::string label;               ///< category, or the token for a leaf
    std::vector<SyntaxTree> children;
    std::size_t position = 0;        ///< word index, leaves only
    bool leaf = false;

    static SyntaxTree make_leaf(std::string token, std::size_t position);
    static SyntaxTree make_node(std::string label, std::vector<SyntaxTree> children);

    /// Leaves in left-to-right order.
    std::vector<const SyntaxTree*> leaves() const;
    /// Penn bracket rendering, e.g. "(INTJ Yeah ,)".
    std::string str() const;

    friend bool operator==(const SyntaxTree&, const SyntaxTree&) = default;
};

/// Parses one Penn-style bracketed tree. An unlabeled wrapper with a single
/// child, as in "((S ...))", is removed. Leaf positions are assigned in text
/// order. Throws Error(MalformedTree).
SyntaxTree parse_penn(std::string_view text);
/// Parses a sequence of bracketed trees.
std::vector<SyntaxTree> parse_penn_forest(std::string_view text);

/// Null elements and editing markers that have no word of their own
/// ("*", "*T*-1", "0", "[", "]", "+").
bool is_empty_element(std::string_view token) noexcept;
/// Sentence-boundary markers that are dropped entirely ("E_S", "N_S").
bool is_boundary_marker(std::string_view token) noexcept;

struct ChartOptions
{
    std::string constituent_type = "T";
    std::string trace_type = "TRACE";
    /// Distinguishes trace nodes of different trees hung off one boundary.
    std::string trace_prefix = "t";
};

/// Constituent and trace arcs of one tree over `words`, plus times for the
/// trace nodes. Word arcs themselves are not included.
struct ChartPiece
{
    ArcSet arcs;
    TimeMap times;
};

/**
 * @brief Constituent arcs for `tree` over the given word arcs.
 *
 * @details
 * Each internal node yields an arc labelled [type, category] from the source
 * of its first word to the target of its last. Empty elements become instants
 * hanging off the boundary where they occur; a constituent dominating only
 * empty elements spans those instants. Throws Error(FringeMismatch) when the
 * number of word leaves differs from words.size().
 */
ChartPiece constituent_arcs(const SyntaxTree& tree, std::span<const Arc> words, const TimeMap& times,
                            const ChartOptions& options = {});

/// Word arcs plus constituent_arcs(), as a validated graph.
AnnotationGraph tree_to_chart(const SyntaxTree& tree, const std::vector<Arc>& words, const TimeMap& times = {},
                              const ChartOptions& options = {});

struct ForestOptions
{
    std::string word_type = "W";
    std::string constituent_type = "T";
    /// Categories listed earlier dominate later ones when spans coincide.
    std::vector<std::string> type_rank;
};

/**
 * @brief Rebuilds trees from a chart.
 *
 * @details
 * Word arcs must form chains; constituent arcs must start and end on chain
 * nodes. Spans nest by containment. Equal spans are ordered by type_rank and
 * reported as Error(AmbiguousNesting) when the rank does not decide. Partially
 * overlapping spans raise Error(CrossingBrackets); malformed charts raise
 * Error(InvalidChart). Words outside every constituent come back as leaf trees.
 */
std::vector<SyntaxTree> chart_to_trees(const AnnotationGraph& graph, const ForestOptions& options = {});

/// Dependency encoding: each word arc becomes [W, form, deps, head] where
/// `deps` names the class of the word's dependents and `head` the class the
/// word belongs to as a dependent (empty for the root). Class ids are the
/// 1-based word positions. `heads` lists (dependent, head) index pairs.
/// Throws Error(UnknownToken) for an out-of-range index and
/// Error(MultipleHeads) when a dependent is listed twice.
AnnotationGraph encode_dependencies(const std::vector<Arc>& words,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& heads,
                                    const TimeMap& times = {});

/// Inverse of encode_dependencies: head index per word position (nullopt for
/// roots), read from the word chain of type `word_type`.
std::vector<std::optional<std::size_t>> decode_dependencies(const AnnotationGraph& graph,
                                                            const std::string& word_type = "W");

/**
 * @brief Constituency over a possibly scrambled fringe.
 *
 * @details
 * Each constituent spans the smallest contiguous stretch of words containing
 * its fringe. When some constituent is discontinuous, every tree node gets a
 * class id (preorder, from 1) and arcs carry [type, content, id, parent id] so
 * the dominance relation survives; otherwise the result equals tree_to_chart.
 * Throws Error(UnknownToken) when a leaf position is out of range or its token
 * differs from the word's content.
 */
AnnotationGraph encode_discontinuous(const SyntaxTree& tree, const std::vector<Arc>& words,
                                     const TimeMap& times = {}, const ChartOptions& options = {});

} // namespace ag
