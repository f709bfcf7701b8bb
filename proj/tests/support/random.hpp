#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "ag/graph.hpp"
#include "ag/hierarchy.hpp"

namespace agtest
{

using Rng = std::mt19937_64;

/// Every randomized test starts from a pinned seed so failures replay.
inline constexpr std::uint64_t seed = 20260915;

struct DagOptions
{
    std::size_t min_nodes = 2;
    std::size_t max_nodes = 20;
    double edge_probability = 0.3;
    double timed_probability = 0.6;
    /// Times rise along a hidden topological order, so every path condition
    /// holds. When false, times are drawn freely.
    bool consistent_times = true;
    /// Chance of timing a node on a second timeline instead.
    double foreign_timeline_probability = 0.0;
    /// Chance of adding one backward arc, which usually closes a cycle.
    double back_arc_probability = 0.0;
};

/// Arcs only point forward in a hidden order unless a back arc is added.
/// Node ids are shuffled so id order says nothing about that hidden order.
/// The result is assembled without validation.
ag::AnnotationGraph random_dag(Rng& rng, const DagOptions& options = {});

/// Each arc kept with probability one half.
ag::ArcSet random_subset(Rng& rng, const ag::ArcSet& arcs);

/// Projective tree over tokens w0..w(n-1), n <= max_leaves. Internal nodes
/// have at least two children unless their only child is a leaf.
ag::SyntaxTree random_tree(Rng& rng, std::size_t max_leaves);

/// A chain of W arcs whose contents are the tree's leaves.
std::vector<ag::Arc> word_chain(const ag::SyntaxTree& tree);

struct EditPair
{
    ag::AnnotationGraph before;
    ag::AnnotationGraph after;
};

/// Two well-formed graphs over one node universe differing by random
/// relabelings, deletions, insertions and retimings.
EditPair random_edit_pair(Rng& rng);

/// `before` plus one arc whose label is changed.
EditPair single_label_edit(Rng& rng);

} // namespace agtest
