#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ag/formats.hpp"
#include "ag/graph.hpp"
#include "ag/hierarchy.hpp"

namespace agtest
{

std::string fixture_path(std::string_view name);
/// Throws std::runtime_error when the file is missing.
std::string fixture(std::string_view name);

/// Built directly from the published model of the TIMIT fragment: nine nodes
/// 0..8, eleven arcs, node 2 at 3270.
ag::AnnotationGraph timit_model();

struct NamedGraph
{
    std::string name;
    ag::AnnotationGraph graph;
};

/// Reader outputs for every fixture, plus the TIMIT model.
std::vector<NamedGraph> fixture_graphs();

ag::formats::ReadResult read_fixture(std::string_view name);

/// Shorthand for building arcs in tests.
ag::Arc arc(const std::string& source, std::vector<std::string> label, const std::string& target);
ag::TimeRef at(const std::string& lexical, const std::string& timeline = {});

/// W arcs b0 -> b1 -> ... over the tokens.
std::vector<ag::Arc> chain(const std::vector<std::string>& tokens);

/// Horace, Carmina 1.5, first eight words in the order written: the subject
/// phrase and the prepositional phrase interleave.
extern const std::vector<std::string> latin_words;
/// (dependent, head) word indexes for latin_words.
extern const std::vector<std::pair<std::size_t, std::size_t>> latin_heads;
/// Constituents over latin_words, with discontinuous NPs.
ag::SyntaxTree latin_tree();

} // namespace agtest
