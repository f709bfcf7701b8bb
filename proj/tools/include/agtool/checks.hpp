#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ag/graph.hpp"

namespace agtool
{

/// One failed content check, naming the offending arc.
struct Finding
{
    std::string check;
    std::string message;
    std::string arc;
};

/// Label type -> permitted content values. Types absent from the map are
/// not checked.
using Vocabulary = std::map<std::string, std::set<std::string>>;

/// "TYPE: value value ..." lines; lines starting with '#' are comments and
/// repeated types accumulate. Throws ag::Error(MalformedLine).
Vocabulary parse_vocabulary(std::string_view text);

/// Every arc of type `inner` must be included by some arc of type `outer`.
struct NestingRule
{
    std::string inner;
    std::string outer;

    friend bool operator==(const NestingRule&, const NestingRule&) = default;
};

/// "INNER in OUTER" lines, e.g. "P in W" and "W in T". Throws
/// ag::Error(MalformedLine).
std::vector<NestingRule> parse_rules(std::string_view text);

std::vector<Finding> check_vocabulary(const ag::AnnotationGraph& graph, const Vocabulary& vocabulary);

/// Brackets ((), [], {}, <>) nest and double quotes pair up within every
/// label field.
std::vector<Finding> check_balance(const ag::AnnotationGraph& graph);

std::vector<Finding> check_nesting(const ag::AnnotationGraph& graph, const std::vector<NestingRule>& rules);

} // namespace agtool
