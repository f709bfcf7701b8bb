#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace agtool
{

/// Exit statuses shared by every subcommand.
enum Exit : int
{
    ok = 0,
    failure = 1,     ///< usage, I/O or parse error
    invalid = 2,     ///< input read fine but failed validation
};

/// AG_NAMESPACE from the process environment, if set and non-empty.
std::optional<std::string> namespace_from_environment();

/**
 * @brief Runs one agtool invocation.
 *
 * @param args command line without the program name
 * @param ns   value of AG_NAMESPACE: "authority/annotation" or a bare
 *             annotation name used to qualify converted node ids
 *
 * Data goes to `out`, diagnostics to `err` as one JSON object per line.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& ns = namespace_from_environment());

} // namespace agtool
