#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ag/error.hpp"
#include "ag/formats.hpp"
#include "ag/interchange.hpp"
#include "ag/query.hpp"

/**
 * @brief Five-operation facade for scripting front ends.
 *
 * @details
 * Handles share one immutable document; nothing here mutates a graph once
 * built. Every failure is an ag::Error, which describe() flattens into a
 * (code, message, witness) record for foreign-language wrappers.
 */
namespace ag::api
{

class Handle
{
public:
    explicit Handle(Document document);

    const AnnotationGraph& graph() const noexcept { return m_document->graph; }
    const Document& document() const noexcept { return *m_document; }

    const std::set<NodeId>& nodes() const noexcept { return graph().nodes(); }
    const ArcSet& arcs() const noexcept { return graph().arcs(); }
    const TimeMap& times() const noexcept { return graph().times(); }

private:
    std::shared_ptr<const Document> m_document;
};

/// Interchange file to handle. Throws Error(IoError) when unreadable.
Handle load(const std::string& path);
/// Throws Error(IoError) when the file cannot be written.
void save(const Handle& handle, const std::string& path);

/// Runs a format reader over files on disk. The timeline is declared only
/// when some node is timed.
Handle read(std::string_view format, std::span<const std::string> paths, const formats::ReaderOptions& options = {});

/// The selected subgraph keeps the source document's timelines.
Handle query(const Handle& handle, std::string_view text);

Delta diff(const Handle& before, const Handle& after);

struct Failure
{
    std::string code;
    std::string message;
    std::string witness;
};

Failure describe(const Error& error);

/// Whole file as bytes. Throws Error(IoError).
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

} // namespace ag::api
