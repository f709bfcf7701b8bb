#include "ag/api.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace ag::api
{

Handle::Handle(Document document)
    : m_document(std::make_shared<const Document>(std::move(document)))
{
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading", path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
    {
        throw Error(ErrorCode::IoError, "error while reading '" + path + "'", path);
    }
    return buffer.str();
}

void write_file(const std::string& path, std::string_view bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing", path);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush())
    {
        throw Error(ErrorCode::IoError, "error while writing '" + path + "'", path);
    }
}

Handle load(const std::string& path)
{
    return Handle(parse_xml(read_file(path)));
}

void save(const Handle& handle, const std::string& path)
{
    write_file(path, to_xml(handle.document()));
}

Handle read(std::string_view format, std::span<const std::string> paths, const formats::ReaderOptions& options)
{
    formats::Format f = formats::parse_format(format);
    if (f == formats::Format::agxml)
    {
        if (paths.size() != 1)
        {
            throw Error(ErrorCode::UnknownFormat, "agxml takes exactly one input", std::string(format));
        }
        return load(paths.front());
    }
    std::vector<std::string> contents;
    contents.reserve(paths.size());
    for (const std::string& path : paths)
    {
        contents.push_back(read_file(path));
    }
    formats::ReadResult result = formats::read(f, contents, options);
    std::vector<Timeline> timelines;
    if (!result.graph.times().empty())
    {
        timelines.push_back(std::move(result.timeline));
    }
    return Handle(Document{std::move(result.graph), std::move(timelines), std::move(result.metadata)});
}

Handle query(const Handle& handle, std::string_view text)
{
    Document out = handle.document();
    out.graph = eval(handle.graph(), text);
    return Handle(std::move(out));
}

Delta diff(const Handle& before, const Handle& after)
{
    return ag::diff(before.graph(), after.graph());
}

Failure describe(const Error& error)
{
    return Failure{std::string(to_string(error.code())), error.what(), error.witness()};
}

} // namespace ag::api
