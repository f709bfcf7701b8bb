#include "agtool/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ag/algebra.hpp"
#include "ag/api.hpp"
#include "ag/corpus.hpp"
#include "ag/validate.hpp"
#include "agtool/checks.hpp"

namespace agtool
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct ConvertConfig
{
    std::string format;
    std::vector<std::string> inputs;
    std::string out;
    std::string timeline;
    std::string unit;
    std::string merge_gap;
    std::string punct;
};

/// Error report for the diagnostic stream.
json describe(const ag::Error& e, const std::string& file)
{
    json j{{"error", std::string(ag::to_string(e.code()))}, {"message", e.what()}};
    if (!e.witness().empty())
    {
        j["witness"] = e.witness();
    }
    if (!file.empty())
    {
        j["file"] = file;
    }
    if (e.line())
    {
        j["line"] = *e.line();
    }
    return j;
}

json describe(const ag::ValidationReport& report)
{
    json entries = json::array();
    for (const ag::Violation& v : report.entries())
    {
        entries.push_back({{"check", "wellformed"},
                           {"code", std::string(ag::to_string(v.kind))},
                           {"message", v.message},
                           {"witness", v.witness}});
    }
    return entries;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (const std::string& p : parts)
    {
        out += (out.empty() ? "" : std::string(sep)) + p;
    }
    return out;
}

/// Writes to `path`, or to `out` for "-".
void emit(const std::string& path, std::string_view bytes, std::ostream& out)
{
    if (path == "-")
    {
        out << bytes;
        return;
    }
    ag::api::write_file(path, bytes);
}

ag::formats::ReaderOptions reader_options(const ConvertConfig& c)
{
    ag::formats::ReaderOptions options;
    options.timeline_id = c.timeline;
    if (!c.unit.empty())
    {
        options.unit = ag::parse_time_unit(c.unit);
    }
    if (!c.merge_gap.empty())
    {
        options.merge_gap = ag::parse_decimal(c.merge_gap);
    }
    if (!c.punct.empty())
    {
        options.punctuation = *ag::formats::parse_punctuation_policy(c.punct);
    }
    return options;
}

/// "authority/annotation" splits at the last '/'.
std::pair<std::string, std::string> split_namespace(const std::string& ns)
{
    auto slash = ns.rfind('/');
    if (slash == std::string::npos)
    {
        return {"", ns};
    }
    return {ns.substr(0, slash), ns.substr(slash + 1)};
}

std::string default_output(const std::string& input)
{
    fs::path p(input);
    return (p.parent_path() / p.stem()).string() + ".ag.xml";
}

/// One document per call; diagnostics are returned, not printed, so batch
/// workers can report in input order.
int convert_one(const ConvertConfig& c, const std::vector<std::string>& inputs, const std::string& out_path,
                const std::optional<std::string>& ns, std::ostream& out, std::vector<json>& diagnostics)
{
    std::string files = join(inputs, ",");
    try
    {
        ag::api::Handle handle = ag::api::read(c.format, inputs, reader_options(c));
        ag::Document document = handle.document();
        if (ns)
        {
            auto [authority, annotation] = split_namespace(*ns);
            document.graph = ag::qualify(document.graph, authority, annotation, "");
        }
        emit(out_path, ag::to_xml(document), out);
        return Exit::ok;
    }
    catch (const ag::ValidationError& e)
    {
        json j = describe(e, files);
        j["violations"] = describe(e.report());
        diagnostics.push_back(std::move(j));
        return Exit::invalid;
    }
    catch (const ag::Error& e)
    {
        diagnostics.push_back(describe(e, files));
        return Exit::failure;
    }
}

int cmd_convert(const ConvertConfig& c, const std::optional<std::string>& ns, std::ostream& out, std::ostream& err)
{
    ag::formats::Format format = ag::formats::parse_format(c.format);
    ag::formats::Arity arity = ag::formats::arity(format);

    // Single-file formats take several inputs as a batch, one document each.
    bool batch = arity.max == 1 && c.inputs.size() > 1;
    if (!batch)
    {
        std::vector<json> diagnostics;
        std::string path = c.out.empty() ? default_output(c.inputs.front()) : c.out;
        int status = convert_one(c, c.inputs, path, ns, out, diagnostics);
        for (const json& d : diagnostics)
        {
            err << d.dump() << "\n";
        }
        return status;
    }

    if (!c.out.empty() && c.out != "-" && !fs::is_directory(c.out))
    {
        throw ag::Error(ag::ErrorCode::IoError, "--out must name a directory when converting several files", c.out);
    }
    if (c.out == "-")
    {
        throw ag::Error(ag::ErrorCode::IoError, "several documents cannot share the output stream", c.out);
    }

    std::size_t n = c.inputs.size();
    std::vector<int> status(n, Exit::ok);
    std::vector<std::vector<json>> diagnostics(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            const std::string& input = c.inputs[i];
            std::string path = c.out.empty() ? default_output(input)
                                             : (fs::path(c.out) / fs::path(default_output(input)).filename()).string();
            std::ostringstream unused;
            status[i] = convert_one(c, {input}, path, ns, unused, diagnostics[i]);
        }
    };
    std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
    {
        pool.emplace_back(worker);
    }
    pool.clear();

    for (const auto& d : diagnostics)
    {
        for (const json& j : d)
        {
            err << j.dump() << "\n";
        }
    }
    return *std::max_element(status.begin(), status.end());
}

int cmd_validate(const std::string& path, const std::string& vocab, const std::string& rules, std::ostream& out)
{
    ag::Document document = ag::parse_xml(ag::api::read_file(path), false);
    const ag::AnnotationGraph& g = document.graph;

    // Config files are parsed up front so a bad one is a usage error.
    Vocabulary vocabulary = vocab.empty() ? Vocabulary{} : parse_vocabulary(ag::api::read_file(vocab));
    std::vector<NestingRule> nesting = rules.empty() ? std::vector<NestingRule>{} : parse_rules(ag::api::read_file(rules));

    ag::ValidationReport report = ag::validate(g);
    json findings = describe(report);
    std::vector<Finding> content = check_balance(g);
    auto add = [&](std::vector<Finding> more) { content.insert(content.end(), more.begin(), more.end()); };
    add(check_vocabulary(g, vocabulary));
    if (report.ok())
    {
        // Inclusion is only meaningful on a well-formed graph.
        add(check_nesting(g, nesting));
    }
    for (const Finding& f : content)
    {
        findings.push_back({{"check", f.check}, {"message", f.message}, {"arc", f.arc}});
    }
    bool clean = findings.empty();
    out << json{{"file", path}, {"ok", clean}, {"findings", findings}}.dump(2) << "\n";
    return clean ? Exit::ok : Exit::invalid;
}

int cmd_query(const std::vector<std::string>& paths, const std::string& text, const std::string& out_path,
              std::ostream& out)
{
    ag::Corpus corpus;
    ag::Document result;
    for (const std::string& path : paths)
    {
        ag::Document d = ag::parse_xml(ag::api::read_file(path));
        corpus.add_graph(path, d.graph);
        for (const ag::Timeline& t : d.timelines)
        {
            if (std::find(result.timelines.begin(), result.timelines.end(), t) == result.timelines.end())
            {
                result.timelines.push_back(t);
            }
        }
        // The parent corpus the result was drawn from.
        result.metadata.emplace_back("source", path);
    }
    result.graph = ag::eval(corpus.merged(), text);
    emit(out_path.empty() ? "-" : out_path, ag::to_xml(result), out);
    return Exit::ok;
}

int cmd_diff(const std::string& a, const std::string& b, std::ostream& out)
{
    ag::Delta d = ag::api::diff(ag::api::load(a), ag::api::load(b));
    out << d.str();
    return Exit::ok;
}

int cmd_stats(const std::string& path, std::ostream& out)
{
    ag::Document document = ag::parse_xml(ag::api::read_file(path));
    const ag::AnnotationGraph& g = document.graph;
    json per_type = json::object();
    for (const ag::Arc& arc : g.arcs())
    {
        auto& slot = per_type[arc.label.type()];
        slot = slot.is_null() ? 1 : slot.get<int>() + 1;
    }
    std::set<std::string> timelines;
    for (const auto& [node, time] : g.times())
    {
        timelines.insert(time.timeline());
    }
    json j{{"file", path},
           {"nodes", g.nodes().size()},
           {"arcs", g.arcs().size()},
           {"arcs_per_type", per_type},
           {"components", ag::connected_components(g).size()},
           {"timed_nodes", g.times().size()},
           {"timelines", timelines},
           {"anchored", ag::is_anchored(g)},
           {"totally_anchored", ag::is_totally_anchored(g)}};
    out << j.dump(2) << "\n";
    return Exit::ok;
}

} // namespace

std::optional<std::string> namespace_from_environment()
{
    const char* value = std::getenv("AG_NAMESPACE");
    if (!value || !*value)
    {
        return std::nullopt;
    }
    return std::string(value);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& ns)
{
    CLI::App app{"Annotation graph toolkit", "agtool"};
    app.require_subcommand(1);

    ConvertConfig convert;
    auto* c = app.add_subcommand("convert", "Read a source format and write the interchange form");
    c->add_option("--format", convert.format, "Input format")
        ->required()
        ->check(CLI::IsMember({"timit", "partitur", "chat", "lacito", "callhome", "utf", "swb", "muc7", "agxml"}));
    c->add_option("inputs", convert.inputs, "Input files")->required();
    c->add_option("--out", convert.out, "Output file ('-' for stdout), or a directory for a batch");
    c->add_option("--timeline", convert.timeline, "Timeline id for all offsets");
    c->add_option("--timeline-unit", convert.unit, "Time unit")
        ->check(CLI::IsMember({"samples", "seconds", "milliseconds", "ordinal"}));
    c->add_option("--merge-gap", convert.merge_gap, "CallHome turn merge gap in seconds");
    c->add_option("--punct", convert.punct, "Punctuation policy")
        ->check(CLI::IsMember({"attach", "instant", "separate"}));

    std::string validate_path;
    std::string vocab;
    std::string rules;
    auto* v = app.add_subcommand("validate", "Check well-formedness and content of an interchange file");
    v->add_option("file", validate_path)->required();
    v->add_option("--vocab", vocab, "Vocabulary file ('TYPE: value ...' lines)");
    v->add_option("--rules", rules, "Nesting rules file ('INNER in OUTER' lines)");

    std::vector<std::string> query_paths;
    std::string query_text;
    std::string query_out;
    auto* q = app.add_subcommand("query", "Select a subgraph of one or more interchange files");
    q->add_option("query", query_text, "Query text")->required();
    q->add_option("files", query_paths, "Interchange files")->required();
    q->add_option("--out", query_out, "Output file ('-' for stdout)");

    std::string diff_a;
    std::string diff_b;
    auto* d = app.add_subcommand("diff", "Arc and time differences between two interchange files");
    d->add_option("before", diff_a)->required();
    d->add_option("after", diff_b)->required();

    std::string stats_path;
    auto* s = app.add_subcommand("stats", "Counts for an interchange file");
    s->add_option("file", stats_path)->required();

    std::vector<const char*> argv{"agtool"};
    for (const std::string& a : args)
    {
        argv.push_back(a.c_str());
    }
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::failure;
    }

    std::string file;
    try
    {
        if (c->parsed())
        {
            file = join(convert.inputs, ",");
            ag::formats::Arity arity = ag::formats::arity(ag::formats::parse_format(convert.format));
            bool batch = arity.max == 1 && convert.inputs.size() > 1;
            if (!batch && (convert.inputs.size() < arity.min || convert.inputs.size() > arity.max))
            {
                throw ag::Error(ag::ErrorCode::UnknownFormat,
                                convert.format + " takes " + std::to_string(arity.min) + " to " +
                                    std::to_string(arity.max) + " inputs",
                                convert.format);
            }
            return cmd_convert(convert, ns, out, err);
        }
        if (v->parsed())
        {
            file = validate_path;
            return cmd_validate(validate_path, vocab, rules, out);
        }
        if (q->parsed())
        {
            file = join(query_paths, ",");
            return cmd_query(query_paths, query_text, query_out, out);
        }
        if (d->parsed())
        {
            file = diff_a + "," + diff_b;
            return cmd_diff(diff_a, diff_b, out);
        }
        file = stats_path;
        return cmd_stats(stats_path, out);
    }
    catch (const ag::ValidationError& e)
    {
        json j = describe(e, file);
        j["violations"] = describe(e.report());
        err << j.dump() << "\n";
        return Exit::invalid;
    }
    catch (const ag::Error& e)
    {
        err << describe(e, file).dump() << "\n";
        return Exit::failure;
    }
}

} // namespace agtool
