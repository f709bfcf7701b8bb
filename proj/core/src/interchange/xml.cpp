#include <expat.h>

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>

#include "ag/error.hpp"
#include "ag/interchange.hpp"
#include "ag/validate.hpp"

namespace ag
{

namespace
{

void escape(std::string& out, std::string_view text)
{
    for (char c : text)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\n': out += "&#10;"; break;
        case '\r': out += "&#13;"; break;
        case '\t': out += "&#9;"; break;
        default: out += c;
        }
    }
}

void attribute(std::string& out, std::string_view name, std::string_view value)
{
    out += ' ';
    out += name;
    out += "=\"";
    escape(out, value);
    out += '"';
}

/// Orders digit runs numerically so "n2" sorts before "n10".
bool natural_less(std::string_view a, std::string_view b)
{
    std::size_t i = 0;
    std::size_t j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size())
    {
        if (digit(a[i]) && digit(b[j]))
        {
            std::size_t i2 = i;
            std::size_t j2 = j;
            while (i2 < a.size() && digit(a[i2])) ++i2;
            while (j2 < b.size() && digit(b[j2])) ++j2;
            std::string_view ra = a.substr(i, i2 - i);
            std::string_view rb = b.substr(j, j2 - j);
            auto strip = [](std::string_view s) {
                auto p = s.find_first_not_of('0');
                return p == std::string_view::npos ? std::string_view() : s.substr(p);
            };
            std::string_view na = strip(ra);
            std::string_view nb = strip(rb);
            if (na.size() != nb.size())
            {
                return na.size() < nb.size();
            }
            if (na != nb)
            {
                return na < nb;
            }
            if (ra.size() != rb.size())
            {
                return ra.size() < rb.size();
            }
            i = i2;
            j = j2;
            continue;
        }
        if (a[i] != b[j])
        {
            return a[i] < b[j];
        }
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

/// Sort key of a node: its own time, else the inherited lower bound.
struct Anchor
{
    const TimeRef* time = nullptr;
};

int compare_anchor(const Anchor& a, const Anchor& b)
{
    if (!a.time || !b.time)
    {
        return a.time ? -1 : (b.time ? 1 : 0);
    }
    if (a.time->timeline() != b.time->timeline())
    {
        return a.time->timeline() < b.time->timeline() ? -1 : 1;
    }
    if (a.time->offset() != b.time->offset())
    {
        return a.time->offset() < b.time->offset() ? -1 : 1;
    }
    return 0;
}

std::vector<const Arc*> canonical_order(const AnnotationGraph& graph)
{
    std::map<NodeId, NodeBounds> bounds;
    if (validate(graph).ok())
    {
        bounds = propagate_bounds(graph);
    }
    auto anchor = [&](const NodeId& node) {
        if (const TimeRef* t = graph.time(node))
        {
            return Anchor{t};
        }
        auto it = bounds.find(node);
        return Anchor{it != bounds.end() && it->second.lower ? &*it->second.lower : nullptr};
    };
    std::vector<std::pair<Anchor, const Arc*>> keyed;
    for (const Arc& arc : graph.arcs())
    {
        keyed.emplace_back(anchor(arc.source), &arc);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (int c = compare_anchor(x.first, y.first); c != 0)
        {
            return c < 0;
        }
        const Arc& a = *x.second;
        const Arc& b = *y.second;
        if (a.source != b.source)
        {
            return natural_less(a.source.str(), b.source.str());
        }
        if (a.target != b.target)
        {
            return natural_less(a.target.str(), b.target.str());
        }
        return a.label < b.label;
    });
    std::vector<const Arc*> out;
    out.reserve(keyed.size());
    for (const auto& [key, arc] : keyed)
    {
        out.push_back(arc);
    }
    return out;
}

void endpoint(std::string& out, std::string_view element, const AnnotationGraph& graph, const NodeId& node)
{
    out += '<';
    out += element;
    attribute(out, "id", node.str());
    if (const TimeRef* t = graph.time(node))
    {
        attribute(out, "offset", offset_attribute(*t));
    }
    out += "/>";
}

} // namespace

std::string to_xml(const AnnotationGraph& graph)
{
    return to_xml(Document{graph, {}, {}});
}

std::string to_xml(const Document& document)
{
    std::string out = "<annotation>\n";
    for (const Timeline& timeline : document.timelines)
    {
        out += "  <timeline";
        attribute(out, "id", timeline.id);
        attribute(out, "unit", to_string(timeline.unit));
        if (timeline.rate)
        {
            attribute(out, "rate", format_decimal(*timeline.rate));
        }
        if (timeline.signals.empty())
        {
            out += "/>\n";
            continue;
        }
        out += '>';
        for (const std::string& signal : timeline.signals)
        {
            out += "<signal";
            attribute(out, "href", signal);
            out += "/>";
        }
        out += "</timeline>\n";
    }
    for (const auto& [name, value] : document.metadata)
    {
        out += "  <metadata";
        attribute(out, "name", name);
        attribute(out, "value", value);
        out += "/>\n";
    }
    const AnnotationGraph& graph = document.graph;
    for (const Arc* arc : canonical_order(graph))
    {
        out += "  <arc>";
        endpoint(out, "source", graph, arc->source);
        out += "<label";
        for (std::size_t i = 0; i < arc->label.size(); ++i)
        {
            attribute(out, "att_" + std::to_string(i + 1), arc->label.fields()[i]);
        }
        out += "/>";
        endpoint(out, "target", graph, arc->target);
        out += "</arc>\n";
    }
    out += "</annotation>\n";
    return out;
}

namespace
{

using Attributes = std::vector<std::pair<std::string, std::string>>;

/// Builds a Document from SAX events, checking the element structure.
class DocumentReader
{
public:
    explicit DocumentReader(XML_Parser parser) : m_parser(parser) {}

    void start(std::string name, const char** raw)
    {
        if (m_error)
        {
            return;
        }
        Attributes attrs;
        for (const char** a = raw; *a; a += 2)
        {
            attrs.emplace_back(a[0], a[1]);
        }
        std::string parent = m_stack.empty() ? "" : m_stack.back().name;
        std::size_t index = m_stack.empty() ? 1 : ++m_stack.back().counts[name];
        std::string path = (m_stack.empty() ? "" : m_stack.back().path) + "/" + name;
        if (!m_stack.empty())
        {
            path += "[" + std::to_string(index) + "]";
        }
        m_stack.push_back({name, path, {}, 0});

        try
        {
            open(name, parent, attrs, path);
        }
        catch (const Error& e)
        {
            m_error = e;
            XML_StopParser(m_parser, XML_FALSE);
        }
    }

    void end()
    {
        if (m_error)
        {
            return;
        }
        try
        {
            close();
        }
        catch (const Error& e)
        {
            m_error = e;
            XML_StopParser(m_parser, XML_FALSE);
        }
        m_stack.pop_back();
    }

    void text(std::string_view s)
    {
        if (m_error)
        {
            return;
        }
        if (std::any_of(s.begin(), s.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); }))
        {
            m_error = violation("unexpected text content", m_stack.empty() ? "/" : m_stack.back().path);
            XML_StopParser(m_parser, XML_FALSE);
        }
    }

    const std::optional<Error>& error() const { return m_error; }

    Document finish(bool validate_graph)
    {
        if (!m_seen_root)
        {
            throw violation("missing <annotation> root", "/");
        }
        Document doc;
        doc.timelines = std::move(m_timelines);
        doc.metadata = std::move(m_metadata);
        doc.graph = validate_graph ? AnnotationGraph::build(std::move(m_arcs), std::move(m_times))
                                   : AnnotationGraph::assemble(std::move(m_arcs), std::move(m_times));
        return doc;
    }

private:
    struct Frame
    {
        std::string name;
        std::string path;
        std::map<std::string, std::size_t> counts;
        std::size_t children;
    };

    struct PendingEnd
    {
        std::optional<NodeId> id;
        std::optional<TimeRef> time;
    };

    Error violation(const std::string& message, const std::string& path) const
    {
        return Error(ErrorCode::SchemaViolation, message + " at " + path, path,
                     static_cast<std::size_t>(XML_GetCurrentLineNumber(m_parser)));
    }

    static const std::string* find(const Attributes& attrs, std::string_view key)
    {
        for (const auto& [k, v] : attrs)
        {
            if (k == key)
            {
                return &v;
            }
        }
        return nullptr;
    }

    void only(const Attributes& attrs, std::initializer_list<std::string_view> allowed, const std::string& path)
    {
        for (const auto& [k, v] : attrs)
        {
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            {
                throw violation("unexpected attribute '" + k + "'", path);
            }
        }
    }

    const std::string& required(const Attributes& attrs, std::string_view key, const std::string& path)
    {
        const std::string* v = find(attrs, key);
        if (!v)
        {
            throw violation("missing attribute '" + std::string(key) + "'", path);
        }
        return *v;
    }

    void open(const std::string& name, const std::string& parent, const Attributes& attrs, const std::string& path)
    {
        if (parent.empty())
        {
            if (name != "annotation")
            {
                throw violation("root element must be <annotation>", path);
            }
            only(attrs, {}, path);
            m_seen_root = true;
            return;
        }
        if (parent == "annotation")
        {
            if (name == "arc")
            {
                only(attrs, {}, path);
                m_source = {};
                m_target = {};
                m_label.reset();
                return;
            }
            if (name == "timeline")
            {
                only(attrs, {"id", "unit", "rate"}, path);
                Timeline t;
                t.id = required(attrs, "id", path);
                auto unit = parse_time_unit(required(attrs, "unit", path));
                if (!unit)
                {
                    throw violation("unknown unit", path);
                }
                t.unit = *unit;
                if (const std::string* rate = find(attrs, "rate"))
                {
                    t.rate = parse_decimal(*rate);
                }
                t.check();
                m_timelines.push_back(std::move(t));
                return;
            }
            if (name == "metadata")
            {
                only(attrs, {"name", "value"}, path);
                m_metadata.emplace_back(required(attrs, "name", path), required(attrs, "value", path));
                return;
            }
            throw violation("unexpected element <" + name + ">", path);
        }
        if (parent == "timeline" && name == "signal")
        {
            only(attrs, {"href"}, path);
            m_timelines.back().signals.push_back(required(attrs, "href", path));
            return;
        }
        if (parent == "arc")
        {
            Frame& arc = m_stack[m_stack.size() - 2];
            std::size_t position = arc.children++;
            static constexpr std::string_view order[] = {"source", "label", "target"};
            if (position >= 3 || name != order[position])
            {
                throw violation("<arc> must contain <source>, <label>, <target> in that order", path);
            }
            if (name == "label")
            {
                std::vector<std::string> fields(attrs.size());
                for (const auto& [k, v] : attrs)
                {
                    std::size_t k_index = 0;
                    bool numeric = k.size() > 4 && k.starts_with("att_") &&
                                   std::all_of(k.begin() + 4, k.end(),
                                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
                    if (numeric && k[4] != '0')
                    {
                        k_index = std::stoul(k.substr(4));
                    }
                    if (k_index == 0 || k_index > fields.size())
                    {
                        throw violation("label attributes must be att_1 .. att_n without gaps", path);
                    }
                    fields[k_index - 1] = v;
                }
                if (fields.empty())
                {
                    throw violation("label needs att_1", path);
                }
                m_label.emplace(std::move(fields));
                return;
            }
            only(attrs, {"id", "offset"}, path);
            PendingEnd& end = name == "source" ? m_source : m_target;
            const std::string& id = required(attrs, "id", path);
            if (id.empty())
            {
                throw violation("empty node id", path);
            }
            end.id.emplace(id);
            if (const std::string* offset = find(attrs, "offset"))
            {
                try
                {
                    end.time = parse_offset_attribute(*offset);
                }
                catch (const Error& e)
                {
                    throw violation(e.what(), path);
                }
                auto [it, inserted] = m_times.emplace(*end.id, *end.time);
                if (!inserted && !(it->second == *end.time))
                {
                    throw violation("node '" + id + "' has conflicting offsets", path);
                }
            }
            return;
        }
        throw violation("unexpected element <" + name + ">", path);
    }

    void close()
    {
        const Frame& frame = m_stack.back();
        if (frame.name == "arc")
        {
            if (frame.children != 3)
            {
                throw violation("<arc> must contain <source>, <label>, <target>", frame.path);
            }
            m_arcs.insert(Arc{*m_source.id, *m_label, *m_target.id});
        }
    }

    XML_Parser m_parser;
    std::vector<Frame> m_stack;
    std::optional<Error> m_error;
    bool m_seen_root = false;

    ArcSet m_arcs;
    TimeMap m_times;
    std::vector<Timeline> m_timelines;
    std::vector<std::pair<std::string, std::string>> m_metadata;

    PendingEnd m_source;
    PendingEnd m_target;
    std::optional<Label> m_label;
};

} // namespace

Document parse_xml(std::string_view xml, bool validate_graph)
{
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
    DocumentReader reader(parser.get());
    XML_SetUserData(parser.get(), &reader);
    XML_SetElementHandler(
        parser.get(),
        [](void* data, const XML_Char* name, const XML_Char** attrs) {
            static_cast<DocumentReader*>(data)->start(name, attrs);
        },
        [](void* data, const XML_Char*) { static_cast<DocumentReader*>(data)->end(); });
    XML_SetCharacterDataHandler(parser.get(), [](void* data, const XML_Char* s, int len) {
        static_cast<DocumentReader*>(data)->text(std::string_view(s, static_cast<std::size_t>(len)));
    });
    XML_Status status = XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE);
    if (reader.error())
    {
        throw *reader.error();
    }
    if (status == XML_STATUS_ERROR)
    {
        auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get()));
        throw Error(ErrorCode::SchemaViolation,
                    std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())), "/", line);
    }
    return reader.finish(validate_graph);
}

AnnotationGraph from_xml(std::string_view xml)
{
    return parse_xml(xml).graph;
}

} // namespace ag
