#include <expat.h>

#include <cctype>
#include <memory>
#include <optional>

#include "common.hpp"

namespace ag::formats
{

namespace
{

struct Word
{
    std::string form;
    std::string gloss;
    bool punctuation = false;
};

struct Translation
{
    std::string lang;
    std::string text;
};

struct Sentence
{
    std::string id;
    std::optional<std::string> start;
    std::optional<std::string> end;
    std::vector<Word> words;
    std::vector<Translation> translations;
    std::size_t line = 0;
};

/// Collects sentences from the SAX stream; the graph is built afterwards.
struct Collector
{
    XML_Parser parser = nullptr;
    std::vector<std::string> path;
    std::string text;
    std::vector<Sentence> sentences;
    Metadata metadata;
    std::optional<Error> error;

    std::size_t line() const { return static_cast<std::size_t>(XML_GetCurrentLineNumber(parser)); }

    const std::string& parent() const
    {
        static const std::string none;
        return path.size() >= 2 ? path[path.size() - 2] : none;
    }

    void start(const std::string& name, const char** attrs)
    {
        path.push_back(name);
        text.clear();
        auto attr = [&](const char* key) -> std::optional<std::string> {
            for (const char** a = attrs; *a; a += 2)
            {
                if (std::string_view(a[0]) == key)
                {
                    return std::string(a[1]);
                }
            }
            return std::nullopt;
        };
        if (name == "S")
        {
            Sentence s;
            s.id = attr("id").value_or("");
            s.line = line();
            sentences.push_back(std::move(s));
        }
        else if (name == "AUDIO" && !sentences.empty())
        {
            sentences.back().start = attr("start");
            sentences.back().end = attr("end");
        }
        else if (name == "SOUNDFILE")
        {
            if (auto href = attr("href"))
            {
                metadata.emplace_back("SOUNDFILE", *href);
            }
        }
        else if (name == "W" && !sentences.empty())
        {
            sentences.back().words.push_back({});
        }
        else if (name == "TRADUC" && !sentences.empty())
        {
            sentences.back().translations.push_back({attr("lang").value_or(""), ""});
        }
    }

    void end(const std::string& name)
    {
        std::string body(detail::trim(text));
        if (name == "TITLE")
        {
            metadata.emplace_back("TITLE", body);
        }
        else if (!sentences.empty())
        {
            Sentence& s = sentences.back();
            if (name == "FORM" && parent() == "W" && !s.words.empty())
            {
                s.words.back().form = body;
            }
            else if (name == "GLS" && parent() == "W" && !s.words.empty())
            {
                s.words.back().gloss = body;
            }
            else if (name == "PONCT")
            {
                s.words.push_back({body, "", true});
            }
            else if (name == "TRADUC" && !s.translations.empty())
            {
                s.translations.back().text = body;
            }
        }
        path.pop_back();
        text.clear();
    }
};

std::string translation_type(const ReaderOptions& options, const std::string& lang)
{
    if (auto it = options.type_names.find(lang); it != options.type_names.end())
    {
        return it->second;
    }
    if (lang == "Francais" || lang == "fr")
    {
        return "F";
    }
    if (lang == "Anglais" || lang == "en")
    {
        return "E";
    }
    if (lang.empty())
    {
        return "TR";
    }
    return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(lang.front()))));
}

} // namespace

ReadResult read_lacito(std::string_view xml_text, const ReaderOptions& options)
{
    Collector c;
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
    c.parser = parser.get();
    XML_SetUserData(parser.get(), &c);
    XML_SetElementHandler(
        parser.get(),
        [](void* data, const XML_Char* name, const XML_Char** attrs) {
            static_cast<Collector*>(data)->start(name, attrs);
        },
        [](void* data, const XML_Char* name) { static_cast<Collector*>(data)->end(name); });
    XML_SetCharacterDataHandler(parser.get(), [](void* data, const XML_Char* s, int len) {
        static_cast<Collector*>(data)->text.append(s, static_cast<std::size_t>(len));
    });
    if (XML_Parse(parser.get(), xml_text.data(), static_cast<int>(xml_text.size()), XML_TRUE) == XML_STATUS_ERROR)
    {
        detail::fail(ErrorCode::MalformedLine, XML_ErrorString(XML_GetErrorCode(parser.get())),
                     static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get())));
    }

    std::string word_type = options.type_for("W", "W");
    std::string gloss_type = options.type_for("G", "G");
    std::string punct_type = options.type_for("PONCT", "PUNCT");

    GraphBuilder builder(options.annotation_ns);
    for (const Sentence& s : c.sentences)
    {
        if (!s.start || !s.end)
        {
            detail::fail(ErrorCode::MissingAudioAnchor, "sentence '" + s.id + "' has no AUDIO start/end", s.line,
                         s.id);
        }
        TimeRef start = detail::time_at(options, *s.start);
        TimeRef end = detail::time_at(options, *s.end);
        if (end.offset() < start.offset())
        {
            detail::fail(ErrorCode::NonMonotonicTimes, "sentence '" + s.id + "' ends before it starts", s.line, s.id);
        }

        // Forms and glosses share the chain; punctuation follows the policy.
        std::vector<Word> items;
        for (const Word& w : s.words)
        {
            if (w.punctuation && options.punctuation == PunctuationPolicy::attach && !items.empty())
            {
                items.back().form += w.form;
            }
            else
            {
                items.push_back(w);
            }
        }

        GraphBuilder::Node first = builder.add_node(start);
        detail::TokenChain chain(builder, first, options.punctuation, word_type, punct_type);
        // Instants at the very end must hang off the final timed node, so the
        // last chain step is found before building.
        std::size_t last_step = items.size();
        for (std::size_t i = items.size(); i-- > 0;)
        {
            if (!items[i].punctuation || options.punctuation == PunctuationPolicy::separate)
            {
                last_step = i;
                break;
            }
        }
        for (std::size_t i = 0; i < items.size(); ++i)
        {
            const Word& w = items[i];
            if (w.punctuation && options.punctuation != PunctuationPolicy::attach)
            {
                chain.punctuation(w.form);
            }
            else
            {
                auto [from, to] = chain.arc(Label{word_type, w.form});
                if (!w.gloss.empty())
                {
                    builder.add_arc(from, Label{gloss_type, w.gloss}, to);
                }
            }
            if (i == last_step)
            {
                builder.set_time(chain.current(), end);
            }
        }
        if (chain.current() == first)
        {
            chain.move_to(builder.add_node(end));
        }
        chain.finish();
        GraphBuilder::Node last = chain.current();
        for (const Translation& t : s.translations)
        {
            builder.add_arc(first, Label{translation_type(options, t.lang), t.text}, last);
        }
    }

    Timeline timeline = detail::make_timeline(options, TimeUnit::seconds);
    for (const auto& [key, value] : c.metadata)
    {
        if (key == "SOUNDFILE")
        {
            timeline.signals.push_back(value);
        }
    }
    return {builder.build(), std::move(timeline), std::move(c.metadata)};
}

} // namespace ag::formats
