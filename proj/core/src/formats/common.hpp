#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ag/builder.hpp"
#include "ag/error.hpp"
#include "ag/formats.hpp"

namespace ag::formats::detail
{

struct Line
{
    std::size_t number; // 1-based
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
std::string lowercase(std::string_view s);

[[noreturn]] void fail(ErrorCode code, const std::string& message, std::size_t line, std::string witness = {});

/// Parses an offset that must be a plain decimal.
Rational number_at(std::string_view text, std::size_t line, ErrorCode code = ErrorCode::MalformedLine);

bool is_punctuation(std::string_view token) noexcept;

/// Whitespace tokens; under PunctuationPolicy::attach a free-standing
/// punctuation token is glued onto the token before it.
std::vector<std::string> tokenize(std::string_view text, PunctuationPolicy policy);

/// Splits trailing punctuation from a token: "yahoo." -> {"yahoo", "."}.
/// An all-punctuation token comes back with an empty word part.
std::pair<std::string, std::string> split_trailing_punctuation(std::string_view token);

struct Tag
{
    std::string name; ///< lowercased, without '/'
    bool closing = false;
    std::map<std::string, std::string> attributes; ///< lowercased keys
    std::string raw;

    const std::string* attribute(const std::string& key) const;
};

/// Text or markup, in document order.
struct Piece
{
    bool is_tag = false;
    std::string text;
    Tag tag;
    std::size_t line = 1;
};

/// Permissive SGML tag scanner: no DTD, quoted attribute values may contain
/// '>'. Throws Error(UnbalancedTag) on an unterminated tag.
std::vector<Piece> scan_tags(std::string_view text);

/**
 * @brief Appends tokens to a chain of arcs in a GraphBuilder.
 *
 * @details
 * Punctuation is handled per ReaderOptions::punctuation. Instant arcs get the
 * time of the boundary they hang off when finish() is called, so boundaries
 * timed after the punctuation was seen are still honoured.
 */
class TokenChain
{
public:
    using Node = GraphBuilder::Node;

    TokenChain(GraphBuilder& builder, Node start, PunctuationPolicy policy, std::string word_type,
               std::string punct_type);

    Node current() const noexcept { return m_current; }
    void move_to(Node node) noexcept { m_current = node; }

    /// Adds a word token (splitting punctuation as configured). Returns the
    /// word arc's (source, target), or nullopt for pure punctuation.
    std::optional<std::pair<Node, Node>> token(std::string_view text);
    /// Adds an arc with an explicit label and advances.
    std::pair<Node, Node> arc(Label label);
    void punctuation(std::string_view mark);

    /// Copies boundary times onto instant nodes.
    void finish();

private:
    GraphBuilder& m_builder;
    Node m_current;
    PunctuationPolicy m_policy;
    std::string m_word_type;
    std::string m_punct_type;
    std::vector<std::pair<Node, Node>> m_instants;
};

TimeRef time_at(const ReaderOptions& options, std::string lexical);

/// Timeline for a reader whose natural unit (and rate) the options may override.
Timeline make_timeline(const ReaderOptions& options, TimeUnit natural_unit,
                       std::optional<Rational> natural_rate = std::nullopt);

} // namespace ag::formats::detail
