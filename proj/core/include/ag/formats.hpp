#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ag/graph.hpp"
#include "ag/time.hpp"

namespace ag::formats
{

/// How punctuation tokens enter the graph.
enum class PunctuationPolicy
{
    attach,   ///< stays glued to the preceding word's content
    instant,  ///< own arc of zero extent hanging off the preceding boundary
    separate, ///< own arc taking its own step in the token chain
};

std::string_view to_string(PunctuationPolicy policy) noexcept;
std::optional<PunctuationPolicy> parse_punctuation_policy(std::string_view text) noexcept;

/// End offset of a Partitur MAU segment.
enum class MauEnd
{
    start_plus_duration_plus_one, ///< adjacent segments share a boundary
    start_plus_duration,
};

struct ReaderOptions
{
    /// Timeline all times are anchored on. The empty id yields unqualified
    /// offsets in the interchange form.
    std::string timeline_id;
    /// Overrides the reader's natural unit.
    std::optional<TimeUnit> unit;
    /// Samples per second for sample-based formats (TIMIT, Partitur).
    std::optional<Rational> sample_rate;
    /// Namespace for canonical node ids ("<ns>#<k>").
    std::string annotation_ns;
    /// CallHome: same-speaker stretches merge when the silence between them
    /// is at most this many seconds.
    Rational merge_gap{1};
    PunctuationPolicy punctuation = PunctuationPolicy::instant;
    /// Source tier (or language, for translations) to label type.
    std::map<std::string, std::string> type_names;
    MauEnd mau_end = MauEnd::start_plus_duration_plus_one;

    /// type_names[tier], or `fallback` when absent.
    std::string type_for(const std::string& tier, const std::string& fallback) const;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ReadResult
{
    AnnotationGraph graph;
    Timeline timeline;
    Metadata metadata;
};

/// "<start> <end> <label>" lines in integer samples, from a .wrd and a .phn
/// file. Boundaries are shared across the two files by offset.
ReadResult read_timit(std::string_view wrd_text, std::string_view phn_text, const ReaderOptions& options = {});

/// TIMIT files for the W and P tiers of a graph, ordered by start offset.
std::pair<std::string, std::string> write_timit(const AnnotationGraph& graph, const ReaderOptions& options = {});

/// BAS Partitur: KAN/ORT/TRL/MAU/DAS tiers.
ReadResult read_partitur(std::string_view text, const ReaderOptions& options = {});

/// CHAT transcripts: @ headers, *SPK utterances and %snd timing tiers.
ReadResult read_chat(std::string_view text, const ReaderOptions& options = {});

/// LACITO archive XML.
ReadResult read_lacito(std::string_view xml_text, const ReaderOptions& options = {});

/// LDC CallHome "start end SPK: text" stretches.
ReadResult read_callhome(std::string_view text, const ReaderOptions& options = {});

/// NIST UTF turns with time, overlap, enamex and contraction markup.
ReadResult read_utf(std::string_view sgml_text, const ReaderOptions& options = {});

/// Switchboard aligned words plus optional part-of-speech, disfluency and
/// Treebank streams (empty views are skipped).
ReadResult read_swb(std::string_view word_text, std::string_view pos_text = {}, std::string_view disfl_text = {},
                    std::string_view tree_text = {}, const ReaderOptions& options = {});

/// MUC-7 COREF markup; token positions form an ordinal timeline.
ReadResult read_muc7(std::string_view sgml_text, const ReaderOptions& options = {});

enum class Format
{
    timit,
    partitur,
    chat,
    lacito,
    callhome,
    utf,
    swb,
    muc7,
    agxml,
};

std::string_view to_string(Format format) noexcept;
/// Throws Error(UnknownFormat).
Format parse_format(std::string_view text);

/// Number of input files a format takes.
struct Arity
{
    std::size_t min;
    std::size_t max;
};
Arity arity(Format format) noexcept;

/// Dispatches to the reader for `format`. Not valid for Format::agxml.
/// Throws Error(UnknownFormat) on a wrong number of inputs.
ReadResult read(Format format, std::span<const std::string> inputs, const ReaderOptions& options = {});

} // namespace ag::formats
