#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "ag/algebra.hpp"
#include "ag/error.hpp"
#include "ag/formats.hpp"
#include "ag/relations.hpp"
#include "ag/validate.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using ag::NodeId;
using agtest::fixture;
using agtest::read_fixture;
namespace fm = ag::formats;

namespace
{

std::vector<ag::Arc> arcs_of(const ag::AnnotationGraph& g, const std::string& type)
{
    std::vector<ag::Arc> out;
    for (const ag::Arc& a : g.arcs())
        if (a.label.type() == type)
            out.push_back(a);
    return out;
}

ag::Arc find_arc(const ag::AnnotationGraph& g, const std::string& type, const std::string& content)
{
    for (const ag::Arc& a : g.arcs())
        if (a.label.type() == type && a.label.content() == content)
            return a;
    throw std::runtime_error("no arc " + type + "/" + content);
}

std::string lexical(const ag::AnnotationGraph& g, const NodeId& n)
{
    const ag::TimeRef* t = g.time(n);
    return t ? t->lexical() : "-";
}

/// [start, end] of an arc as lexical forms, "-" for untimed ends.
std::pair<std::string, std::string> span(const ag::AnnotationGraph& g, const ag::Arc& a)
{
    return {lexical(g, a.source), lexical(g, a.target)};
}

using Span = std::pair<std::string, std::string>;

ag::ErrorCode code_of(auto&& fn)
{
    try
    {
        fn();
    }
    catch (const ag::Error& e)
    {
        return e.code();
    }
    throw std::runtime_error("no error raised");
}

} // namespace

TEST(Timit, FragmentStructure)
{
    auto r = read_fixture("timit");
    const auto& g = r.graph;
    EXPECT_EQ(g.arcs().size(), 11u);
    EXPECT_EQ(g.nodes().size(), 9u);
    EXPECT_EQ(arcs_of(g, "W").size(), 3u);
    EXPECT_EQ(arcs_of(g, "P").size(), 8u);
    EXPECT_EQ(span(g, find_arc(g, "W", "she")), Span("2360", "5200"));
    EXPECT_EQ(span(g, find_arc(g, "P", "h#")), Span("0", "2360"));
    EXPECT_EQ(lexical(g, NodeId("8")), "11077");
    // The raw phone file puts the sh/iy boundary at 3720.
    EXPECT_EQ(lexical(g, NodeId("2")), "3720");
    EXPECT_EQ(r.timeline.unit, ag::TimeUnit::samples);
}

TEST(Timit, WordBoundariesSharedWithPhones)
{
    const auto g = read_fixture("timit").graph;
    ag::Arc had = find_arc(g, "W", "had");
    ag::Arc hv = find_arc(g, "P", "hv");
    ag::Arc dcl = find_arc(g, "P", "dcl");
    EXPECT_EQ(had.source, hv.source);
    EXPECT_EQ(had.target, dcl.target);
}

TEST(Timit, Sa1SharesWordBoundaries)
{
    const auto g = read_fixture("sa1").graph;
    EXPECT_EQ(arcs_of(g, "W").size(), 11u);
    std::size_t at_9680 = 0;
    for (const auto& [n, t] : g.times())
        if (t.lexical() == "9680")
            ++at_9680;
    EXPECT_EQ(at_9680, 1u);
    // Nothing covers the pause between "wash" (36150) and "water" (36720).
    EXPECT_EQ(ag::connected_components(g).size(), 2u);
}

TEST(Timit, EmptyInputGivesEmptyGraph)
{
    auto r = fm::read_timit("", "");
    EXPECT_TRUE(r.graph.empty());
}

TEST(Timit, Errors)
{
    EXPECT_EQ(code_of([] { fm::read_timit("0 10 a\nx 20 b\n", ""); }), ag::ErrorCode::MalformedLine);
    EXPECT_EQ(code_of([] { fm::read_timit("0 10\n", ""); }), ag::ErrorCode::MalformedLine);
    EXPECT_EQ(code_of([] { fm::read_timit("20 10 a\n", ""); }), ag::ErrorCode::NonMonotonicTimes);
}

TEST(Timit, ErrorsCarryLineNumbers)
{
    try
    {
        fm::read_timit("0 10 a\n10 20 b\n30 bad c\n", "");
        FAIL();
    }
    catch (const ag::Error& e)
    {
        ASSERT_TRUE(e.line().has_value());
        EXPECT_EQ(*e.line(), 3u);
    }
}

TEST(Timit, WriterRoundTrip)
{
    const auto r = read_fixture("timit");
    auto [wrd, phn] = fm::write_timit(r.graph);
    EXPECT_EQ(wrd, fixture("timit_fragment.wrd"));
    EXPECT_EQ(fm::read_timit(wrd, phn).graph, r.graph);
}

TEST(Partitur, MauSegmentsShareBoundaries)
{
    const auto g = read_fixture("partitur").graph;
    ag::Arc j = find_arc(g, "M", "j");
    EXPECT_EQ(span(g, j), Span("4160", "5280"));
    EXPECT_EQ(j.label.field(3), "0");
    ag::Arc a = find_arc(g, "M", "a:");
    EXPECT_EQ(j.target, a.source);
    ag::Arc nib = find_arc(g, "M", "<nib>");
    EXPECT_EQ(nib.label.size(), 2u);
    EXPECT_EQ(span(g, nib), Span("12480", "12960"));
}

TEST(Partitur, WordsAndDialogueActs)
{
    const auto g = read_fixture("partitur").graph;
    EXPECT_EQ(arcs_of(g, "O").size(), 7u);
    auto d = arcs_of(g, "D");
    ASSERT_EQ(d.size(), 2u);
    ag::Arc thank = find_arc(g, "D", "@(THANK_INIT BA)");
    ag::Arc ja = find_arc(g, "O", "ja");
    ag::Arc dank = find_arc(g, "O", "Dank");
    EXPECT_EQ(thank.source, ja.source);
    EXPECT_EQ(thank.target, dank.target);
    ag::Arc feedback = find_arc(g, "D", "@(FEEDBACK_ACKNOWLEDGEMENT BA)");
    EXPECT_EQ(feedback.source, find_arc(g, "O", "das").source);
    EXPECT_EQ(feedback.target, find_arc(g, "O", "nett").target);
    ag::RelationContext ctx(g);
    EXPECT_TRUE(ctx.includes(thank, find_arc(g, "O", "sch\"onen")));
}

TEST(Partitur, MauEndConvention)
{
    fm::ReaderOptions options;
    options.mau_end = fm::MauEnd::start_plus_duration;
    const auto g = fm::read_partitur(fixture("partitur.par"), options).graph;
    EXPECT_EQ(span(g, find_arc(g, "M", "j")), Span("4160", "5279"));
}

TEST(Partitur, Errors)
{
    EXPECT_EQ(code_of([] { fm::read_partitur("KAN: 0 a\nORT: 0 a\nMAU: 0 9 3 x\n"); }), ag::ErrorCode::UnknownAnchor);
    EXPECT_EQ(code_of([] { fm::read_partitur("KAN: 0 a\nORT: 0 a\nMAU: 0 9 0 x\nMAU: 5 9 0 y\n"); }),
              ag::ErrorCode::OverlappingMAUWithinAnchor);
}

TEST(Chat, UtterancesAreComponents)
{
    const auto g = read_fixture("chat").graph;
    EXPECT_EQ(ag::connected_components(g).size(), 4u);
    auto speakers = arcs_of(g, "speaker");
    ASSERT_EQ(speakers.size(), 4u);
    ag::Arc ros = find_arc(g, "speaker", "ROS");
    EXPECT_EQ(span(g, ros), Span("7349", "8338"));
    ag::Arc yahoo = find_arc(g, "W", "yahoo");
    EXPECT_EQ(yahoo.source, ros.source);
    ag::RelationContext ctx(g);
    ag::Arc bathroom = find_arc(g, "W", "bathroom");
    std::size_t covering = 0;
    for (const ag::Arc& s : speakers)
        covering += ctx.includes(s, bathroom) ? 1 : 0;
    EXPECT_EQ(covering, 1u);
}

TEST(Chat, UtteranceWithoutSoundIsUnanchored)
{
    const std::string text = "@Begin\n*ROS:\tyahoo .\n@End\n";
    const auto g = fm::read_chat(text).graph;
    EXPECT_FALSE(g.empty());
    EXPECT_TRUE(g.times().empty());
}

TEST(Chat, OrphanDependentTier)
{
    EXPECT_EQ(code_of([] { fm::read_chat("@Begin\n%snd:\t\"x\" 0 10\n@End\n"); }),
              ag::ErrorCode::OrphanDependentTier);
}

TEST(Lacito, SentenceAnchorsAndTiers)
{
    const auto g = read_fixture("lacito").graph;
    ag::Arc nakpu = find_arc(g, "W", "nakpu");
    EXPECT_EQ(lexical(g, nakpu.source), "2.3656");
    auto f = arcs_of(g, "F");
    auto e = arcs_of(g, "E");
    ASSERT_EQ(f.size(), 1u);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(span(g, f[0]), Span("2.3656", "7.9256"));
    EXPECT_EQ(f[0].source, e[0].source);
    EXPECT_EQ(f[0].target, e[0].target);
    EXPECT_EQ(arcs_of(g, "W").size(), arcs_of(g, "G").size());
    ag::RelationContext ctx(g);
    for (const ag::Arc& w : arcs_of(g, "W"))
        EXPECT_TRUE(ctx.includes(f[0], w)) << w.str();
}

TEST(Lacito, MissingAudio)
{
    const std::string xml = "<TEXT><S id=\"s1\"><TRANSCR><W><FORM>a</FORM></W></TRANSCR></S></TEXT>";
    EXPECT_EQ(code_of([&] { fm::read_lacito(xml); }), ag::ErrorCode::MissingAudioAnchor);
}

TEST(CallHome, SameSpeakerStretchesMerge)
{
    const auto g = read_fixture("callhome").graph;
    // Two merged turns for A, six separate turns for B.
    EXPECT_EQ(ag::connected_components(g).size(), 8u);
    std::map<std::string, int> turns;
    for (const ag::Arc& s : arcs_of(g, "speaker"))
        ++turns[s.label.content()];
    EXPECT_EQ(turns["A"], 2);
    EXPECT_EQ(turns["B"], 6);
    // Interior stretch boundaries survive inside the merged turn.
    std::set<std::string> timed;
    for (const auto& [n, t] : g.times())
        timed.insert(t.lexical());
    EXPECT_TRUE(timed.contains("970.21"));
    EXPECT_TRUE(timed.contains("970.35"));
}

TEST(CallHome, OverlappingTurnsStayApart)
{
    const auto g = read_fixture("callhome").graph;
    ag::Arc he = [&] {
        for (const ag::Arc& a : g.arcs())
            if (a.label.content() == "He" && lexical(g, a.source) == "995.21")
                return a;
        throw std::runtime_error("no He at 995.21");
    }();
    ag::Arc whatever = find_arc(g, "W", "Whatever's");
    auto components = ag::connected_components(g);
    auto component_of = [&](const ag::Arc& a) {
        return std::find_if(components.begin(), components.end(),
                            [&](const ag::ArcSet& c) { return c.contains(a); }) - components.begin();
    };
    EXPECT_NE(component_of(he), component_of(whatever));
    // B starts before the stretch holding A's "He" ends.
    EXPECT_EQ(lexical(g, whatever.source), "996.51");
    EXPECT_LT(g.time(whatever.source)->offset(), ag::parse_decimal("996.59"));
}

TEST(CallHome, MergeGapOption)
{
    fm::ReaderOptions options;
    options.merge_gap = 0;
    const auto g = fm::read_callhome(fixture("callhome.txt"), options).graph;
    EXPECT_GT(ag::connected_components(g).size(), 8u);
}

TEST(CallHome, MalformedStretch)
{
    EXPECT_EQ(code_of([] { fm::read_callhome("1.0 2.0 A: hi\n3.0 A no colon\n"); }),
              ag::ErrorCode::MalformedStretch);
    EXPECT_EQ(code_of([] { fm::read_callhome("3.0 2.0 A: backwards\n"); }), ag::ErrorCode::MalformedStretch);
}

TEST(Utf, TurnsAndOverlap)
{
    const auto g = read_fixture("utf").graph;
    EXPECT_EQ(ag::connected_components(g).size(), 2u);
    ag::Arc roger = find_arc(g, "speaker", "Roger_Hedgecock");
    ag::Arc gloria = find_arc(g, "speaker", "Gloria_Allred");
    EXPECT_EQ(span(g, roger), Span("2348.811875", "2391.606000"));
    EXPECT_EQ(lexical(g, gloria.source), "2391.299625");
    // The overlap starts inside Roger's turn and its end is shared as a time.
    ag::RelationContext ctx(g);
    EXPECT_TRUE(ctx.t_precedes(roger.source, gloria.source));
    EXPECT_TRUE(ctx.t_precedes(gloria.source, roger.target));
}

TEST(Utf, ContractionsAndNamedEntities)
{
    const auto g = read_fixture("utf").graph;
    ag::Arc l = find_arc(g, "L", "you_have");
    ag::Arc w = find_arc(g, "W", "you've");
    EXPECT_EQ(l.source, w.source);
    EXPECT_EQ(l.target, w.target);
    ag::Arc org = find_arc(g, "EN", "ORGANIZATION");
    ag::Arc congress = find_arc(g, "W", "congress");
    EXPECT_EQ(org.source, congress.source);
    EXPECT_EQ(org.target, congress.target);
}

TEST(Utf, UnbalancedTag)
{
    EXPECT_EQ(code_of([] { fm::read_utf("<turn speaker=a startTime=1 endTime=2>\nhello <b_enamex type=X>x\n</turn>\n"); }),
              ag::ErrorCode::UnbalancedTag);
}

TEST(Swb, WordsAndPartOfSpeech)
{
    const auto g = read_fixture("swb").graph;
    EXPECT_EQ(arcs_of(g, "W").size(), 14u);
    ag::Arc metric = find_arc(g, "W", "Metric");
    EXPECT_EQ(span(g, metric), Span("21.86", "22.12"));
    ag::Arc pos = find_arc(g, "Pos", "metric");
    EXPECT_EQ(pos.label.field(3), "JJ");
    EXPECT_EQ(pos.source, metric.source);
    EXPECT_EQ(pos.target, metric.target);
}

TEST(Swb, SubwordTokenSplitsWord)
{
    const auto g = read_fixture("swb").graph;
    ag::Arc ones = find_arc(g, "W", "one's");
    ag::Arc bes = find_arc(g, "Pos", "'s");
    EXPECT_EQ(bes.target, ones.target);
    EXPECT_EQ(g.time(bes.source), nullptr);
    ag::RelationContext ctx(g);
    EXPECT_TRUE(ctx.includes(ones, bes));
}

TEST(Swb, DisfluencyAnnotations)
{
    const auto g = read_fixture("swb").graph;
    EXPECT_EQ(span(g, find_arc(g, "DISF", "reparandum")), Span("22.38", "23.18"));
    EXPECT_EQ(span(g, find_arc(g, "DISF", "repair")), Span("23.18", "24.80"));
    EXPECT_EQ(span(g, find_arc(g, "DISF", "F")), Span("23.88", "24.02"));
}

TEST(Swb, TreebankConstituents)
{
    const auto g = read_fixture("swb").graph;
    std::multiset<std::tuple<std::string, std::string, std::string>> expected = {
        {"S", "21.86", "26.10"},       {"NP-TPC", "21.86", "22.38"}, {"S-TPC-1", "22.38", "25.20"},
        {"EDITED", "22.38", "23.18"},  {"RM", "22.38", "22.38"},     {"S", "22.38", "23.18"},
        {"NP-SBJ", "22.38", "-"},      {"VP", "-", "23.18"},         {"ADJP-PRD-UNF", "22.86", "23.18"},
        {"IP", "23.18", "23.18"},      {"INTJ", "23.88", "24.02"},   {"NP-SBJ", "24.02", "24.50"},
        {"VP", "24.52", "25.20"},      {"RS", "24.80", "24.80"},     {"NP", "24.80", "24.86"},
        {"ADVP", "24.86", "25.20"},    {"NP-SBJ", "25.20", "25.20"}, {"VP", "25.66", "26.10"},
        {"SBAR", "25.88", "26.10"},    {"S", "26.10", "26.10"},
    };
    std::multiset<std::tuple<std::string, std::string, std::string>> actual;
    for (const ag::Arc& t : arcs_of(g, "T"))
        actual.insert({t.label.content(), lexical(g, t.source), lexical(g, t.target)});
    EXPECT_EQ(actual, expected);
}

TEST(Swb, AlignmentFailure)
{
    EXPECT_EQ(code_of([] { fm::read_swb("B 1.00 0.20 hello\n", "[ goodbye/UH ]\n"); }),
              ag::ErrorCode::AlignmentFailure);
}

TEST(Muc7, ClassesMatchUnionFind)
{
    const std::string text = fixture("muc7.sgm");
    // Independent partition straight from the ID/REF attributes.
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::string, std::string>> refs;
    std::regex tag(R"re(<COREF ([^>]*)>)re");
    std::regex id_attr(R"re(\bID="(\d+)")re");
    std::regex ref_attr(R"re(\bREF="(\d+)")re");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), tag); it != std::sregex_iterator(); ++it)
    {
        std::string attrs = (*it)[1].str();
        std::smatch id;
        std::smatch ref;
        ASSERT_TRUE(std::regex_search(attrs, id, id_attr));
        index.emplace(id[1].str(), index.size());
        if (std::regex_search(attrs, ref, ref_attr))
            refs.emplace_back(id[1].str(), ref[1].str());
    }
    agtest::oracle::UnionFind uf(index.size());
    for (const auto& [id, ref] : refs)
        uf.unite(index.at(id), index.at(ref));
    std::map<std::size_t, std::set<std::string>> oracle_classes;
    for (const auto& [id, i] : index)
        oracle_classes[uf.find(i)].insert(id);
    std::set<std::set<std::string>> expected;
    for (auto& [root, ids] : oracle_classes)
        expected.insert(ids);

    const auto g = read_fixture("muc7").graph;
    auto classes = ag::equivalence_classes(g, 3);
    std::set<std::set<std::string>> actual;
    for (const auto& [cls, arcs] : classes.classes)
    {
        std::set<std::string> ids;
        for (const ag::Arc& a : arcs)
            ids.insert(std::string(*a.label.field(4)));
        actual.insert(ids);
    }
    EXPECT_EQ(actual, expected);
    EXPECT_EQ(actual.size(), 7u);
    EXPECT_EQ(g.arcs().size(), index.size());
}

TEST(Muc7, MentionsOnOrdinalTimeline)
{
    auto r = read_fixture("muc7");
    EXPECT_EQ(r.timeline.unit, ag::TimeUnit::ordinal);
    ag::Arc woman = find_arc(r.graph, "coref", "woman");
    EXPECT_EQ(span(r.graph, woman), Span("0", "2"));
    auto classes = ag::equivalence_classes(r.graph, 3);
    ag::Arc she = find_arc(r.graph, "coref", "She");
    EXPECT_TRUE(ag::linked(classes, woman).contains(she));
}

TEST(Muc7, DanglingRef)
{
    EXPECT_EQ(code_of([] { fm::read_muc7("<COREF ID=\"1\" REF=\"7\">x</COREF>"); }), ag::ErrorCode::DanglingRef);
}

TEST(Readers, EveryFixtureIsWellFormed)
{
    for (const auto& [name, g] : agtest::fixture_graphs())
    {
        EXPECT_TRUE(ag::validate(g).ok()) << name;
        EXPECT_TRUE(agtest::oracle::well_formed(g)) << name;
    }
}

TEST(Readers, Deterministic)
{
    for (const char* name : {"timit", "sa1", "partitur", "chat", "lacito", "callhome", "utf", "swb", "muc7"})
        EXPECT_EQ(read_fixture(name).graph, read_fixture(name).graph) << name;
}

TEST(Readers, NamespaceQualifiesNodeIds)
{
    fm::ReaderOptions options;
    options.annotation_ns = "fjsp0";
    const auto g = fm::read_timit(fixture("timit_fragment.wrd"), fixture("timit_fragment.phn"), options).graph;
    EXPECT_TRUE(g.contains(NodeId("fjsp0#5")));
}

TEST(Readers, Dispatch)
{
    std::vector<std::string> inputs = {fixture("timit_fragment.wrd"), fixture("timit_fragment.phn")};
    EXPECT_EQ(fm::read(fm::Format::timit, inputs).graph, read_fixture("timit").graph);
    std::vector<std::string> one = {fixture("timit_fragment.wrd")};
    EXPECT_EQ(code_of([&] { fm::read(fm::Format::timit, one); }), ag::ErrorCode::UnknownFormat);
    EXPECT_EQ(code_of([] { fm::parse_format("praat"); }), ag::ErrorCode::UnknownFormat);
    EXPECT_EQ(fm::parse_format("callhome"), fm::Format::callhome);
}
