#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ag/algebra.hpp"
#include "ag/error.hpp"
#include "ag/interchange.hpp"
#include "ag/validate.hpp"
#include "fixtures.hpp"
#include "random.hpp"

using ag::NodeId;
using ag::QualifiedId;
using agtest::fixture;

namespace
{

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

ag::Error schema_error(const std::string& xml)
{
    try
    {
        ag::parse_xml(xml);
    }
    catch (const ag::Error& e)
    {
        return e;
    }
    throw std::runtime_error("accepted: " + xml);
}

} // namespace

TEST(Interchange, ListingParsesToModel)
{
    EXPECT_EQ(ag::from_xml(fixture("timit_listing.xml")), agtest::timit_model());
}

TEST(Interchange, ArcOrderIsInsignificant)
{
    auto lines = lines_of(fixture("timit_listing.xml"));
    ASSERT_GT(lines.size(), 2u);
    std::mt19937_64 rng(agtest::seed);
    for (int i = 0; i < 20; ++i)
    {
        std::shuffle(lines.begin() + 1, lines.end() - 1, rng);
        std::string xml;
        for (const std::string& l : lines)
            xml += l + "\n";
        EXPECT_EQ(ag::from_xml(xml), agtest::timit_model());
    }
}

TEST(Interchange, EmptyGraph)
{
    std::string xml = ag::to_xml(ag::AnnotationGraph());
    EXPECT_EQ(xml, "<annotation>\n</annotation>\n");
    EXPECT_TRUE(ag::from_xml(xml).empty());
    EXPECT_TRUE(ag::from_xml("<annotation/>").empty());
}

TEST(Interchange, CanonicalOrderFollowsTime)
{
    auto lines = lines_of(ag::to_xml(agtest::timit_model()));
    ASSERT_EQ(lines.size(), 13u);
    EXPECT_NE(lines[1].find("att_2=\"h#\""), std::string::npos);
    EXPECT_NE(lines[11].find("att_2=\"axr\""), std::string::npos);
}

TEST(Interchange, RoundTripEveryFixture)
{
    for (const auto& [name, g] : agtest::fixture_graphs())
    {
        std::string xml = ag::to_xml(g);
        ag::AnnotationGraph back = ag::from_xml(xml);
        EXPECT_EQ(back, g) << name;
        EXPECT_EQ(ag::to_xml(back), xml) << name;
    }
}

TEST(Interchange, DocumentBlocksRoundTrip)
{
    for (const char* name : {"timit", "utf", "muc7"})
    {
        auto r = agtest::read_fixture(name);
        ag::Document doc{r.graph, {r.timeline}, r.metadata};
        doc.metadata.emplace_back("source", std::string(name) + " <&> \"quoted\"");
        std::string xml = ag::to_xml(doc);
        EXPECT_EQ(ag::parse_xml(xml), doc) << name;
        EXPECT_EQ(ag::to_xml(ag::parse_xml(xml)), xml) << name;
    }
}

TEST(Interchange, LexicalFormsPreserved)
{
    const auto g = agtest::read_fixture("utf").graph;
    std::string xml = ag::to_xml(g);
    EXPECT_NE(xml.find("offset=\"2391.606000\""), std::string::npos);
    EXPECT_NE(xml.find("offset=\"2439.820312\""), std::string::npos);
    const ag::AnnotationGraph back = ag::from_xml(xml);
    for (const auto& [node, time] : back.times())
        EXPECT_EQ(time.lexical(), g.times().at(node).lexical());
}

TEST(Interchange, LabelFieldsEscapeAndExtend)
{
    auto g = ag::AnnotationGraph::build(
        {agtest::arc("a", {"W", "<&\"'>", "3", ""}, "b")}, {{NodeId("a"), agtest::at("1.50")}});
    std::string xml = ag::to_xml(g);
    EXPECT_NE(xml.find("att_3=\"3\" att_4=\"\""), std::string::npos);
    EXPECT_EQ(ag::from_xml(xml), g);
}

TEST(Interchange, SchemaViolations)
{
    EXPECT_EQ(schema_error("<graph/>").code(), ag::ErrorCode::SchemaViolation);
    ag::Error missing = schema_error("<annotation><arc><source id=\"0\"/><target id=\"1\"/></arc></annotation>");
    EXPECT_EQ(missing.code(), ag::ErrorCode::SchemaViolation);
    EXPECT_NE(missing.witness().find("arc"), std::string::npos);
    EXPECT_EQ(schema_error("<annotation><arc><source id=\"0\"/><label att_2=\"x\"/><target id=\"1\"/></arc>"
                           "</annotation>")
                  .code(),
              ag::ErrorCode::SchemaViolation);
    EXPECT_EQ(schema_error("<annotation><arc><source id=\"0\" offset=\"1\"/><label att_1=\"x\"/>"
                           "<target id=\"1\"/></arc><arc><source id=\"0\" offset=\"2\"/><label att_1=\"y\"/>"
                           "<target id=\"1\"/></arc></annotation>")
                  .code(),
              ag::ErrorCode::SchemaViolation);
    EXPECT_EQ(schema_error("<annotation><arc>").code(), ag::ErrorCode::SchemaViolation);
}

TEST(Interchange, InvalidGraphRejectedUnlessAsked)
{
    std::string xml = "<annotation>\n"
                      "  <arc><source id=\"0\" offset=\"5\"/><label att_1=\"W\"/><target id=\"1\" offset=\"2\"/></arc>\n"
                      "</annotation>\n";
    EXPECT_THROW(ag::parse_xml(xml), ag::ValidationError);
    ag::Document doc = ag::parse_xml(xml, false);
    EXPECT_FALSE(ag::validate(doc.graph).ok());
}

TEST(QualifiedIdTest, ParsePrint)
{
    QualifiedId q = QualifiedId::parse("http://host/~sb/timit-dr1-fjsp0#5");
    ASSERT_TRUE(q.authority.has_value());
    EXPECT_EQ(*q.authority, "http://host/~sb");
    EXPECT_EQ(q.annotation, "timit-dr1-fjsp0");
    EXPECT_EQ(q.local, "5");
    for (const char* s : {"http://host/~sb/timit-dr1-fjsp0#5", "timit-dr1-fjsp0#5", "5", "#5", "a/b#c#d", "x/#1"})
        EXPECT_EQ(QualifiedId::parse(s).str(), s) << s;
    EXPECT_FALSE(QualifiedId::parse("12").qualified());
}

TEST(Qualify, NodeAndOffset)
{
    auto g = ag::qualify(agtest::timit_model(), "http://host/~sb", "timit-dr1-fjsp0", "TIMIT86://train/dr1/fjsp0");
    NodeId five("http://host/~sb/timit-dr1-fjsp0#5");
    ASSERT_TRUE(g.contains(five));
    EXPECT_EQ(ag::offset_attribute(*g.time(five)), "TIMIT86://train/dr1/fjsp0#8720");
    EXPECT_EQ(g.arcs().size(), 11u);
    EXPECT_TRUE(ag::validate(g).ok());
}

TEST(Qualify, Idempotent)
{
    auto once = ag::qualify(agtest::timit_model(), "", "timit-dr1-fjsp0", "TIMIT86://train/dr1/fjsp0");
    EXPECT_EQ(ag::qualify(once, "", "timit-dr1-fjsp0", "TIMIT86://train/dr1/fjsp0"), once);
    EXPECT_EQ(ag::qualify(agtest::timit_model(), "", "", ""), agtest::timit_model());
}

TEST(Qualify, Conflicts)
{
    auto once = ag::qualify(agtest::timit_model(), "", "a", "t");
    try
    {
        ag::qualify(once, "", "b", "");
        FAIL();
    }
    catch (const ag::Error& e)
    {
        EXPECT_EQ(e.code(), ag::ErrorCode::ConflictingQualification);
    }
    EXPECT_THROW(ag::qualify(once, "", "", "u"), ag::Error);
}

TEST(Qualify, DistinctNamespacesUnionCleanly)
{
    auto a = ag::qualify(agtest::timit_model(), "", "first", "");
    auto b = ag::qualify(agtest::timit_model(), "", "second", "");
    auto u = ag::disjoint_union(a, b);
    EXPECT_EQ(u.arcs().size(), 22u);
    EXPECT_TRUE(ag::validate(u).ok());
    EXPECT_EQ(ag::connected_components(u).size(), 2u);
}

TEST(OffsetAttribute, RoundTrip)
{
    for (const char* s : {"8720", "TIMIT86://train/dr1/fjsp0#8720", "t#1.50", "-0.25", "1/3"})
        EXPECT_EQ(ag::offset_attribute(ag::parse_offset_attribute(s)), s) << s;
    EXPECT_THROW(ag::parse_offset_attribute("t#abc"), ag::Error);
}
