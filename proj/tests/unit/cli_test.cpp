#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ag/error.hpp"
#include "ag/interchange.hpp"
#include "agtool/checks.hpp"
#include "agtool/cli.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct Result
{
    int status;
    std::string out;
    std::string err;
};

Result run_tool(std::vector<std::string> args, std::optional<std::string> ns = std::nullopt)
{
    std::ostringstream out;
    std::ostringstream err;
    int status = agtool::run(args, out, err, ns);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        m_dir = fs::temp_directory_path() /
                ("ag_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(m_dir);
        fs::create_directories(m_dir);
    }
    void TearDown() override { fs::remove_all(m_dir); }

    std::string path(const std::string& name) const { return (m_dir / name).string(); }

    std::string timit_xml()
    {
        std::string p = path("timit.ag.xml");
        spit(p, ag::to_xml(agtest::timit_model()));
        return p;
    }

    fs::path m_dir;
};

} // namespace

TEST_F(CliTest, ConvertTimitToStdout)
{
    Result r = run_tool({"convert", "--format", "timit", agtest::fixture_path("timit_fragment.wrd"),
                       agtest::fixture_path("timit_fragment.phn"), "--out", "-"});
    EXPECT_EQ(r.status, agtool::Exit::ok) << r.err;
    EXPECT_EQ(ag::from_xml(r.out), agtest::read_fixture("timit").graph);
    EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, ConvertIsDeterministic)
{
    std::vector<std::string> args = {"convert", "--format", "swb", agtest::fixture_path("swb.wrd"),
                                     agtest::fixture_path("swb.pos"), agtest::fixture_path("swb.dff"),
                                     agtest::fixture_path("swb.mrg"), "--out", "-"};
    EXPECT_EQ(run_tool(args).out, run_tool(args).out);
}

TEST_F(CliTest, ConvertDefaultOutputPath)
{
    fs::copy(agtest::fixture_path("muc7.sgm"), m_dir / "muc7.sgm");
    Result r = run_tool({"convert", "--format", "muc7", path("muc7.sgm")});
    ASSERT_EQ(r.status, agtool::Exit::ok) << r.err;
    EXPECT_EQ(ag::from_xml(slurp(m_dir / "muc7.ag.xml")), agtest::read_fixture("muc7").graph);
}

TEST_F(CliTest, ConvertQualifiesFromNamespace)
{
    Result r = run_tool({"convert", "--format", "timit", agtest::fixture_path("timit_fragment.wrd"),
                       agtest::fixture_path("timit_fragment.phn"), "--out", "-"},
                      "http://host/~sb/timit-dr1-fjsp0");
    ASSERT_EQ(r.status, agtool::Exit::ok) << r.err;
    EXPECT_NE(r.out.find("id=\"http://host/~sb/timit-dr1-fjsp0#5\""), std::string::npos);
}

TEST_F(CliTest, ConvertOptions)
{
    Result merged = run_tool({"convert", "--format", "callhome", agtest::fixture_path("callhome.txt"), "--out", "-"});
    Result apart = run_tool({"convert", "--format", "callhome", agtest::fixture_path("callhome.txt"), "--out", "-",
                           "--merge-gap", "0", "--timeline", "ch", "--punct", "separate"});
    ASSERT_EQ(apart.status, agtool::Exit::ok) << apart.err;
    EXPECT_NE(merged.out, apart.out);
    EXPECT_NE(apart.out.find("offset=\"ch#962.68\""), std::string::npos);
    EXPECT_EQ(run_tool({"convert", "--format", "callhome", agtest::fixture_path("callhome.txt"), "--punct", "drop"}).status,
              agtool::Exit::failure);
}

TEST_F(CliTest, ConvertBatch)
{
    fs::create_directories(m_dir / "in");
    fs::create_directories(m_dir / "out");
    spit(m_dir / "in" / "a.txt", "1.0 2.0 A: hello there.\n");
    spit(m_dir / "in" / "b.txt", "1.0 2.0 B: bye.\n");
    spit(m_dir / "in" / "c.txt", "1.0 2.0 B: fine\n5.0 B no colon\n");
    Result r = run_tool({"convert", "--format", "callhome", path("in/a.txt"), path("in/b.txt"), path("in/c.txt"),
                       "--out", path("out")});
    EXPECT_EQ(r.status, agtool::Exit::failure);
    EXPECT_TRUE(fs::exists(m_dir / "out" / "a.ag.xml"));
    EXPECT_TRUE(fs::exists(m_dir / "out" / "b.ag.xml"));
    EXPECT_FALSE(fs::exists(m_dir / "out" / "c.ag.xml"));
    json diag = json::parse(r.err);
    EXPECT_EQ(diag["error"], "MalformedStretch");
    EXPECT_EQ(diag["line"], 2);
    EXPECT_NE(diag["file"].get<std::string>().find("c.txt"), std::string::npos);
}

TEST_F(CliTest, ConvertUsageErrors)
{
    EXPECT_EQ(run_tool({"convert", agtest::fixture_path("muc7.sgm")}).status, agtool::Exit::failure);
    EXPECT_EQ(run_tool({"convert", "--format", "praat", agtest::fixture_path("muc7.sgm")}).status,
              agtool::Exit::failure);
    Result arity = run_tool({"convert", "--format", "timit", agtest::fixture_path("timit_fragment.wrd")});
    EXPECT_EQ(arity.status, agtool::Exit::failure);
    EXPECT_EQ(json::parse(arity.err)["error"], "UnknownFormat");
    Result missing = run_tool({"convert", "--format", "muc7", path("absent.sgm"), "--out", "-"});
    EXPECT_EQ(missing.status, agtool::Exit::failure);
    EXPECT_EQ(json::parse(missing.err)["error"], "IoError");
    EXPECT_EQ(run_tool({}).status, agtool::Exit::failure);
}

TEST_F(CliTest, InvalidInputGraphExitsTwo)
{
    spit(m_dir / "reversed.ag.xml",
         "<annotation>\n"
         "  <arc><source id=\"0\" offset=\"9\"/><label att_1=\"W\" att_2=\"x\"/><target id=\"1\" offset=\"1\"/></arc>\n"
         "</annotation>\n");
    Result r = run_tool({"stats", path("reversed.ag.xml")});
    EXPECT_EQ(r.status, agtool::Exit::invalid);
    json diag = json::parse(r.err);
    EXPECT_EQ(diag["violations"][0]["code"], "ArcTimeReversed");
    EXPECT_EQ(diag["violations"][0]["witness"], json::array({"<0, W/x, 1>"}));
}

TEST_F(CliTest, ValidateCleanFile)
{
    Result r = run_tool({"validate", timit_xml()});
    EXPECT_EQ(r.status, agtool::Exit::ok);
    json report = json::parse(r.out);
    EXPECT_TRUE(report["ok"].get<bool>());
    EXPECT_TRUE(report["findings"].empty());
}

TEST_F(CliTest, ValidateReportsWellFormedness)
{
    spit(m_dir / "cycle.ag.xml", "<annotation>\n"
                                 "  <arc><source id=\"a\"/><label att_1=\"W\" att_2=\"x\"/><target id=\"b\"/></arc>\n"
                                 "  <arc><source id=\"b\"/><label att_1=\"W\" att_2=\"y\"/><target id=\"a\"/></arc>\n"
                                 "</annotation>\n");
    Result r = run_tool({"validate", path("cycle.ag.xml")});
    EXPECT_EQ(r.status, agtool::Exit::invalid);
    json report = json::parse(r.out);
    EXPECT_FALSE(report["ok"].get<bool>());
    EXPECT_EQ(report["findings"][0]["code"], "CycleFound");
}

TEST_F(CliTest, ValidateContentChecksNameTheArc)
{
    spit(m_dir / "vocab.txt", "# phones of the fragment\nP: sh iy hv ae dcl y axr h#\nW: she had your\n");
    spit(m_dir / "rules.txt", "P in W\n");
    Result r = run_tool({"validate", timit_xml(), "--vocab", path("vocab.txt"), "--rules", path("rules.txt")});
    EXPECT_EQ(r.status, agtool::Exit::invalid);
    json report = json::parse(r.out);
    ASSERT_EQ(report["findings"].size(), 1u);
    EXPECT_EQ(report["findings"][0]["check"], "nesting");
    EXPECT_EQ(report["findings"][0]["arc"], "<0, P/h#, 1>");

    spit(m_dir / "vocab2.txt", "W: she had\n");
    Result v = run_tool({"validate", timit_xml(), "--vocab", path("vocab2.txt")});
    EXPECT_EQ(v.status, agtool::Exit::invalid);
    json findings = json::parse(v.out)["findings"];
    ASSERT_EQ(findings.size(), 1u);
    EXPECT_EQ(findings[0]["check"], "vocabulary");
    EXPECT_EQ(findings[0]["arc"], "<6, W/your, 8>");
}

TEST_F(CliTest, ValidateBadConfigIsUsageError)
{
    spit(m_dir / "rules.txt", "P inside W\n");
    Result r = run_tool({"validate", timit_xml(), "--rules", path("rules.txt")});
    EXPECT_EQ(r.status, agtool::Exit::failure);
    json diag = json::parse(r.err);
    EXPECT_EQ(diag["error"], "MalformedLine");
    EXPECT_EQ(diag["line"], 1);
}

TEST_F(CliTest, QueryAcrossFiles)
{
    std::string a = timit_xml();
    spit(m_dir / "other.ag.xml", ag::to_xml(ag::qualify(agtest::timit_model(), "", "other", "")));
    Result one = run_tool({"query", "type=W", a});
    ASSERT_EQ(one.status, agtool::Exit::ok) << one.err;
    ag::Document doc = ag::parse_xml(one.out);
    EXPECT_EQ(doc.graph.arcs().size(), 3u);
    ASSERT_EQ(doc.metadata.size(), 1u);
    EXPECT_EQ(doc.metadata[0].second, a);

    Result two = run_tool({"query", "type=W", a, path("other.ag.xml")});
    ASSERT_EQ(two.status, agtool::Exit::ok) << two.err;
    EXPECT_EQ(ag::from_xml(two.out).arcs().size(), 6u);

    Result bad = run_tool({"query", "type=W and", a});
    EXPECT_EQ(bad.status, agtool::Exit::failure);
    EXPECT_EQ(json::parse(bad.err)["error"], "QuerySyntax");
}

TEST_F(CliTest, QueryRejectsCollidingFiles)
{
    std::string a = timit_xml();
    fs::copy(a, m_dir / "copy.ag.xml");
    Result r = run_tool({"query", "type=W", a, path("copy.ag.xml")});
    EXPECT_EQ(r.status, agtool::Exit::failure);
    json diag = json::parse(r.err);
    EXPECT_EQ(diag["error"], "NodeIdCollision");
    EXPECT_EQ(diag["witness"], "0");
    EXPECT_EQ(json::parse(run_tool({"query", "type=W", a, a}).err)["error"], "NodeIdCollision");
}

TEST_F(CliTest, Diff)
{
    std::string a = timit_xml();
    Result same = run_tool({"diff", a, a});
    EXPECT_EQ(same.status, agtool::Exit::ok);
    EXPECT_EQ(same.out, "");

    std::string text = slurp(a);
    auto pos = text.find("att_2=\"had\"");
    text.replace(pos, 11, "att_2=\"has\"");
    spit(m_dir / "edited.ag.xml", text);
    Result d = run_tool({"diff", a, path("edited.ag.xml")});
    EXPECT_EQ(d.out, "- <3, W/had, 6>\n+ <3, W/has, 6>\n");
}

TEST_F(CliTest, Stats)
{
    Result r = run_tool({"stats", timit_xml()});
    ASSERT_EQ(r.status, agtool::Exit::ok);
    json s = json::parse(r.out);
    EXPECT_EQ(s["nodes"], 9);
    EXPECT_EQ(s["arcs"], 11);
    EXPECT_EQ(s["arcs_per_type"]["P"], 8);
    EXPECT_EQ(s["components"], 1);
    EXPECT_EQ(s["timed_nodes"], 9);
    EXPECT_TRUE(s["totally_anchored"].get<bool>());
}

TEST(Checks, VocabularyAndRulesParsing)
{
    agtool::Vocabulary v = agtool::parse_vocabulary("# comment\n\nP: h# sh\nW: a b\n");
    EXPECT_EQ(v.at("P"), (std::set<std::string>{"h#", "sh"}));
    auto rules = agtool::parse_rules("P in W\n\nW in S\n");
    ASSERT_EQ(rules.size(), 2u);
    EXPECT_EQ(rules[1].inner, "W");
    EXPECT_EQ(rules[1].outer, "S");
    EXPECT_THROW(agtool::parse_vocabulary("P h#\n"), ag::Error);
}

TEST(Checks, Balance)
{
    auto g = ag::AnnotationGraph::build({agtest::arc("0", {"W", "(open"}, "1"), agtest::arc("1", {"W", "[ok]"}, "2"),
                                         agtest::arc("2", {"W", "\"half"}, "3")});
    auto findings = agtool::check_balance(g);
    ASSERT_EQ(findings.size(), 2u);
    for (const auto& f : findings)
        EXPECT_EQ(f.check, "balance");
}
