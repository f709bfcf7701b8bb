#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agtest
{

std::string fixture_path(std::string_view name)
{
    return std::string(AG_FIXTURE_DIR) + "/" + std::string(name);
}

std::string fixture(std::string_view name)
{
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("missing fixture " + fixture_path(name));
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ag::Arc arc(const std::string& source, std::vector<std::string> label, const std::string& target)
{
    return ag::Arc{ag::NodeId(source), ag::Label(std::move(label)), ag::NodeId(target)};
}

ag::TimeRef at(const std::string& lexical, const std::string& timeline)
{
    return ag::TimeRef::parse(timeline, lexical);
}

ag::AnnotationGraph timit_model()
{
    std::vector<ag::Arc> arcs{
        arc("0", {"P", "h#"}, "1"),  arc("1", {"P", "sh"}, "2"),   arc("2", {"P", "iy"}, "3"),
        arc("1", {"W", "she"}, "3"), arc("3", {"P", "hv"}, "4"),   arc("4", {"P", "ae"}, "5"),
        arc("5", {"P", "dcl"}, "6"), arc("3", {"W", "had"}, "6"),  arc("6", {"P", "y"}, "7"),
        arc("7", {"P", "axr"}, "8"), arc("6", {"W", "your"}, "8"),
    };
    const char* tau[] = {"0", "2360", "3270", "5200", "6160", "8720", "9680", "10173", "11077"};
    ag::TimeMap times;
    for (int i = 0; i < 9; ++i)
    {
        times.emplace(ag::NodeId(std::to_string(i)), at(tau[i]));
    }
    return ag::AnnotationGraph::build(arcs, times);
}

ag::formats::ReadResult read_fixture(std::string_view name)
{
    using namespace ag::formats;
    if (name == "timit")
        return read_timit(fixture("timit_fragment.wrd"), fixture("timit_fragment.phn"));
    if (name == "sa1")
        return read_timit(fixture("sa1.wrd"), fixture("sa1.phn"));
    if (name == "partitur")
        return read_partitur(fixture("partitur.par"));
    if (name == "chat")
        return read_chat(fixture("boys73.cha"));
    if (name == "lacito")
        return read_lacito(fixture("hayu.xml"));
    if (name == "callhome")
        return read_callhome(fixture("callhome.txt"));
    if (name == "utf")
        return read_utf(fixture("hub4.utf"));
    if (name == "swb")
        return read_swb(fixture("swb.wrd"), fixture("swb.pos"), fixture("swb.dff"), fixture("swb.mrg"));
    if (name == "muc7")
        return read_muc7(fixture("muc7.sgm"));
    throw std::invalid_argument("unknown fixture " + std::string(name));
}

std::vector<NamedGraph> fixture_graphs()
{
    std::vector<NamedGraph> out{{"timit_model", timit_model()}};
    for (const char* name : {"timit", "sa1", "partitur", "chat", "lacito", "callhome", "utf", "swb", "muc7"})
    {
        out.push_back({name, read_fixture(name).graph});
    }
    return out;
}

std::vector<ag::Arc> chain(const std::vector<std::string>& tokens)
{
    std::vector<ag::Arc> out;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        out.push_back(arc("b" + std::to_string(i), {"W", tokens[i]}, "b" + std::to_string(i + 1)));
    return out;
}

const std::vector<std::string> latin_words = {"quis", "multa", "gracilis", "te", "puer", "in", "rosa", "urget"};

// quis, gracilis -> puer; multa -> rosa; rosa -> in; te, puer, in -> urget.
const std::vector<std::pair<std::size_t, std::size_t>> latin_heads = {{0, 4}, {2, 4}, {1, 6}, {6, 5},
                                                                      {3, 7}, {4, 7}, {5, 7}};

ag::SyntaxTree latin_tree()
{
    using ag::SyntaxTree;
    auto leaf = [](std::size_t i) { return SyntaxTree::make_leaf(latin_words[i], i); };
    return SyntaxTree::make_node(
        "S", {SyntaxTree::make_node("NP", {leaf(0), leaf(2), leaf(4)}), SyntaxTree::make_node("NP", {leaf(3)}),
              SyntaxTree::make_node("PP", {leaf(5), SyntaxTree::make_node("NP", {leaf(1), leaf(6)})}), leaf(7)});
}

} // namespace agtest
