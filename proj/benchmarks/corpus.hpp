#pragma once

#include <string>
#include <vector>

#include "ag/graph.hpp"

namespace agbench
{

/**
 * @brief Synthetic phonetic corpus.
 * @details `utterances` disjoint chains of `words` W arcs, each spanning three
 * P arcs over shared boundaries. Every boundary is timed in samples.
 */
inline ag::AnnotationGraph phonetic_corpus(int utterances, int words)
{
    static const std::vector<std::string> lexicon{"she", "had", "your", "dark", "suit", "in", "greasy", "wash"};
    static const std::vector<std::string> phones{"sh", "iy", "hv", "ae", "dcl", "y", "axr", "s", "uw"};
    std::vector<ag::Arc> arcs;
    ag::TimeMap times;
    long sample = 0;
    for (int u = 0; u < utterances; ++u)
    {
        std::string prefix = "u" + std::to_string(u) + "#";
        int node = 0;
        auto id = [&](int k) { return ag::NodeId(prefix + std::to_string(k)); };
        for (int w = 0; w < words; ++w)
        {
            int start = node;
            for (int p = 0; p < 3; ++p, ++node)
            {
                times.emplace(id(node), ag::TimeRef::parse("", std::to_string(sample)));
                sample += 320 + 40 * ((u + w + p) % 7);
                arcs.push_back({id(node), ag::Label{"P", phones[(w * 3 + p) % phones.size()]}, id(node + 1)});
            }
            arcs.push_back({id(start), ag::Label{"W", lexicon[(u + w) % lexicon.size()]}, id(node)});
        }
        times.emplace(id(node), ag::TimeRef::parse("", std::to_string(sample)));
        sample += 1000;
    }
    return ag::AnnotationGraph::assemble(ag::ArcSet(arcs.begin(), arcs.end()), std::move(times));
}

} // namespace agbench
