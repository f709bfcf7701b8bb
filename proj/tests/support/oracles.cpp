#include "oracles.hpp"

#include <functional>
#include <numeric>
#include <set>

namespace agtest::oracle
{

IndexedGraph::IndexedGraph(const ag::AnnotationGraph& g)
    : nodes(g.nodes().begin(), g.nodes().end())
    , arcs(g.arcs().begin(), g.arcs().end())
{
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        index.emplace(nodes[i], i);
        const ag::TimeRef* t = g.time(nodes[i]);
        time.push_back(t ? std::optional<ag::TimeRef>(*t) : std::nullopt);
    }
    for (const ag::Arc& a : arcs)
    {
        source.push_back(index.at(a.source));
        target.push_back(index.at(a.target));
    }
}

Matrix floyd_warshall(Matrix m)
{
    std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m[i][k] && m[k][j])
                    m[i][j] = true;
    return m;
}

std::vector<std::vector<std::size_t>> all_paths(const IndexedGraph& g, std::size_t from, std::size_t to,
                                                std::size_t limit, bool* cyclic)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> path{from};
    std::vector<bool> on_path(g.nodes.size(), false);
    on_path[from] = true;
    std::function<void(std::size_t)> walk = [&](std::size_t n) {
        for (std::size_t a = 0; a < g.arcs.size() && out.size() < limit; ++a)
        {
            if (g.source[a] != n)
                continue;
            std::size_t next = g.target[a];
            if (next == to)
            {
                path.push_back(next);
                out.push_back(path);
                path.pop_back();
            }
            if (on_path[next])
            {
                if (cyclic)
                    *cyclic = true;
                continue;
            }
            on_path[next] = true;
            path.push_back(next);
            walk(next);
            path.pop_back();
            on_path[next] = false;
        }
    };
    walk(from);
    return out;
}

bool path_exists(const IndexedGraph& g, std::size_t from, std::size_t to)
{
    std::vector<bool> seen(g.nodes.size(), false);
    std::vector<std::size_t> stack{from};
    while (!stack.empty())
    {
        std::size_t n = stack.back();
        stack.pop_back();
        for (std::size_t a = 0; a < g.arcs.size(); ++a)
        {
            if (g.source[a] != n || seen[g.target[a]])
                continue;
            if (g.target[a] == to)
                return true;
            seen[g.target[a]] = true;
            stack.push_back(g.target[a]);
        }
    }
    return false;
}

Matrix reachability(const IndexedGraph& g)
{
    Matrix m(g.nodes.size(), std::vector<bool>(g.nodes.size(), false));
    for (std::size_t a = 0; a < g.arcs.size(); ++a)
        m[g.source[a]][g.target[a]] = true;
    return floyd_warshall(m);
}

namespace
{

bool time_le(const std::optional<ag::TimeRef>& a, const std::optional<ag::TimeRef>& b, bool strict)
{
    if (!a || !b || a->timeline() != b->timeline())
        return false;
    return strict ? a->offset() < b->offset() : a->offset() <= b->offset();
}

} // namespace

Matrix precedence(const IndexedGraph& g)
{
    Matrix m = reachability(g);
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (std::size_t j = 0; j < g.nodes.size(); ++j)
            if (time_le(g.time[i], g.time[j], true))
                m[i][j] = true;
    return floyd_warshall(m);
}

Matrix inclusion(const IndexedGraph& g, bool strict)
{
    Matrix reach = reachability(g);
    auto s_le = [&](std::size_t a, std::size_t b) { return reach[a][b] || (!strict && a == b); };
    auto t_le = [&](std::size_t a, std::size_t b) { return time_le(g.time[a], g.time[b], strict); };
    std::size_t m = g.arcs.size();
    Matrix base(m, std::vector<bool>(m, false));
    for (std::size_t p = 0; p < m; ++p)
    {
        for (std::size_t q = 0; q < m; ++q)
        {
            bool s = s_le(g.source[p], g.source[q]) && s_le(g.target[q], g.target[p]);
            bool t = t_le(g.source[p], g.source[q]) && t_le(g.target[q], g.target[p]);
            base[p][q] = s || t;
        }
    }
    return floyd_warshall(base);
}

std::optional<ag::TimeRef> glb(const IndexedGraph& g, std::size_t arc)
{
    std::optional<ag::TimeRef> best;
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
    {
        if (g.time[n] && path_exists(g, n, g.source[arc]) && (!best || best->offset() < g.time[n]->offset()))
            best = g.time[n];
    }
    return best;
}

std::optional<ag::TimeRef> lub(const IndexedGraph& g, std::size_t arc)
{
    std::optional<ag::TimeRef> best;
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
    {
        if (g.time[n] && path_exists(g, g.target[arc], n) && (!best || g.time[n]->offset() < best->offset()))
            best = g.time[n];
    }
    return best;
}

bool well_formed(const ag::AnnotationGraph& graph)
{
    IndexedGraph g(graph);
    std::size_t n = g.nodes.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            bool cyclic = false;
            auto paths = all_paths(g, i, j, 1'000'000, &cyclic);
            if (cyclic || (i == j && !paths.empty()))
                return false;
            if (paths.empty() || !g.time[i] || !g.time[j])
                continue;
            if (g.time[i]->timeline() != g.time[j]->timeline() || g.time[j]->offset() < g.time[i]->offset())
                return false;
        }
    }
    UnionFind uf(n);
    for (std::size_t a = 0; a < g.arcs.size(); ++a)
        uf.unite(g.source[a], g.target[a]);
    std::map<std::size_t, std::set<std::string>> timelines;
    for (std::size_t i = 0; i < n; ++i)
        if (g.time[i])
            timelines[uf.find(i)].insert(g.time[i]->timeline());
    for (const auto& [root, names] : timelines)
        if (names.size() > 1)
            return false;
    return true;
}

UnionFind::UnionFind(std::size_t n) : m_parent(n)
{
    std::iota(m_parent.begin(), m_parent.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x)
{
    while (m_parent[x] != x)
    {
        m_parent[x] = m_parent[m_parent[x]];
        x = m_parent[x];
    }
    return x;
}

void UnionFind::unite(std::size_t a, std::size_t b)
{
    m_parent[find(a)] = find(b);
}

std::size_t component_count(const ag::AnnotationGraph& graph)
{
    IndexedGraph g(graph);
    UnionFind uf(g.nodes.size());
    for (std::size_t a = 0; a < g.arcs.size(); ++a)
        uf.unite(g.source[a], g.target[a]);
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        roots.insert(uf.find(i));
    return roots.size();
}

} // namespace agtest::oracle
