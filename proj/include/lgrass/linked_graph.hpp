#pragma once

#include "lgrass/tree.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lgrass {

struct NoPathError : MathCheckError {
    using MathCheckError::MathCheckError;
};

constexpr size_t kDefaultSearchCap = 1000000;

namespace detail {

// Breadth-first search over multidegree moves; returns the per-vertex move
// counts of a shortest move sequence from `from` to `to`, where a move at
// tree vertex v adds `moves[v]`.
inline std::vector<int> move_search(const std::vector<Multidegree>& moves,
                                    const Multidegree& from, const Multidegree& to,
                                    size_t cap) {
    int n = int(moves.size());
    std::map<Multidegree, std::pair<Multidegree, int>> parent; // state -> (prev, move)
    std::deque<Multidegree> queue;
    parent.emplace(from, std::make_pair(Multidegree{}, -1));
    queue.push_back(from);
    while (!queue.empty()) {
        Multidegree cur = queue.front();
        queue.pop_front();
        if (cur == to) {
            std::vector<int> counts(n, 0);
            while (true) {
                auto& [prev, mv] = parent.at(cur);
                if (mv < 0) break;
                ++counts[mv];
                cur = prev;
            }
            return counts;
        }
        for (int v = 0; v < n; ++v) {
            Multidegree next = md_add(cur, moves[v]);
            if (parent.count(next)) continue;
            if (parent.size() >= cap)
                throw BoundedSearchError("move search exceeded the state cap");
            parent.emplace(next, std::make_pair(cur, v));
            queue.push_back(next);
        }
    }
    throw NoPathError("target multidegree unreachable by moves");
}

} // namespace detail

// Minimal number of moves taking w to w', where a move at v subtracts
// valence(v) at v and adds 1 at each neighbor.
inline long distance(const TreeDegreeData& data, const Multidegree& w,
                     const Multidegree& wp, size_t cap = kDefaultSearchCap) {
    data.require_hd(w);
    data.require_hd(wp);
    std::vector<Multidegree> moves;
    for (int v = 0; v < data.tree.size(); ++v)
        moves.push_back(twist_multidegree(data.tree, v));
    auto counts = detail::move_search(moves, w, wp, cap);
    return std::accumulate(counts.begin(), counts.end(), 0L);
}

// The vertex multiset (sorted) of a minimal move sequence from w to w'.
inline std::vector<int> twist_sequence(const TreeDegreeData& data, const Multidegree& w,
                                       const Multidegree& wp,
                                       size_t cap = kDefaultSearchCap) {
    data.require_hd(w);
    data.require_hd(wp);
    std::vector<Multidegree> moves;
    for (int v = 0; v < data.tree.size(); ++v)
        moves.push_back(twist_multidegree(data.tree, v));
    auto counts = detail::move_search(moves, w, wp, cap);
    std::vector<int> seq;
    for (int v = 0; v < int(counts.size()); ++v)
        seq.insert(seq.end(), counts[v], v);
    return seq;
}

// d((w+w')/2, m), computed on doubled coordinates so that half-integral
// midpoints are handled exactly.
inline long midpoint_distance(const TreeDegreeData& data, const Multidegree& w,
                              const Multidegree& wp, const Multidegree& m,
                              size_t cap = kDefaultSearchCap) {
    data.require_hd(w);
    data.require_hd(wp);
    data.require_hd(m);
    Multidegree sum = md_add(w, wp);
    for (long x : sum)
        if (x % 2 != 0)
            throw ValidationError("midpoint " + md_str(sum) +
                                  "/2 differs from an integral point by a half-integral "
                                  "vector; its move distance is undefined");
    std::vector<Multidegree> moves;
    for (int v = 0; v < data.tree.size(); ++v)
        moves.push_back(md_scale(2, twist_multidegree(data.tree, v)));
    auto counts = detail::move_search(moves, sum, md_scale(2, m), cap);
    return std::accumulate(counts.begin(), counts.end(), 0L);
}

struct LinkedEdge {
    int tail = 0;
    int head = 0;
    int label = 0; // tree vertex index
};

struct LinkedGraph {
    TreeDegreeData data;
    std::vector<Multidegree> vertices; // lexicographically sorted
    std::vector<LinkedEdge> edges;     // sorted by (tail, label)
    std::vector<std::vector<int>> out; // vertex -> outgoing edge indices
    std::vector<std::vector<int>> in;  // vertex -> incoming edge indices

    int size() const { return int(vertices.size()); }

    int find_vertex(const Multidegree& w) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
        if (it == vertices.end() || *it != w) return -1;
        return int(it - vertices.begin());
    }

    int vertex_index(const Multidegree& w) const {
        int i = find_vertex(w);
        if (i < 0)
            throw ValidationError("multidegree " + md_str(w) + " is not a graph vertex");
        return i;
    }
};

// Enumerates the multidegree vertex set and its twist edges. Each non-root
// tree vertex u bounds its subtree coordinate sum to an interval of width
// 2b; these intervals encode exactly the per-edge component inequalities,
// so the product enumeration below is exhaustive.
inline LinkedGraph build_linked_graph(const TreeDegreeData& data) {
    data.validate();
    const TreeGraph& tree = data.tree;
    int n = tree.size();

    std::vector<int> order{0}, parent(n, -1);
    for (size_t k = 0; k < order.size(); ++k)
        for (int u : tree.adjacency[order[k]])
            if (u != parent[order[k]]) {
                parent[u] = order[k];
                order.push_back(u);
            }

    std::vector<long> sub_size(n, 1), sub_dsum(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        int v = order[i];
        sub_dsum[v] += data.d_v[v];
        if (parent[v] >= 0) {
            sub_size[parent[v]] += sub_size[v];
            sub_dsum[parent[v]] += sub_dsum[v];
        }
    }

    std::vector<Multidegree> found;
    std::vector<long> sub_sum(n, 0);
    // Chooses subtree sums for order[idx..n-1] (all non-root), then the root
    // entry is forced by the total.
    auto recurse = [&](auto&& self, int idx) -> void {
        if (idx == 0) {
            Multidegree w(n, 0);
            sub_sum[order[0]] = data.d;
            for (int v = 0; v < n; ++v) {
                long children = 0;
                for (int u : tree.adjacency[v])
                    if (parent[u] == v) children += sub_sum[u];
                w[v] = sub_sum[v] - children;
                if (((w[v] - data.d_v[v]) % 2 + 2) % 2 != 0) return;
            }
            found.push_back(w);
            return;
        }
        int v = order[idx];
        long lo = sub_dsum[v] - 2 * data.b * sub_size[v];
        long hi = sub_dsum[v] - 2 * data.b * (sub_size[v] - 1);
        for (long s = lo; s <= hi; ++s) {
            sub_sum[v] = s;
            self(self, idx - 1);
        }
    };
    recurse(recurse, n - 1);

    LinkedGraph g;
    g.data = data;
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    g.vertices = std::move(found);

    for (int i = 0; i < g.size(); ++i)
        for (int v = 0; v < n; ++v) {
            Multidegree w = md_add(g.vertices[i], md_scale(2, twist_multidegree(tree, v)));
            int j = g.find_vertex(w);
            if (j < 0 || j == i) continue;
            g.edges.push_back({i, j, v});
        }
    g.out.assign(g.size(), {});
    g.in.assign(g.size(), {});
    for (int e = 0; e < int(g.edges.size()); ++e) {
        g.out[g.edges[e].tail].push_back(e);
        g.in[g.edges[e].head].push_back(e);
    }
    return g;
}

struct DirectedPath {
    int tail = 0;               // vertex index in G; the path start
    std::vector<int> edges;     // edge indices in G, in traversal order

    int length() const { return int(edges.size()); }

    int head(const LinkedGraph& g) const {
        return edges.empty() ? tail : g.edges[edges.back()].head;
    }

    std::vector<int> labels(const LinkedGraph& g) const {
        std::vector<int> ls;
        for (int e : edges) ls.push_back(g.edges[e].label);
        std::sort(ls.begin(), ls.end());
        return ls;
    }

    void validate(const LinkedGraph& g) const {
        int at = tail;
        for (int e : edges) {
            if (e < 0 || e >= int(g.edges.size()))
                throw ValidationError("path edge index out of range");
            if (g.edges[e].tail != at)
                throw ValidationError("path edges do not compose");
            at = g.edges[e].head;
        }
    }
};

inline std::optional<long> graph_distance(const LinkedGraph& g, int from, int to) {
    std::vector<long> dist(g.size(), -1);
    dist[from] = 0;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == to) return dist[v];
        for (int e : g.out[v]) {
            int u = g.edges[e].head;
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return std::nullopt;
}

inline long graph_diameter(const LinkedGraph& g) {
    long best = 0;
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            if (auto d = graph_distance(g, i, j)) best = std::max(best, *d);
    return best;
}

inline DirectedPath minimal_path(const LinkedGraph& g, int from, int to) {
    std::vector<int> via(g.size(), -2); // incoming edge on a shortest path
    via[from] = -1;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == to) break;
        for (int e : g.out[v]) {
            int u = g.edges[e].head;
            if (via[u] == -2) {
                via[u] = e;
                queue.push_back(u);
            }
        }
    }
    if (via[to] == -2)
        throw NoPathError("no directed path from " + md_str(g.vertices[from]) + " to " +
                          md_str(g.vertices[to]));
    DirectedPath p;
    p.tail = from;
    for (int v = to; via[v] >= 0; v = g.edges[via[v]].tail) p.edges.push_back(via[v]);
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
}

// All directed paths of length <= maxlen, including the empty path at each
// vertex.
inline std::vector<DirectedPath> enumerate_paths(const LinkedGraph& g, int maxlen) {
    std::vector<DirectedPath> result;
    std::vector<int> stack;
    auto extend = [&](auto&& self, int tail, int at) -> void {
        result.push_back({tail, stack});
        if (int(stack.size()) >= maxlen) return;
        for (int e : g.out[at]) {
            stack.push_back(e);
            self(self, tail, g.edges[e].head);
            stack.pop_back();
        }
    };
    for (int v = 0; v < g.size(); ++v) extend(extend, v, v);
    return result;
}

} // namespace lgrass
