#pragma once

#include "lgrass/rational.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lgrass {

// Integer multidegree, one entry per vertex of the underlying tree.
using Multidegree = std::vector<long>;

inline long md_total(const Multidegree& w) {
    return std::accumulate(w.begin(), w.end(), 0L);
}

inline Multidegree md_add(const Multidegree& a, const Multidegree& b) {
    Multidegree r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Multidegree md_sub(const Multidegree& a, const Multidegree& b) {
    Multidegree r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Multidegree md_scale(long c, const Multidegree& a) {
    Multidegree r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline std::string md_str(const Multidegree& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

struct TreeGraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;

    int size() const { return int(vertices.size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (vertices[i] == name) return i;
        throw ValidationError("unknown tree vertex: " + name);
    }

    int valence(int v) const {
        if (v < 0 || v >= size()) throw ValidationError("tree vertex index out of range");
        return int(adjacency[v].size());
    }

    void build_adjacency() {
        adjacency.assign(vertices.size(), {});
        for (auto [a, b] : edges) {
            adjacency[a].push_back(b);
            adjacency[b].push_back(a);
        }
        for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());
    }

    void validate() const {
        int n = size();
        if (n == 0) throw ValidationError("tree has no vertices");
        if (int(edges.size()) != n - 1)
            throw ValidationError("tree must have |V|-1 edges");
        std::set<std::pair<int, int>> seen;
        for (auto [a, b] : edges) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw ValidationError("tree edge endpoint out of range");
            if (a == b) throw ValidationError("tree edge is a self-loop");
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second) throw ValidationError("duplicate tree edge");
        }
        // |V|-1 edges, so connectivity is equivalent to acyclicity.
        std::vector<bool> visited(n, false);
        std::vector<int> stack{0};
        visited[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adjacency[v])
                if (!visited[u]) {
                    visited[u] = true;
                    stack.push_back(u);
                }
        }
        for (int v = 0; v < n; ++v)
            if (!visited[v]) throw ValidationError("tree is not connected");
    }

    static TreeGraph chain(int n) {
        TreeGraph t;
        for (int i = 1; i <= n; ++i) t.vertices.push_back("v" + std::to_string(i));
        for (int i = 0; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
        t.build_adjacency();
        t.validate();
        return t;
    }
};

inline TreeGraph make_tree(std::vector<std::string> names,
                           std::vector<std::pair<int, int>> edges) {
    TreeGraph t;
    t.vertices = std::move(names);
    t.edges = std::move(edges);
    t.build_adjacency();
    t.validate();
    return t;
}

// Degree vector of the elementary twist at v: -valence(v) at v, +1 at
// each neighbor.
inline Multidegree twist_multidegree(const TreeGraph& tree, int v) {
    if (v < 0 || v >= tree.size()) throw ValidationError("twist vertex out of range");
    Multidegree t(tree.size(), 0);
    t[v] = -tree.valence(v);
    for (int u : tree.adjacency[v]) t[u] += 1;
    return t;
}

inline Multidegree twist_multidegree(const TreeGraph& tree, const std::string& name) {
    return twist_multidegree(tree, tree.vertex_index(name));
}

struct TreeDegreeData {
    TreeGraph tree;
    long d = 0;
    long b = 0;
    std::vector<long> d_v;

    void validate() const {
        tree.validate();
        if (int(d_v.size()) != tree.size())
            throw ValidationError("d_v must assign a degree to every tree vertex");
        long total = std::accumulate(d_v.begin(), d_v.end(), 0L);
        if (total - long(tree.edges.size()) * 2 * b != d)
            throw ValidationError("degree data inconsistent: sum(d_v) - |E|*2b != d");
    }

    bool in_hd(const Multidegree& w) const {
        return int(w.size()) == tree.size() && md_total(w) == d;
    }

    void require_hd(const Multidegree& w) const {
        if (!in_hd(w))
            throw ValidationError("multidegree " + md_str(w) + " is not in H_" +
                                  std::to_string(d));
    }
};

} // namespace lgrass
