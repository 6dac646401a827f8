#pragma once

// JSON serialization for the library's data types.  Matrices are row-major
// arrays of rational strings ("p/q" or "n"); multidegrees are arrays of
// integers.  Parsers throw ValidationError with a descriptive message on
// any malformed input.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "lgrass/forms.hpp"
#include "lgrass/grassmannian.hpp"
#include "lgrass/linked_graph.hpp"
#include "lgrass/prelinked.hpp"
#include "lgrass/rational.hpp"
#include "lgrass/tree.hpp"

namespace lgrass {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline long need_int(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer())
        throw ValidationError(std::string("field \"") + key + "\" must be an integer");
    return v.get<long>();
}

inline Rat rat_from_json(const json& v) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
    throw ValidationError("rational entries must be integers or \"p/q\" strings");
}

}  // namespace detail

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("matrix must be an array of rows");
    const int rows = int(j.size());
    int cols = -1;
    for (const auto& row : j) {
        if (!row.is_array()) throw ValidationError("matrix row must be an array");
        if (cols < 0)
            cols = int(row.size());
        else if (int(row.size()) != cols)
            throw ValidationError("matrix rows have unequal lengths");
    }
    Mat m(rows, cols < 0 ? 0 : cols);
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < m.cols(); ++c) m(i, c) = detail::rat_from_json(j[size_t(i)][size_t(c)]);
    return m;
}

inline json multidegree_to_json(const Multidegree& w) {
    json a = json::array();
    for (long x : w) a.push_back(x);
    return a;
}

inline Multidegree multidegree_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("multidegree must be an array of integers");
    Multidegree w;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ValidationError("multidegree entries must be integers");
        w.push_back(x.get<long>());
    }
    return w;
}

inline json tree_data_to_json(const TreeDegreeData& data) {
    json j;
    j["vertices"] = data.tree.vertices;
    json edges = json::array();
    for (auto [a, b] : data.tree.edges)
        edges.push_back(json::array({data.tree.vertices[size_t(a)], data.tree.vertices[size_t(b)]}));
    j["edges"] = std::move(edges);
    j["d"] = data.d;
    j["b"] = data.b;
    json dv = json::object();
    for (int v = 0; v < data.tree.size(); ++v) dv[data.tree.vertices[size_t(v)]] = data.d_v[size_t(v)];
    j["d_v"] = std::move(dv);
    return j;
}

inline TreeDegreeData tree_data_from_json(const json& j) {
    const json& verts = detail::need(j, "vertices");
    if (!verts.is_array() || verts.empty())
        throw ValidationError("\"vertices\" must be a non-empty array of names");
    std::vector<std::string> names;
    for (const auto& v : verts) {
        if (!v.is_string()) throw ValidationError("tree vertex names must be strings");
        names.push_back(v.get<std::string>());
    }
    auto index_of = [&](const json& v) -> int {
        if (v.is_number_integer()) {
            long i = v.get<long>();
            if (i < 0 || i >= long(names.size()))
                throw ValidationError("tree edge endpoint out of range");
            return int(i);
        }
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            for (size_t i = 0; i < names.size(); ++i)
                if (names[i] == s) return int(i);
            throw ValidationError("unknown tree vertex: " + s);
        }
        throw ValidationError("tree edge endpoints must be names or indices");
    };
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : detail::need(j, "edges")) {
        if (!e.is_array() || e.size() != 2)
            throw ValidationError("tree edges must be [a, b] pairs");
        edges.emplace_back(index_of(e[0]), index_of(e[1]));
    }
    TreeDegreeData data;
    data.tree = make_tree(std::move(names), std::move(edges));
    data.d = detail::need_int(j, "d");
    data.b = detail::need_int(j, "b");
    const json& dv = detail::need(j, "d_v");
    if (!dv.is_object()) throw ValidationError("\"d_v\" must be an object keyed by vertex name");
    data.d_v.assign(size_t(data.tree.size()), 0);
    size_t assigned = 0;
    for (const auto& [name, val] : dv.items()) {
        if (!val.is_number_integer())
            throw ValidationError("\"d_v\" values must be integers");
        data.d_v[size_t(data.tree.vertex_index(name))] = val.get<long>();
        ++assigned;
    }
    if (assigned != size_t(data.tree.size()))
        throw ValidationError("\"d_v\" must assign a degree to every tree vertex");
    data.validate();
    return data;
}

// The multidegree vertices and twist edges are determined by the degree
// data, so the serialized graph embeds the data and lists the derived
// vertices and edges for human inspection.  The parser rebuilds the graph
// from the data and cross-checks any listed vertices and edges.
inline json linked_graph_to_json(const LinkedGraph& g) {
    json j;
    j["data"] = tree_data_to_json(g.data);
    json verts = json::array();
    for (const auto& w : g.vertices) verts.push_back(multidegree_to_json(w));
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back(json{{"tail", e.tail}, {"head", e.head}, {"label", e.label}});
    j["edges"] = std::move(edges);
    return j;
}

inline LinkedGraph linked_graph_from_json(const json& j) {
    LinkedGraph g = build_linked_graph(tree_data_from_json(detail::need(j, "data")));
    if (j.contains("vertices")) {
        const json& verts = j.at("vertices");
        if (verts.size() != g.vertices.size())
            throw ValidationError("graph JSON lists a different number of vertices than its data generates");
        for (size_t i = 0; i < g.vertices.size(); ++i)
            if (multidegree_from_json(verts[i]) != g.vertices[i])
                throw ValidationError("graph JSON vertex " + std::to_string(i) +
                                      " does not match its degree data");
    }
    if (j.contains("edges")) {
        const json& edges = j.at("edges");
        if (edges.size() != g.edges.size())
            throw ValidationError("graph JSON lists a different number of edges than its data generates");
        for (size_t i = 0; i < g.edges.size(); ++i) {
            const json& e = edges[i];
            if (detail::need_int(e, "tail") != g.edges[i].tail ||
                detail::need_int(e, "head") != g.edges[i].head ||
                detail::need_int(e, "label") != g.edges[i].label)
                throw ValidationError("graph JSON edge " + std::to_string(i) +
                                      " does not match its degree data");
        }
    }
    return g;
}

inline json diagram_to_json(const PrelinkedDiagram& d) {
    json j;
    j["graph"] = linked_graph_to_json(d.graph);
    j["s"] = rat_str(d.s);
    j["dims"] = d.dims;
    json maps = json::array();
    for (size_t k = 0; k < d.maps.size(); ++k)
        maps.push_back(json{{"edge", k}, {"matrix", mat_to_json(d.maps[k])}});
    j["maps"] = std::move(maps);
    return j;
}

inline PrelinkedDiagram diagram_from_json(const json& j) {
    PrelinkedDiagram d;
    d.graph = linked_graph_from_json(detail::need(j, "graph"));
    d.s = detail::rat_from_json(detail::need(j, "s"));
    const json& dims = detail::need(j, "dims");
    if (!dims.is_array()) throw ValidationError("\"dims\" must be an array of integers");
    for (const auto& t : dims) {
        if (!t.is_number_integer() || t.get<long>() < 0)
            throw ValidationError("\"dims\" entries must be non-negative integers");
        d.dims.push_back(t.get<int>());
    }
    d.maps.assign(d.graph.edges.size(), Mat());
    std::vector<bool> given(d.graph.edges.size(), false);
    for (const auto& m : detail::need(j, "maps")) {
        const long e = detail::need_int(m, "edge");
        if (e < 0 || e >= long(d.maps.size()))
            throw ValidationError("map edge index out of range");
        if (given[size_t(e)]) throw ValidationError("duplicate map for edge " + std::to_string(e));
        given[size_t(e)] = true;
        d.maps[size_t(e)] = mat_from_json(detail::need(m, "matrix"));
    }
    for (size_t e = 0; e < given.size(); ++e)
        if (!given[e]) throw ValidationError("missing map for edge " + std::to_string(e));
    d.validate();
    return d;
}

// Only nonzero pairing blocks are listed; the parser zero-fills the rest
// from the diagram's dimensions.
inline json form_to_json(const LinkedForm& f) {
    json j;
    j["m"] = multidegree_to_json(f.m);
    json pairings = json::array();
    for (int w = 0; w < f.nv; ++w)
        for (int wp = 0; wp < f.nv; ++wp)
            if (!f.pairing(w, wp).is_zero())
                pairings.push_back(json{{"w", w}, {"wp", wp}, {"matrix", mat_to_json(f.pairing(w, wp))}});
    j["pairings"] = std::move(pairings);
    return j;
}

inline LinkedForm form_from_json(const json& j, const std::vector<int>& dims) {
    LinkedForm f(multidegree_from_json(detail::need(j, "m")), dims);
    for (const auto& p : detail::need(j, "pairings")) {
        const long w = detail::need_int(p, "w");
        const long wp = detail::need_int(p, "wp");
        if (w < 0 || w >= f.nv || wp < 0 || wp >= f.nv)
            throw ValidationError("pairing vertex index out of range");
        Mat m = mat_from_json(detail::need(p, "matrix"));
        if (m.rows() != dims[size_t(w)] || m.cols() != dims[size_t(wp)])
            throw ValidationError("pairing block (" + std::to_string(w) + "," +
                                  std::to_string(wp) + ") has the wrong shape");
        f.pairing(int(w), int(wp)) = std::move(m);
    }
    return f;
}

inline json subbundle_to_json(const LinkedSubbundle& f) {
    json j;
    j["rank"] = f.r;
    json subs = json::array();
    for (size_t w = 0; w < f.bases.size(); ++w)
        subs.push_back(json{{"w", w}, {"basis", mat_to_json(f.bases[w])}});
    j["subspaces"] = std::move(subs);
    return j;
}

inline LinkedSubbundle subbundle_from_json(const json& j, int nv) {
    LinkedSubbundle f;
    f.r = int(detail::need_int(j, "rank"));
    f.bases.assign(size_t(nv), Mat());
    std::vector<bool> given(size_t(nv), false);
    for (const auto& s : detail::need(j, "subspaces")) {
        const long w = detail::need_int(s, "w");
        if (w < 0 || w >= nv) throw ValidationError("subspace vertex index out of range");
        if (given[size_t(w)])
            throw ValidationError("duplicate subspace for vertex " + std::to_string(w));
        given[size_t(w)] = true;
        f.bases[size_t(w)] = mat_from_json(detail::need(s, "basis"));
    }
    for (int w = 0; w < nv; ++w)
        if (!given[size_t(w)])
            throw ValidationError("missing subspace for vertex " + std::to_string(w));
    return f;
}

inline json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON input");
    return j;
}

}  // namespace lgrass
