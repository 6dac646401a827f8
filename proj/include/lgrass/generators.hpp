#pragma once

// Seeded constructors for diagrams, forms, and subbundles with known-good
// structure: invertible diagrams satisfying the path-comparison law by
// construction, symplectic pairings, and pushed isotropic subbundles.

#include <vector>

#include "lgrass/forms.hpp"
#include "lgrass/grassmannian.hpp"
#include "lgrass/linked_graph.hpp"
#include "lgrass/prelinked.hpp"
#include "lgrass/rng.hpp"
#include "lgrass/tree.hpp"

namespace lgrass {

inline TreeDegreeData chain_data(int n, long d, long b, std::vector<long> d_v) {
    TreeDegreeData data;
    data.tree = TreeGraph::chain(n);
    data.d = d;
    data.b = b;
    data.d_v = std::move(d_v);
    data.validate();
    return data;
}

// t x t matrix with a single 1 in row i, column j.
inline Mat unit_product(int t, int i, int j) {
    Mat m(t, t);
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1;
    return m;
}

// Invertible diagram over nonzero s: pick an invertible A_w per vertex and
// set f_e = s^mu(e) * A_head^{-1} A_tail, where mu(e) makes the exponent of
// any path depend only on its endpoints and length.  Every composite along
// a path P is then s^{sum mu} A_head^{-1} A_tail, which satisfies the
// path-comparison law by construction, and all maps are invertible.
inline PrelinkedDiagram invertible_diagram(const TreeDegreeData& data, int t, const Rat& s,
                                           std::uint64_t seed) {
    if (s == 0) throw std::invalid_argument("invertible_diagram requires s != 0");
    PrelinkedDiagram d;
    d.graph = build_linked_graph(data);
    d.s = s;
    const LinkedGraph& g = d.graph;
    const std::size_t nv = g.size();
    const long nGamma = static_cast<long>(data.tree.size());
    d.dims.assign(nv, t);

    Rng rng(seed);
    std::vector<Mat> A;
    A.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) A.push_back(rng.invertible_matrix(t));

    std::vector<long> dist0(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) {
        auto dd = graph_distance(g, 0, static_cast<int>(i));
        if (!dd) throw std::runtime_error("invertible_diagram: graph not strongly connected");
        dist0[i] = *dd;
    }
    for (const LinkedEdge& e : g.edges) {
        long raw = 1 + dist0[static_cast<std::size_t>(e.tail)] - dist0[static_cast<std::size_t>(e.head)];
        if (raw % nGamma != 0 || raw < 0)
            throw std::runtime_error("invertible_diagram: unexpected cycle structure");
        Rat scale = rat_pow(s, raw / nGamma);
        d.maps.push_back(inverse(A[static_cast<std::size_t>(e.head)]) * A[static_cast<std::size_t>(e.tail)]
                             .scaled(scale));
    }
    d.validate();
    return d;
}

// Decomposition placing all witness directions at one vertex.
inline WDecomposition full_decomposition_at(int vertex, int t, int n) {
    WDecomposition dec;
    dec.ranks.assign(n, 0);
    dec.ranks[static_cast<std::size_t>(vertex)] = t;
    for (int w = 0; w < n; ++w)
        dec.basis.push_back(w == vertex ? Mat::identity(t) : Mat(t, 0));
    return dec;
}

// Standard symplectic pairing on t = 2k coordinates.
inline Mat omega(int t) {
    Mat o(t, t);
    for (int i = 0; i < t / 2; ++i) {
        o(i, i + t / 2) = 1;
        o(i + t / 2, i) = -1;
    }
    return o;
}

// Alternating pairing touching only the first two coordinates.
inline Mat wedge12(int t) {
    Mat o(t, t);
    o(0, 1) = 1;
    o(1, 0) = -1;
    return o;
}

// A subbundle and a compatible alternating form built by pushing data at
// vertex 0 through an invertible diagram: the form extends a pairing on
// E_{vertex 0} and the subbundle is the image of a fixed subspace along
// minimal paths.  If the subspace is isotropic for the vertex-0 pairing,
// the pushed subbundle is isotropic for the extended form.
struct LagInstance {
    PrelinkedDiagram d;
    LinkedForm form;
    LinkedSubbundle sub;
    Multidegree m;
};

inline LagInstance push_instance(const TreeDegreeData& data, const Multidegree& m, int t,
                                 const Mat& pairing0, const Mat& subspace0, const Rat& s,
                                 std::uint64_t seed) {
    LagInstance inst;
    inst.m = m;
    inst.d = invertible_diagram(data, t, s, seed);
    const int n = inst.d.graph.size();
    WDecomposition dec = full_decomposition_at(0, t, n);
    inst.form = extend_from_restriction(inst.d, dec, pairing0, m, FormKind::Alternating);
    inst.sub.r = subspace0.cols();
    for (int w = 0; w < n; ++w)
        inst.sub.bases.push_back(f_composite(inst.d, 0, w) * subspace0);
    return inst;
}

// Conjugate every map by a random invertible change of basis per vertex.
// Preserves both the path-comparison law and simplicity.
inline PrelinkedDiagram conjugated(const PrelinkedDiagram& d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Mat> C;
    C.reserve(d.graph.size());
    for (std::size_t i = 0; i < d.graph.size(); ++i) C.push_back(rng.invertible_matrix(d.dims[i]));
    PrelinkedDiagram out = d;
    for (std::size_t k = 0; k < d.graph.edges.size(); ++k) {
        const LinkedEdge& e = d.graph.edges[k];
        out.maps[k] = C[static_cast<std::size_t>(e.head)] * d.maps[k] *
                      inverse(C[static_cast<std::size_t>(e.tail)]);
    }
    return out;
}

}  // namespace lgrass
