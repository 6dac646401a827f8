#pragma once

// Shared test fixtures: small degree data sets on chains and hand-built
// diagrams over them whose behavior is fully worked out by hand in the
// accompanying tests.  The seeded generators live in lgrass/generators.hpp.

#include <vector>

#include "lgrass/forms.hpp"
#include "lgrass/generators.hpp"
#include "lgrass/grassmannian.hpp"
#include "lgrass/linked_graph.hpp"
#include "lgrass/prelinked.hpp"
#include "lgrass/rng.hpp"
#include "lgrass/tree.hpp"

namespace lgrass::fixtures {

// Two-vertex chain with vertex set {(-1,3), (1,1), (3,-1)} and four edges.
inline TreeDegreeData two_chain() { return chain_data(2, 2, 2, {3, 3}); }

// Three-vertex chain with vertex set {(0,-2,2), (0,0,0), (2,-4,2), (2,-2,0)}.
inline TreeDegreeData three_chain() { return chain_data(3, 0, 1, {2, 0, 2}); }

inline Multidegree two_chain_m() { return {1, 1}; }
inline Multidegree three_chain_m() { return {1, -2, 1}; }

// Rank-2 diagram on the two-vertex chain with s = 0.  Vertex order (sorted):
//   0:(-1,3)  1:(1,1)  2:(3,-1)
// Edge order: e0 = 0->1, e1 = 1->0, e2 = 1->2, e3 = 2->1.
// All length-2 loops compose to zero, and the diagram is simple with one
// witness direction at each end vertex.
inline PrelinkedDiagram two_chain_s0() {
    PrelinkedDiagram d;
    d.graph = build_linked_graph(two_chain());
    d.s = 0;
    d.dims = {2, 2, 2};
    d.maps = {unit_product(2, 1, 1),   // e0: 0->1
              unit_product(2, 0, 0),   // e1: 1->0
              unit_product(2, 1, 1),   // e2: 1->2
              unit_product(2, 0, 0)};  // e3: 2->1
    d.validate();
    return d;
}

// Rank-2 diagram on the three-vertex chain with s = 0.  Vertex order:
//   0:(0,-2,2)  1:(0,0,0)  2:(2,-4,2)  3:(2,-2,0)
// Edge order: e0 = 0->1, e1 = 1->2, e2 = 2->0, e3 = 2->3, e4 = 3->1.
inline PrelinkedDiagram three_chain_s0() {
    PrelinkedDiagram d;
    d.graph = build_linked_graph(three_chain());
    d.s = 0;
    d.dims = {2, 2, 2, 2};
    d.maps = {unit_product(2, 1, 1),   // e0: 0->1
              unit_product(2, 0, 0),   // e1: 1->2
              Mat::identity(2),        // e2: 2->0
              Mat::identity(2),        // e3: 2->3
              unit_product(2, 1, 1)};  // e4: 3->1
    d.validate();
    return d;
}

}  // namespace lgrass::fixtures
