#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "fixtures.hpp"
#include "lgrass/prelinked.hpp"

using namespace lgrass;
using namespace lgrass::fixtures;

namespace {

PrelinkedDiagram identity_diagram(const TreeDegreeData& data, int t, const Rat& s) {
    PrelinkedDiagram d;
    d.graph = build_linked_graph(data);
    d.s = s;
    d.dims.assign(d.graph.size(), t);
    d.maps.assign(d.graph.edges.size(), Mat::identity(t));
    d.validate();
    return d;
}

PrelinkedDiagram zero_diagram(const TreeDegreeData& data, int t) {
    PrelinkedDiagram d;
    d.graph = build_linked_graph(data);
    d.s = 0;
    d.dims.assign(d.graph.size(), t);
    d.maps.assign(d.graph.edges.size(), Mat(t, t));
    d.validate();
    return d;
}

}  // namespace

TEST_CASE("diagram validation") {
    PrelinkedDiagram d = two_chain_s0();
    CHECK_NOTHROW(d.validate());
    d.maps[0] = Mat(3, 2);
    CHECK_THROWS_AS(d.validate(), ValidationError);
    d = two_chain_s0();
    d.dims.pop_back();
    CHECK_THROWS_AS(d.validate(), ValidationError);
}

TEST_CASE("path composites") {
    PrelinkedDiagram d = invertible_diagram(two_chain(), 2, Rat(1, 3), 11);
    // Loop at (1,1) through (3,-1): edges e2 then e3.
    DirectedPath loop;
    loop.tail = 1;
    loop.edges = {2, 3};
    CHECK(f_path(d, loop) == Mat::identity(2).scaled(Rat(1, 3)));
    // Composites to self are identities.
    CHECK(f_composite(d, 1, 1) == Mat::identity(2));
    // A composite through the middle matches the explicit path product.
    DirectedPath across;
    across.tail = 0;
    across.edges = {0, 2};
    CHECK(f_composite(d, 0, 2) == f_path(d, across));

    // With s = 0, any non-minimal composite collapses to zero.
    PrelinkedDiagram z = two_chain_s0();
    DirectedPath wander;
    wander.tail = 0;
    wander.edges = {0, 1, 0};  // 0 -> 1 -> 0 -> 1
    CHECK(f_path(z, wander).is_zero());
}

TEST_CASE("path comparison law holds for the fixtures") {
    CHECK(check_prelinked(two_chain_s0()).ok);
    CHECK(check_prelinked(three_chain_s0()).ok);
    CHECK(check_prelinked(identity_diagram(two_chain(), 2, 1)).ok);
    for (std::uint64_t seed : {1, 2, 3}) {
        CHECK(check_prelinked(invertible_diagram(two_chain(), 2, 1, seed)).ok);
        CHECK(check_prelinked(invertible_diagram(two_chain(), 2, Rat(1, 3), seed)).ok);
        CHECK(check_prelinked(invertible_diagram(three_chain(), 2, Rat(1, 3), seed)).ok);
        CHECK(check_prelinked(conjugated(three_chain_s0(), seed)).ok);
    }
    // Zero maps everywhere satisfy the law trivially at s = 0.
    CHECK(check_prelinked(zero_diagram(two_chain(), 2)).ok);
}

TEST_CASE("path comparison law failures are reported") {
    // Identity maps with s = 1 except one zeroed edge: loops through that
    // edge no longer match the identity composite.
    PrelinkedDiagram d = identity_diagram(two_chain(), 2, 1);
    d.maps[1] = Mat(2, 2);
    CheckReport r = check_prelinked(d);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.violations.empty());

    // Two same-length routes that disagree.
    PrelinkedDiagram e = three_chain_s0();
    e.maps[4] = unit_product(2, 0, 0);  // route via (2,-2,0) now lands on e1, not e2
    CheckReport r2 = check_prelinked(e);
    CHECK_FALSE(r2.ok);
}

TEST_CASE("same-endpoint path lengths differ by multiples of the tree size") {
    for (const auto& data : {two_chain(), three_chain()}) {
        LinkedGraph g = build_linked_graph(data);
        int n = data.tree.size();
        auto paths = enumerate_paths(g, graph_diameter(g) + 2 * n);
        for (const auto& p : paths)
            for (const auto& q : paths)
                if (p.tail == q.tail && p.head(g) == q.head(g))
                    CHECK((p.length() - q.length()) % n == 0);
    }
}

TEST_CASE("invertible diagrams are simple with witnesses at one vertex") {
    for (const auto& data : {two_chain(), three_chain()}) {
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            for (Rat s : {Rat(1), Rat(1, 3)}) {
                PrelinkedDiagram d = invertible_diagram(data, 2, s, seed);
                SimplicityResult r = is_simple(d);
                REQUIRE(r.status == SimplicityStatus::Simple);
                CHECK(verify_certificate(d, r.cert));
                for (const auto& [w, v] : r.cert.witnesses) CHECK(w == 0);
                WDecomposition dec = w_decomposition(r.cert, d);
                CHECK(dec.ranks[0] == 2);
                for (int w = 1; w < d.graph.size(); ++w) CHECK(dec.ranks[w] == 0);
            }
        }
    }
}

TEST_CASE("hand-built degenerate diagrams are simple with split witnesses") {
    PrelinkedDiagram d2 = two_chain_s0();
    SimplicityResult r2 = is_simple(d2);
    REQUIRE(r2.status == SimplicityStatus::Simple);
    WDecomposition dec2 = w_decomposition(r2.cert, d2);
    CHECK(dec2.ranks == std::vector<int>{1, 0, 1});
    CHECK(dec2.basis[0].column(0) == Mat{{0}, {1}});  // new direction at (-1,3)
    CHECK(dec2.basis[2].column(0) == Mat{{1}, {0}});  // new direction at (3,-1)

    PrelinkedDiagram d3 = three_chain_s0();
    SimplicityResult r3 = is_simple(d3);
    REQUIRE(r3.status == SimplicityStatus::Simple);
    WDecomposition dec3 = w_decomposition(r3.cert, d3);
    CHECK(dec3.ranks == std::vector<int>{0, 1, 1, 0});
    CHECK(dec3.basis[1].column(0) == Mat{{1}, {0}});
    CHECK(dec3.basis[2].column(0) == Mat{{0}, {1}});
}

TEST_CASE("simplicity is invariant under changes of basis") {
    for (std::uint64_t seed : {7, 8, 9, 10, 11, 12, 13, 14}) {
        PrelinkedDiagram d = conjugated(two_chain_s0(), seed);
        SimplicityResult r = is_simple(d, seed);
        REQUIRE(r.status == SimplicityStatus::Simple);
        CHECK(verify_certificate(d, r.cert));
        PrelinkedDiagram e = conjugated(three_chain_s0(), seed);
        SimplicityResult re = is_simple(e, seed);
        REQUIRE(re.status == SimplicityStatus::Simple);
        CHECK(verify_certificate(e, re.cert));
    }
}

TEST_CASE("simplicity obstructions are detected exactly") {
    // Zero maps: every vertex needs a full set of fresh directions.
    SimplicityResult r = is_simple(zero_diagram(two_chain(), 2));
    CHECK(r.status == SimplicityStatus::NotSimple);
    CHECK_FALSE(r.evidence.empty());

    // A budget of zero cannot certify anything, but is also not a disproof.
    PrelinkedDiagram d = invertible_diagram(two_chain(), 2, 1, 3);
    CHECK(is_simple(d, 0, 0).status == SimplicityStatus::Indeterminate);
}

TEST_CASE("witness placement respects the allowed set") {
    PrelinkedDiagram d = two_chain_s0();
    CHECK(internal_support(d.graph, {1, 1}) == std::vector<bool>{true, true, true});
    CHECK(internal_support(d.graph, {2, 0}) == std::vector<bool>{false, true, true});
    CHECK(internal_support(d.graph, {0, 2}) == std::vector<bool>{true, true, false});

    CHECK(is_internally_simple(d, {1, 1}).status == SimplicityStatus::Simple);
    // The fresh direction at (-1,3) cannot be hosted when (-1,3) has no
    // complementary vertex, so internal simplicity fails rigorously.
    SimplicityResult r = is_internally_simple(d, {2, 0});
    CHECK(r.status == SimplicityStatus::NotSimple);
    CHECK(r.evidence.find("(-1,3)") != std::string::npos);
    CHECK(is_internally_simple(d, {0, 2}).status == SimplicityStatus::NotSimple);

    CHECK(is_internally_simple(three_chain_s0(), {1, -2, 1}).status ==
          SimplicityStatus::Simple);

    CHECK_THROWS_AS(is_internally_simple(d, {1, 0}), ValidationError);
}

TEST_CASE("certificates fail verification against other diagrams") {
    PrelinkedDiagram d = two_chain_s0();
    SimplicityResult r = is_simple(d);
    REQUIRE(r.status == SimplicityStatus::Simple);

    PrelinkedDiagram z = zero_diagram(two_chain(), 2);
    CHECK_FALSE(verify_certificate(z, r.cert));
    CHECK_THROWS_AS(w_decomposition(r.cert, z), ValidationError);

    SimplicityCertificate truncated;
    truncated.witnesses = {r.cert.witnesses[0]};
    CHECK_THROWS_AS(w_decomposition(truncated, d), ValidationError);
}

TEST_CASE("single-vertex diagrams") {
    TreeDegreeData data = chain_data(1, 5, 1, {5});
    PrelinkedDiagram d;
    d.graph = build_linked_graph(data);
    d.s = Rat(1, 2);
    d.dims = {3};
    d.validate();
    CHECK(check_prelinked(d).ok);
    SimplicityResult r = is_simple(d);
    REQUIRE(r.status == SimplicityStatus::Simple);
    CHECK(w_decomposition(r.cert, d).ranks == std::vector<int>{3});
    CHECK(is_internally_simple(d, {5}).status == SimplicityStatus::Simple);
}
