// Acceptance gate: one pass/fail line per criterion.  Exits 0 only if every
// criterion passes.  argv[1] is the directory holding the golden tables.

#include <array>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lgrass/dimension.hpp"
#include "lgrass/families.hpp"
#include "lgrass/forms.hpp"
#include "lgrass/generators.hpp"
#include "lgrass/grassmannian.hpp"
#include "lgrass/linked_graph.hpp"
#include "lgrass/prelinked.hpp"

#include "../fixtures.hpp"
#include "../oracles.hpp"

namespace {

using namespace lgrass;
using namespace lgrass::fixtures;
using namespace lgrass::oracles;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open golden file: " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------
// 1. The four demonstration tables reproduce the golden files byte for byte.
// ---------------------------------------------------------------------------
Outcome criterion1(const std::filesystem::path& golden) {
    const std::vector<std::pair<std::string, std::array<long, 3>>> files = {
        {"ee_g8_d12_k4.txt", {8, 12, 4}},
        {"eo_g7_d12_k5.txt", {7, 12, 5}},
        {"oe_g7_d11_k4.txt", {7, 11, 4}},
        {"oo_g10_d17_k5.txt", {10, 17, 5}},
    };
    for (const auto& [name, p] : files) {
        BNParams bn{p[0], p[1], p[2]};
        const std::string got = render_table(build_family(parity_case_of(bn), bn.g, bn.d, bn.k));
        if (got != slurp(golden / name)) return {false, "mismatch in " + name};
    }
    return {true, "4 tables byte-identical"};
}

// ---------------------------------------------------------------------------
// 2. Expected dimension by formula equals the family audit: the four
//    demonstration triples give 3, 3, 4, 7, and the two computations agree
//    at every case-inequality point with g <= 20.
// ---------------------------------------------------------------------------
Outcome criterion2() {
    const std::vector<std::pair<std::array<long, 3>, long>> expected = {
        {{8, 12, 4}, 3}, {{7, 12, 5}, 3}, {{7, 11, 4}, 4}, {{10, 17, 5}, 7}};
    for (const auto& [p, want] : expected) {
        BNParams bn{p[0], p[1], p[2]};
        const long by_formula = rho_special(bn);
        const long by_audit =
            dimension_audit(build_family(parity_case_of(bn), bn.g, bn.d, bn.k)).total;
        if (by_formula != want || by_audit != want)
            return {false, "triple (" + std::to_string(bn.g) + "," + std::to_string(bn.d) + "," +
                               std::to_string(bn.k) + "): formula " + std::to_string(by_formula) +
                               ", audit " + std::to_string(by_audit) + ", expected " +
                               std::to_string(want)};
    }
    long checked = 0;
    for (long g = 1; g <= 20; ++g)
        for (long d = g - 2; d <= 2 * g - 2; ++d)
            for (long k = 2; k <= 12; ++k) {
                BNParams p{g, d, k};
                const ParityCase c = parity_case_of(p);
                if (!case_inequality(p, c).holds) continue;
                ++checked;
                const long audit = dimension_audit(build_family(c, g, d, k)).total;
                if (audit != rho_special(p))
                    return {false, "audit disagrees with formula at g=" + std::to_string(g) +
                                       " d=" + std::to_string(d) + " k=" + std::to_string(k)};
            }
    return {true, "four triples = 3,3,4,7; formula == audit at " + std::to_string(checked) +
                      " grid points"};
}

// ---------------------------------------------------------------------------
// 3. The per-case inequality is equivalent to the main inequality on the
//    grid g <= 30, and the negative-expected-dimension triples are exactly
//    (1,0,2), (3,2,2), (4,6,4).
// ---------------------------------------------------------------------------
Outcome criterion3() {
    std::set<std::array<long, 3>> negative;
    long points = 0;
    for (long g = 0; g <= 30; ++g)
        for (long d = g - 2; d <= 2 * g - 2; ++d)
            for (long k = 2; k <= 8; ++k) {
                BNParams p{g, d, k};
                const auto main = main_inequality(p);
                const auto ci = case_inequality(p, parity_case_of(p));
                ++points;
                if (main.holds != ci.holds || !ci.equivalent_to_main)
                    return {false, "inequalities disagree at g=" + std::to_string(g) + " d=" +
                                       std::to_string(d) + " k=" + std::to_string(k)};
                if (main.holds && rho_special(p) < 0) negative.insert({g, d, k});
            }
    const std::set<std::array<long, 3>> want = {{1, 0, 2}, {3, 2, 2}, {4, 6, 4}};
    if (negative != want) {
        std::string got;
        for (const auto& t : negative)
            got += " (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                   std::to_string(t[2]) + ")";
        return {false, "negative-dimension set is{" + got + " }"};
    }
    return {true, std::to_string(points) + " grid points, zero discrepancies; negative set = "
                  "{(1,0,2),(3,2,2),(4,6,4)}"};
}

// ---------------------------------------------------------------------------
// 4. On >= 50 seeded simple rank-2 diagrams (2- and 3-vertex chains,
//    s in {0, 1, 1/3}), the form solver finds exactly 4 bilinear and 1
//    alternating dimensions.
// ---------------------------------------------------------------------------
Outcome criterion4() {
    struct Case {
        PrelinkedDiagram d;
        Multidegree m;
    };
    long count = 0;
    for (uint64_t seed = 1; seed <= 9; ++seed) {
        std::vector<Case> cases;
        cases.push_back({conjugated(two_chain_s0(), seed), two_chain_m()});
        cases.push_back({conjugated(three_chain_s0(), seed), three_chain_m()});
        for (const Rat& s : {Rat(1), Rat(1, 3)}) {
            cases.push_back({invertible_diagram(two_chain(), 2, s, seed), two_chain_m()});
            cases.push_back({invertible_diagram(three_chain(), 2, s, seed), three_chain_m()});
        }
        for (const auto& c : cases) {
            if (is_simple(c.d, seed).status != SimplicityStatus::Simple)
                return {false, "seeded diagram not simple (seed " + std::to_string(seed) + ")"};
            const long bil = long(form_module_basis(c.d, c.m, FormKind::Bilinear, seed).basis.size());
            const long alt =
                long(form_module_basis(c.d, c.m, FormKind::Alternating, seed).basis.size());
            if (bil != 4 || alt != 1)
                return {false, "solver dims " + std::to_string(bil) + "/" + std::to_string(alt) +
                                   " != 4/1 (seed " + std::to_string(seed) + ")"};
            ++count;
        }
    }
    return {true, std::to_string(count) + " simple diagrams, solver dimensions 4/1 exact"};
}

// ---------------------------------------------------------------------------
// 5. Per-step exponent sums equal the closed form for all interleavings of
//    path pairs with n+n' <= 6 plus 100 seeded samples, with integrality.
// ---------------------------------------------------------------------------
Outcome criterion5() {
    for (const auto& [data, m] :
         {std::pair{two_chain(), two_chain_m()}, std::pair{three_chain(), three_chain_m()}}) {
        LinkedGraph g = build_linked_graph(data);
        CheckReport report = check_delta_additivity(g, m, 6, 100, 17);
        if (!report.ok) return {false, report.violations.front()};
    }
    return {true, "additivity and integrality hold on both chain fixtures"};
}

// ---------------------------------------------------------------------------
// 6. On >= 20 symplectic instances the tangent map is surjective with rank
//    1 = C(2,2); the matched singular controls fail surjectivity while the
//    equation count stays 1.
// ---------------------------------------------------------------------------
Outcome criterion6() {
    auto span2 = [](int t, int c0, int c1) {
        Mat s(t, 2);
        s(c0, 0) = 1;
        s(c1, 1) = 1;
        return s;
    };
    long count = 0;
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        for (const Rat& s : {Rat(1), Rat(1, 3)}) {
            for (const auto& [data, m] : {std::pair{two_chain(), two_chain_m()},
                                          std::pair{three_chain(), three_chain_m()}}) {
                LagInstance good =
                    push_instance(data, m, 4, omega(4), span2(4, 0, 1), s, seed);
                LagVerdict v = lag_local_verdict(good.sub, good.form, good.d, m, seed);
                if (!(v.surjective && v.rank == 1 && v.equations == 1 &&
                      v.smooth_of_expected_codim))
                    return {false, "main instance failed (seed " + std::to_string(seed) + ")"};

                LagInstance ctrl =
                    push_instance(data, m, 4, wedge12(4), span2(4, 2, 3), s, seed);
                LagVerdict cv = lag_local_verdict(ctrl.sub, ctrl.form, ctrl.d, m, seed);
                if (cv.surjective || cv.equations != 1)
                    return {false, "degenerate control not detected (seed " +
                                       std::to_string(seed) + ")"};
                ++count;
            }
        }
    }
    return {true, std::to_string(count) + " instance/control pairs, rank 1 = C(2,2)"};
}

// ---------------------------------------------------------------------------
// 7. Breadth-first distance equals naive move enumeration on all pairs with
//    entries bounded by 6, and reproduces the asymmetric example.
// ---------------------------------------------------------------------------
Outcome criterion7() {
    long pairs = 0;
    for (const auto& data : {two_chain(), three_chain()}) {
        const auto pts = hd_points(size_t(data.tree.size()), data.d, 6);
        for (const auto& w : pts)
            for (const auto& wp : pts) {
                Multidegree delta(wp.size());
                for (size_t i = 0; i < wp.size(); ++i) delta[i] = wp[i] - w[i];
                if (distance(data, w, wp) != oracle_distance_naive(data.tree, delta))
                    return {false, "distance mismatch at " + md_str(w) + " -> " + md_str(wp)};
                ++pairs;
            }
    }
    TreeDegreeData asym = chain_data(3, 2, 1, {2, 2, 2});
    if (distance(asym, {0, 2, 0}, {1, 0, 1}) != 1 || distance(asym, {1, 0, 1}, {0, 2, 0}) != 2)
        return {false, "asymmetric example not reproduced"};
    return {true, std::to_string(pairs) + " pairs agree with naive enumeration; asymmetry 1 vs 2"};
}

// ---------------------------------------------------------------------------
// 8. Every generated table on the grid satisfies the boundary row sums and
//    the structural observations (which the generator asserts internally);
//    the row sums and the final-sequence reflection are re-checked here.
// ---------------------------------------------------------------------------
Outcome criterion8() {
    long tables = 0;
    for (long g = 1; g <= 20; ++g)
        for (long d = g - 2; d <= 2 * g - 2; ++d)
            for (long k = 2; k <= 10; ++k) {
                BNParams p{g, d, k};
                const ParityCase c = parity_case_of(p);
                if (!case_inequality(p, c).holds) continue;
                VanishingTable t = gen_sequences(c, g, d, k);
                ++tables;
                for (long i = 1; i <= g; ++i)
                    for (long j = 0; j < k; ++j) {
                        const long q = t.dprime - t.a[size_t(i)][size_t(j)];
                        if (q + t.a[size_t(i)][size_t(j)] != t.b)
                            return {false, "row sum violated at g=" + std::to_string(g) +
                                               " d=" + std::to_string(d) +
                                               " k=" + std::to_string(k)};
                    }
                for (long j = 0; j < k; ++j)
                    if (t.a.back()[size_t(j)] !=
                        t.dprime - t.a.front()[size_t(k - 1 - j)])
                        return {false, "final reflection violated at g=" + std::to_string(g) +
                                           " d=" + std::to_string(d) + " k=" + std::to_string(k)};
            }
    return {true, std::to_string(tables) + " tables satisfy row sums and observations"};
}

// ---------------------------------------------------------------------------
// 9. Families are semistable on the whole grid, stable away from the four
//    exceptional triples (semistable-only) and (3,4,3) (special case).
// ---------------------------------------------------------------------------
Outcome criterion9() {
    long families = 0;
    for (long g = 1; g <= 20; ++g)
        for (long d = g - 2; d <= 2 * g - 2; ++d)
            for (long k = 2; k <= 10; ++k) {
                BNParams p{g, d, k};
                const ParityCase c = parity_case_of(p);
                if (!case_inequality(p, c).holds) continue;
                ++families;
                const StabilityVerdict v = stability_check(build_family(c, g, d, k));
                if (!v.semistable)
                    return {false, "not semistable at g=" + std::to_string(g) + " d=" +
                                       std::to_string(d) + " k=" + std::to_string(k)};
                StableStatus want = StableStatus::Stable;
                if (stable_exception(p)) want = StableStatus::SemistableOnly;
                else if (special_case_triple(p)) want = StableStatus::SpecialCase;
                if (v.status != want)
                    return {false, std::string("stability status is ") +
                                       stable_status_name(v.status) + ", expected " +
                                       stable_status_name(want) + " at g=" + std::to_string(g) +
                                       " d=" + std::to_string(d) + " k=" + std::to_string(k)};
            }
    return {true, std::to_string(families) + " families semistable with the expected statuses"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <golden-dir>\n";
        return 2;
    }
    const std::filesystem::path golden = argv[1];

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"appendix tables reproduce the golden files", [&] { return criterion1(golden); }},
        {"expected dimension: formula == family audit", criterion2},
        {"case inequality == main inequality; negative set", criterion3},
        {"form solver dimensions 4/1 on seeded diagrams", criterion4},
        {"exponent additivity and integrality", criterion5},
        {"tangent-map surjectivity with matched controls", criterion6},
        {"distance agrees with naive enumeration", criterion7},
        {"row sums and observations on the grid", criterion8},
        {"stability verdicts on the grid", criterion9},
    };

    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << "criterion " << (i + 1) << " (" << criteria[i].first
                  << "): " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << "\n";
    }
    std::cout << (all ? "all criteria passed" : "ACCEPTANCE FAILED") << "\n";
    return all ? 0 : 1;
}
