#include "lgrass/families.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace lgrass;

namespace {

std::filesystem::path golden_dir() {
    return std::filesystem::path(__FILE__).parent_path().parent_path() / "data" / "appendix";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

FamilyReport family(long g, long d, long k) {
    BNParams p{g, d, k};
    return build_family(parity_case_of(p), g, d, k);
}

}  // namespace

TEST_CASE("determinant aspects, uniform multidegree") {
    auto as = special_det_aspects(8, 12);
    REQUIRE(as.size() == 8);
    CHECK(as[2].str() == "O(4,8)");  // component 3
    CHECK(as[0].str() == "O(0,12)");
    // Determined exactly up to d+2-g = 6.
    CHECK(as[5].form == LineBundleLabel::Form::ExplicitO);
    CHECK(as[6].form == LineBundleLabel::Form::Symbol);
    CHECK(as[6].str() == "L_7");
    CHECK(as[6].flag_not_split);
    CHECK(as[6].flag_no_line_square);
    for (const auto& l : as) CHECK(l.degree == 12);
}

TEST_CASE("determinant aspects, distinguished-component multidegree") {
    auto as = special_det_aspects(7, 11, 5);
    REQUIRE(as.size() == 7);
    // Below the distinguished component: O(2(i-1), d-2i+1).
    CHECK(as[0].str() == "O(0,10)");
    CHECK(as[1].str() == "O(2,8)");
    // At it: O(2(i-1), d-2i+2).
    CHECK(as[4].str() == "O(8,3)");
    // Above it: O(2i-3, d-2i+2).
    CHECK(as[5].str() == "O(9,1)");
    for (size_t i = 0; i < as.size(); ++i)
        CHECK(as[i].degree == (i == 4 ? 11 : 10));
}

TEST_CASE("determinant aspects reject out-of-range degrees") {
    CHECK_THROWS_AS(special_det_aspects(8, 5), ValidationError);
    CHECK_THROWS_AS(special_det_aspects(8, 15), ValidationError);
    CHECK_THROWS_AS(special_det_aspects(8, 12, 9), ValidationError);
    CHECK_NOTHROW(special_det_aspects(8, 6));
    CHECK_NOTHROW(special_det_aspects(8, 14));
}

TEST_CASE("vanishing sequences for the four demonstration families") {
    auto ee = gen_sequences(ParityCase::EE, 8, 12, 4);
    CHECK(ee.a.front() == std::vector<long>{0, 0, 1, 1});
    CHECK(ee.a[1] == std::vector<long>{0, 0, 2, 2});
    CHECK(ee.a.back() == std::vector<long>{5, 5, 6, 6});
    // Reflected final sequence, largest order first.
    std::vector<long> rev(ee.a.back().rbegin(), ee.a.back().rend());
    CHECK(rev == std::vector<long>{6, 6, 5, 5});

    auto eo = gen_sequences(ParityCase::EO, 7, 12, 5);
    CHECK(eo.a[6] == std::vector<long>{3, 4, 4, 5, 6});  // component 7 P-column
    CHECK(eo.a.back() == std::vector<long>{4, 5, 5, 6, 6});

    auto oe = gen_sequences(ParityCase::OE, 7, 11, 4);
    CHECK(oe.a[5] == std::vector<long>{2, 3, 3, 4});
    CHECK(oe.a.back() == std::vector<long>{4, 4, 5, 5});

    auto oo = gen_sequences(ParityCase::OO, 10, 17, 5);
    CHECK(oo.a[8] == std::vector<long>{5, 5, 6, 6, 8});
    CHECK(oo.a.back() == std::vector<long>{6, 7, 7, 8, 8});
}

TEST_CASE("sequence generation rejects bad parameters") {
    CHECK_THROWS_AS(gen_sequences(ParityCase::EE, 4, 4, 4), ValidationError);   // inequality fails
    CHECK_THROWS_AS(gen_sequences(ParityCase::OO, 8, 12, 4), ValidationError);  // parity mismatch
    CHECK_THROWS_AS(gen_sequences(ParityCase::EE, 1, 4, 2), ValidationError);   // negative cycle budget
}

TEST_CASE("bundle labels at the worked components") {
    auto ee = family(8, 12, 4);
    CHECK(ee.bundles[4].str() == "O(2,4) + O(6,0)");
    CHECK(ee.bundles[3].str() == "O(3,3) + O(3,3)");
    CHECK(ee.bundles[3].summands_isomorphic);
    CHECK(ee.bundles[6].str() == "O(5,1) + L_7(5,1)");

    auto eo = family(7, 12, 5);
    CHECK(eo.bundles[6].str() == "EI(6,0)");
    CHECK(eo.bundles[6].kind == BundleLabel::Kind::EvenIndec);

    auto oe = family(7, 11, 4);
    CHECK(oe.bundles[4].str() == "OI(O(8,3))");
    CHECK(oe.bundles[5].str() == "O(3,2) + O(6,-1)");

    auto oo = family(10, 17, 5);
    CHECK(oo.bundles[8].str() == "EI(8,0)");
    CHECK(oo.bundles[9].str() == "OI(L_10)");
    CHECK(oo.bundles[9].aut_dim() == 0);
    CHECK(oo.bundles[8].aut_dim() == 1);
}

TEST_CASE("component degrees follow the case's multidegree") {
    auto ee = family(8, 12, 4);
    for (long x : ee.degrees) CHECK(x == 12);

    auto oe = family(7, 11, 4);
    long total = 0, full = 0;
    for (long x : oe.degrees) {
        total += x;
        if (x == 11) ++full;
    }
    CHECK(full == 1);
    CHECK(oe.degrees[4] == 11);  // distinguished component 5
    CHECK(total == 6 * 10 + 11);
    CHECK(total - (oe.g - 1) * 2 * oe.table.b == 11);

    auto oo = family(10, 17, 5);
    CHECK(oo.degrees[9] == 17);  // distinguished component 10
    for (size_t i = 0; i + 1 < oo.degrees.size(); ++i) CHECK(oo.degrees[i] == 16);
}

TEST_CASE("gluing constraints carry the matched lines") {
    auto ee = family(8, 12, 4);
    REQUIRE(ee.gluings.size() == 7);
    CHECK(ee.gluings[0].constraints == 0);
    CHECK(ee.gluings[1].constraints == 2);
    CHECK(ee.gluings[1].matched[0] == "O(0,6)|Q -> L_3(1,5)|P");
    CHECK(ee.gluings[1].matched[1] == "L_2(0,6)|Q -> O(1,5)|P");
    std::vector<long> counts;
    for (const auto& eg : ee.gluings) counts.push_back(eg.constraints);
    CHECK(counts == std::vector<long>{0, 2, 0, 0, 2, 0, 2});

    auto eo = family(7, 12, 5);
    counts.clear();
    for (const auto& eg : eo.gluings) counts.push_back(eg.constraints);
    CHECK(counts == std::vector<long>{1, 3, 1, 1, 2, 2});
    CHECK(eo.gluings[0].matched[0] == "ell(V_1,3@Q) -> ell(V_2,3@P)");

    auto oe = family(7, 11, 4);
    counts.clear();
    for (const auto& eg : oe.gluings) counts.push_back(eg.constraints);
    CHECK(counts == std::vector<long>{0, 2, 0, 0, 2, 2});

    auto oo = family(10, 17, 5);
    counts.clear();
    for (const auto& eg : oo.gluings) counts.push_back(eg.constraints);
    CHECK(counts == std::vector<long>{1, 3, 1, 1, 2, 2, 2, 1, 1});
}

TEST_CASE("dimension audit at the worked parameter triples") {
    auto a = dimension_audit(family(8, 12, 4));
    CHECK(a.moduli == 0);
    CHECK(a.aut == 12);
    CHECK(a.gluing == 15);
    CHECK(a.vchoices == 0);
    CHECK(a.total == 3);

    a = dimension_audit(family(7, 12, 5));
    CHECK(a.moduli == 0);
    CHECK(a.aut == 11);
    CHECK(a.gluing == 8);
    CHECK(a.vchoices == 6);
    CHECK(a.total == 3);

    a = dimension_audit(family(7, 11, 4));
    CHECK(a.moduli == 0);
    CHECK(a.aut == 10);
    CHECK(a.gluing == 12);
    CHECK(a.vchoices == 2);
    CHECK(a.total == 4);

    a = dimension_audit(family(10, 17, 5));
    CHECK(a.moduli == 0);
    CHECK(a.aut == 13);
    CHECK(a.gluing == 13);
    CHECK(a.vchoices == 7);
    CHECK(a.total == 7);
}

TEST_CASE("dimension audit at small and negative expected dimensions") {
    auto a = dimension_audit(family(1, 0, 2));
    CHECK(a.total == -3);
    a = dimension_audit(family(2, 2, 2));
    CHECK(a.total == 0);
    CHECK(a.moduli == 1);
    a = dimension_audit(family(3, 2, 2));
    CHECK(a.total == -1);
    a = dimension_audit(family(4, 6, 4));
    CHECK(a.total == -1);
    a = dimension_audit(family(5, 7, 3));
    CHECK(a.total == 3);
    CHECK(a.vchoices == 2);
    a = dimension_audit(family(3, 4, 3));
    CHECK(a.total == 0);
}

TEST_CASE("stability verdicts") {
    CHECK(stability_check(family(8, 12, 4)).status == StableStatus::Stable);
    CHECK(stability_check(family(7, 12, 5)).status == StableStatus::Stable);
    CHECK(stability_check(family(7, 11, 4)).status == StableStatus::Stable);
    CHECK(stability_check(family(10, 17, 5)).status == StableStatus::Stable);

    CHECK(stability_check(family(1, 0, 2)).status == StableStatus::SemistableOnly);
    CHECK(stability_check(family(2, 2, 2)).status == StableStatus::SemistableOnly);
    CHECK(stability_check(family(3, 2, 2)).status == StableStatus::SemistableOnly);
    CHECK(stability_check(family(4, 6, 4)).status == StableStatus::SemistableOnly);
    CHECK(stability_check(family(3, 4, 3)).status == StableStatus::SpecialCase);
    CHECK(stability_check(family(3, 4, 2)).status == StableStatus::Stable);

    for (auto [g, d, k] : std::vector<std::array<long, 3>>{
             {8, 12, 4}, {1, 0, 2}, {3, 4, 3}, {5, 7, 3}, {7, 11, 4}})
        CHECK(stability_check(family(g, d, k)).semistable);
}

TEST_CASE("rendered tables match the golden files") {
    const std::map<std::string, std::array<long, 3>> files = {
        {"ee_g8_d12_k4.txt", {8, 12, 4}},
        {"eo_g7_d12_k5.txt", {7, 12, 5}},
        {"oe_g7_d11_k4.txt", {7, 11, 4}},
        {"oo_g10_d17_k5.txt", {10, 17, 5}},
    };
    for (const auto& [name, p] : files) {
        INFO(name);
        auto rep = family(p[0], p[1], p[2]);
        CHECK(render_table(rep) == slurp(golden_dir() / name));
    }
    // The combined emitter is the four tables joined by blank lines.
    std::string combined;
    combined += slurp(golden_dir() / "ee_g8_d12_k4.txt");
    combined += "\n" + slurp(golden_dir() / "eo_g7_d12_k5.txt");
    combined += "\n" + slurp(golden_dir() / "oe_g7_d11_k4.txt");
    combined += "\n" + slurp(golden_dir() / "oo_g10_d17_k5.txt");
    CHECK(emit_appendix_tables() == combined);
}

TEST_CASE("family sweep: audits, stability, section-choice counts") {
    long built = 0;
    for (long g = 1; g <= 20; ++g) {
        for (long d = g - 2; d <= 2 * g - 2; ++d) {
            for (long k = 2; k <= 10; ++k) {
                BNParams p{g, d, k};
                const auto c = parity_case_of(p);
                if (!case_inequality(p, c).holds) continue;
                INFO("g=" << g << " d=" << d << " k=" << k);
                FamilyReport rep;
                REQUIRE_NOTHROW(rep = build_family(c, g, d, k));
                ++built;

                AuditBreakdown a;
                REQUIRE_NOTHROW(a = dimension_audit(rep));
                CHECK(a.total == rho_special(p));

                for (const auto& eg : rep.gluings) {
                    CHECK(eg.constraints >= 0);
                    CHECK(eg.constraints <= 3);
                    CHECK(static_cast<long>(eg.matched.size()) == eg.constraints);
                }

                // Closed-form one-parameter section-choice counts.
                long expect_v = 0;
                switch (c) {
                    case ParityCase::EE: expect_v = 0; break;
                    case ParityCase::EO: expect_v = p.dprime(); break;
                    case ParityCase::OE: expect_v = p.kprime(); break;
                    case ParityCase::OO: expect_v = p.dprime() - 1; break;
                }
                CHECK(a.vchoices == expect_v);

                auto sv = stability_check(rep);
                CHECK(sv.semistable);
                if (stable_exception(p))
                    CHECK(sv.status == StableStatus::SemistableOnly);
                else if (special_case_triple(p))
                    CHECK(sv.status == StableStatus::SpecialCase);
                else
                    CHECK(sv.status == StableStatus::Stable);
            }
        }
    }
    CHECK(built > 100);
}

TEST_CASE("report assumptions are recorded") {
    auto ee = family(8, 12, 4);
    REQUIRE(ee.assumptions.size() == 1);
    CHECK(ee.assumptions[0] == "chain-adapted-bases");
    auto oo = family(10, 17, 5);
    REQUIRE(oo.assumptions.size() == 2);
    CHECK(oo.assumptions[1] == "indecomposable-line-configuration");
}
