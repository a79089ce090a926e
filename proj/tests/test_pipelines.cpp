#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "girthlab/pipelines.hpp"

using namespace girthlab;
using pipelines::CodeSource;

TEST_CASE("sidon_in_zq lexicographic search") {
    auto s = pipelines::sidon_in_zq(7, 3);
    REQUIRE(s.has_value());
    CHECK(*s == std::vector<std::int64_t>{0, 1, 3});
    CHECK_FALSE(pipelines::sidon_in_zq(7, 4).has_value());
    CHECK_FALSE(pipelines::sidon_in_zq(5, 3).has_value());
    CHECK(pipelines::sidon_in_zq(11, 3).has_value());
}

TEST_CASE("theorem13_d5 with the rs substitute") {
    auto [H, rep] = pipelines::theorem13_d5(3, 7, 2, CodeSource::rs);
    CHECK(rep.N == 7203);
    CHECK(rep.E == 16807);
    CHECK(rep.substitute);
    CHECK(rep.girth_lower >= 5);
    CHECK(rep.achieved);
    REQUIRE(rep.girth_exact.has_value());
    CHECK(*rep.girth_exact >= 5);
    CHECK(*rep.girth_exact <= 6);
    CHECK(rep.verification == "both");
    // report identities
    CHECK(rep.N == 3 * H.rprime_size());
    CHECK(rep.E == H.rprime_size() * H.a_set().size());
}

TEST_CASE("theorem13_d5 with the published distance-5 recipe is honestly refuted") {
    pipelines::PipelineOptions opts;
    opts.sample_roots = 800;
    auto [H, rep] = pipelines::theorem13_d5(3, 7, 2, CodeSource::dumer, opts);
    CHECK_FALSE(rep.achieved);
    REQUIRE(rep.girth_exact.has_value());
    CHECK(*rep.girth_exact == 4);
    bool noted = false;
    for (const auto& n : rep.notes)
        if (n.find("code distance is 4") != std::string::npos) noted = true;
    CHECK(noted);
    REQUIRE(rep.upper_cert.has_value());
    REQUIRE(rep.upper_cert->refutation.has_value());
    CHECK(hypergraph::validate_berge_cycle(H, *rep.upper_cert->refutation));
}

TEST_CASE("theorem13_d6 desk run is girth exactly 6") {
    pipelines::PipelineOptions opts;
    opts.bfs_vertex_threshold = 1;  // force the certificate route for speed
    auto [H, rep] = pipelines::theorem13_d6(3, 7, 2, CodeSource::rs, opts);
    CHECK(rep.N == 3 * 16807);
    CHECK(rep.E == 117649);
    REQUIRE(rep.girth_exact.has_value());
    CHECK(*rep.girth_exact == 6);
    CHECK(rep.achieved);
}

TEST_CASE("theorem13 errors") {
    CHECK_THROWS_AS(pipelines::theorem13_d5(4, 7, 2, CodeSource::rs), std::invalid_argument);
    CHECK_THROWS_AS(pipelines::theorem13_d5(3, 7, 4, CodeSource::dumer), std::invalid_argument);
}

TEST_CASE("theorem12 desk-scale substitute run") {
    pipelines::Theorem12Options o;
    o.lambda_override = std::vector<std::int64_t>{1, 2, 4, 8};
    o.p = 157;
    auto [H, rep] = pipelines::theorem12(o);
    CHECK(rep.substitute);
    CHECK(std::stoul(rep.params.at("B_size")) >= 4);
    REQUIRE(rep.girth_exact.has_value());
    CHECK(*rep.girth_exact == 5);
    CHECK(rep.verification == "both");
    CHECK(rep.N == 4 * 157 * 157);
    CHECK_FALSE(rep.family_checked.empty());
}

TEST_CASE("theorem12 fail-closed paths") {
    pipelines::Theorem12Options o;
    o.r = 7;
    CHECK_THROWS_AS(pipelines::theorem12(o), std::invalid_argument);

    o = {};
    o.lambda_override = std::vector<std::int64_t>{1, 2, 5, 6};  // not Sidon
    CHECK_THROWS_AS(pipelines::theorem12(o), std::invalid_argument);

    o = {};
    o.r = 4;
    o.p = 11;  // prime but not in the admissible class of the Davini prefix
    CHECK_THROWS_AS(pipelines::theorem12(o), std::invalid_argument);
}

TEST_CASE("theorem12_family shapes") {
    std::vector<std::int64_t> lam = {1, 2, 4, 8};
    auto fam = pipelines::theorem12_family(lam);
    CHECK_FALSE(fam.empty());
    for (const auto& eq : fam) {
        CHECK(eq.arity() >= 2);
        CHECK(eq.arity() <= 4);
        for (auto c : eq.coeffs) {
            CHECK(c != 0);
            CHECK(std::llabs(c) <= 2 * 8 * 8);
        }
        CHECK(eq.coefficient_sum() == 0);
    }
}

TEST_CASE("theorem14 graph from rs(7,6)") {
    pipelines::PipelineOptions opts;
    opts.bfs_vertex_threshold = 1;  // certificate route
    auto M = codes::rs_parity(7, 6);
    auto [H, rep] = pipelines::theorem14_graph(M, opts);
    CHECK(rep.N == 3 * 16807);
    CHECK(rep.E == 7 * 16807);
    REQUIRE(rep.girth_exact.has_value());
    CHECK(*rep.girth_exact == 6);
    REQUIRE(rep.sphere_row.has_value());
    CHECK(rep.sphere_row->code.n == 7);
    CHECK(rep.sphere_row->code.k == 2);
    CHECK(rep.sphere_row->gap == doctest::Approx(3.0));

    auto M5 = codes::rs_parity(5, 5);
    CHECK_THROWS_AS(pipelines::theorem14_graph(M5), std::invalid_argument);
}

TEST_CASE("reproduce_appendix matches the embedded table") {
    auto diff = pipelines::reproduce_appendix();
    CHECK(diff.rows.size() == 15);
    CHECK(diff.matches == 15);
    for (const auto& rd : diff.rows) CHECK(rd.match);
    auto text = pipelines::appendix_diff_text(diff);
    CHECK(text.find("15/15 rows match") != std::string::npos);
}

TEST_CASE("perturbed lambda diverges from the table") {
    // 545 -> 546 stays Sidon here or not; either way the rows differ
    sidon::Lambda perturbed({1, 35, 161, 170, 251, 546});
    auto rows = sidon::appendix_table(perturbed);
    REQUIRE(rows.size() == 15);
    CHECK(rows[0].product_1 == 6609600);  // untouched prefix rows agree
    bool any_diff = false;
    for (const auto& row : rows)
        if (row.product_2 == 14981760000ULL) any_diff = true;  // {1,2,5,6} value changes
    CHECK_FALSE(any_diff);
}

TEST_CASE("report json parses and carries the claims") {
    pipelines::PipelineOptions opts;
    opts.bfs_vertex_threshold = 1;
    auto [H, rep] = pipelines::theorem13_d6(3, 7, 2, CodeSource::rs, opts);
    auto j = nlohmann::json::parse(pipelines::report_json(rep));
    CHECK(j["theorem"] == "1.3b");
    CHECK(j["girth"] == 6);
    CHECK(j["achieved"] == true);
    CHECK(j["N"] == 50421);
}
