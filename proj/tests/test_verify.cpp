#include "doctest.h"
#include "modrop/verify.hpp"

#include <cmath>
#include <cstring>

using namespace modrop;

TEST_CASE("complex literals") {
    CHECK(parse_complex("1.5") == cplx{1.5, 0.0});
    CHECK(parse_complex("-2i") == cplx{0.0, -2.0});
    CHECK(parse_complex("0.3-0.1i") == cplx{0.3, -0.1});
    CHECK(parse_complex("i") == cplx{0.0, 1.0});
    CHECK(parse_complex("-i") == cplx{0.0, -1.0});
    CHECK(parse_complex("2+i") == cplx{2.0, 1.0});
    CHECK(parse_complex("1e-3+2e-1i") == cplx{1e-3, 0.2});
    CHECK(parse_complex("-1.5e+2-3E-2i") == cplx{-150.0, -0.03});
    for (const char* bad : {"", "1+x", "i1", "--1", "1..2", "nan", "1+2j"}) {
        CHECK_THROWS_AS((void)parse_complex(bad), DomainError);
    }
    for (cplx z : {cplx{0.3, -0.1}, cplx{0.0, 1.0 / 3.0}, cplx{-2.5, 0.0}, cplx{1e-17, 4e5}}) {
        CHECK(parse_complex(format_complex(z)) == z);
    }
}

TEST_CASE("config JSON round trip and validation") {
    RunConfig c;
    c.b = 0.9;
    c.s2 = cplx{0.5, -0.25};
    c.grid_N = 64;
    c.relations = {"qsl2"};
    c.jobs = 2;
    RunConfig d;
    apply_json(to_json(c), d);
    CHECK(to_json(d) == to_json(c));
    CHECK(d.s2 == c.s2);

    RunConfig e;
    CHECK_THROWS_AS(apply_json(nlohmann::json{{"bogus", 1}}, e), DomainError);
    CHECK_THROWS_AS(apply_json(nlohmann::json{{"grid", {{"M", 3}}}}, e), DomainError);
    CHECK_THROWS_AS(apply_json(nlohmann::json{{"b", "x"}}, e), DomainError);
    apply_json(nlohmann::json{{"spectral", {{"u", "0.1+0.2i"}, {"v", -1}}}}, e);
    CHECK(e.u == cplx{0.1, 0.2});
    CHECK(e.v == cplx{-1.0, 0.0});

    RunConfig bad;
    bad.suite = "medium";
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = RunConfig{};
    bad.b = -1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = RunConfig{};
    bad.grid_N = 7;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    RunConfig{}.validate();
}

TEST_CASE("relation filters") {
    const RunConfig cfg;
    CHECK_THROWS_WITH_AS((void)run_relations({}, cfg), doctest::Contains("valid ids"), DomainError);
    CHECK_THROWS_WITH_AS((void)run_relations({"nosuch"}, cfg), doctest::Contains("RLL1"), DomainError);
    // Results come back in registry order.
    const auto r = run_relations({"NM", "gamma-refl"}, cfg);
    REQUIRE(r.size() == 2);
    CHECK(r[0].relation_id == "gamma-refl");
    CHECK(r[1].relation_id == "NM");
    CHECK(r[0].pass);
    CHECK(r[0].residual <= r[0].tolerance);
    CHECK_FALSE(r[0].anchor.empty());
}

TEST_CASE("failures inside a check are reported, not thrown") {
    RunConfig cfg;
    cfg.contour_lift = -1.0;
    const auto r = run_relation("gamma-diff", cfg);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.error.empty());
    CHECK(std::isnan(r.residual));
}

TEST_CASE("fast suite: order, skips and report document") {
    const RunConfig cfg;
    const auto reports = run_suite("fast", cfg);
    const auto ids = relation_ids();
    REQUIRE(reports.size() == ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) CHECK(reports[k].relation_id == ids[k]);
    const auto s = summarize(reports);
    CHECK(s.failed == 0);
    CHECK(s.passed > 20);
    CHECK(s.skipped > 0);
    for (const auto& r : reports) {
        if (r.skipped) CHECK_FALSE(r.reason.empty());
    }

    const auto doc = report_document(reports, cfg);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("version") == version());
    CHECK(doc.at("config") == to_json(cfg));
    const auto back = report_from_json(doc.at("reports").at(0));
    CHECK(back.relation_id == reports[0].relation_id);
    CHECK(std::memcmp(&back.residual, &reports[0].residual, sizeof(double)) == 0);
    const auto table = render_table(doc);
    CHECK(table.find("gamma-diff") != std::string::npos);
    CHECK(table.find("skip") != std::string::npos);
    CHECK_THROWS_AS((void)render_table(nlohmann::json{{"schema", 2}}), DomainError);
    CHECK_THROWS_AS((void)run_suite("medium", cfg), DomainError);
}

TEST_CASE("convergence series") {
    const RunConfig cfg;
    const auto one = convergence_series("FourierD", {20}, cfg);
    CHECK(one.rows.size() == 1);
    CHECK(one.non_increasing);
    const auto t = convergence_series("FourierD", {10, 20, 40}, cfg);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.non_increasing);
    CHECK(t.rows[2].residual < 1e-10);
    const auto yb = convergence_series("YB", {24, 32}, cfg);
    CHECK(yb.non_increasing);
    CHECK(yb.parameter == "N");
    const auto csv = to_csv(t);
    CHECK(csv.rfind("resolution,residual,wall_time_ms\n", 0) == 0);
    CHECK_THROWS_AS((void)convergence_series("RLL1", {32}, cfg), DomainError);
    CHECK_THROWS_AS((void)convergence_series("YB", {}, cfg), DomainError);
    CHECK_THROWS_AS((void)convergence_series("YB", {33}, cfg), DomainError);
}
