#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "nlew/rng.hpp"
#include "nlew/scan.hpp"

using namespace nlew;

namespace {

Json base_config() {
    return Json{
        {"state",
         {{"family", "isotropic2"},
          {"params", {{"alpha", {{"start", 0.9}, {"stop", 1.0}, {"step", 0.01}}}}}}},
        {"witness", {{"family", "wlp"}, {"params", {{"p", 0.5213}}}}},
        {"kinds", {"WNL1"}},
        {"seed", 42}};
}

}  // namespace

TEST_CASE("grid axes") {
    GridAxis axis{"x", 0.0, 1.0, 0.25, false};
    CHECK(axis.points() == 5);
    CHECK(axis.at(0) == 0.0);
    CHECK(axis.at(4) == 1.0);

    GridAxis fixed{"y", 0.7, 0.7, 1.0, true};
    CHECK(fixed.points() == 1);
    CHECK(fixed.at(0) == 0.7);
}

TEST_CASE("config parsing and validation errors name the field") {
    CHECK_NOTHROW(parse_sweep_config(base_config()));

    Json no_state = base_config();
    no_state.erase("state");
    CHECK_THROWS_WITH_AS(parse_sweep_config(no_state), doctest::Contains("state"),
                         std::invalid_argument);

    Json bad_family = base_config();
    bad_family["state"]["family"] = "unknown_family";
    CHECK_THROWS_AS(parse_sweep_config(bad_family), std::invalid_argument);

    Json bad_step = base_config();
    bad_step["state"]["params"]["alpha"]["step"] = -0.1;
    CHECK_THROWS_WITH_AS(parse_sweep_config(bad_step),
                         doctest::Contains("state.params.alpha.step"),
                         std::invalid_argument);

    Json bad_kind = base_config();
    bad_kind["kinds"] = {"WNL7"};
    CHECK_THROWS_AS(parse_sweep_config(bad_kind), std::invalid_argument);

    Json extra_param = base_config();
    extra_param["state"]["params"]["beta"] = 0.5;
    CHECK_THROWS_WITH_AS(parse_sweep_config(extra_param), doctest::Contains("beta"),
                         std::invalid_argument);

    Json no_witness = base_config();
    no_witness.erase("witness");
    CHECK_THROWS_WITH_AS(parse_sweep_config(no_witness), doctest::Contains("witness"),
                         std::invalid_argument);

    Json mismatch = base_config();
    mismatch["witness"]["family"] = "wlc";
    CHECK_THROWS_WITH_AS(parse_sweep_config(mismatch),
                         doctest::Contains("dimension mismatch"),
                         std::invalid_argument);
}

TEST_CASE("detect sweep recovers the isotropic detection interval") {
    SweepConfig config = parse_sweep_config(base_config());
    config.bisect_tol = 1e-6;
    const DetectionReport report = run_detect(config);
    CHECK(report.rows.size() == 11);

    REQUIRE(report.intervals.size() == 1);
    const DetectionInterval& iv = report.intervals[0];
    CHECK(iv.kind == NlewKind::Wnl1);
    CHECK(iv.axis == "alpha");
    CHECK(std::abs(iv.lo - 0.96799) <= 1e-3);
    CHECK(iv.hi == 1.0);
    CHECK(iv.hi_at_domain_edge);
    CHECK_FALSE(iv.lo_at_domain_edge);
    CHECK(iv.verified);

    // endpoints bracket a sign change: inside negative, outside positive
    const WitnessOperator w = wl_p(0.5213);
    CHECK(detection_function(NlewKind::Wnl1, &w,
                             make_family_state("isotropic2", {iv.lo + 1e-4}),
                             std::nullopt) < 0);
    CHECK(detection_function(NlewKind::Wnl1, &w,
                             make_family_state("isotropic2", {iv.lo - 1e-4}),
                             std::nullopt) > 0);
}

TEST_CASE("sweep with no detections reports no intervals") {
    Json cfg = base_config();
    cfg["state"]["params"]["alpha"] = {{"start", 0.0}, {"stop", 0.3}, {"step", 0.1}};
    const DetectionReport report = run_detect(parse_sweep_config(cfg));
    CHECK(report.rows.size() == 4);
    CHECK(report.intervals.empty());
    for (const auto& row : report.rows) CHECK(row.eval_ok[0]);
}

TEST_CASE("csv output is deterministic and stable") {
    const SweepConfig config = parse_sweep_config(base_config());
    const std::string csv1 = detection_csv(run_detect(config));
    const std::string csv2 = detection_csv(run_detect(config));
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("family,alpha,p,ppt_class,tr_wl,WNL1,intermediates_digest", 0) ==
          0);

    const Json j = detection_json(run_detect(config));
    CHECK(j.at("rows").size() == 11);
    CHECK(j.at("rows")[0].contains("evaluations"));
}

TEST_CASE("invalid construction regions are flagged and skipped") {
    Json cfg;
    cfg["state"] = {{"family", "rho_beta"},
                    {"params",
                     {{"beta", {{"start", 0.71}, {"stop", 0.80}, {"step", 0.01}}}}}};
    cfg["kinds"] = {"DV_NL"};
    const DetectionReport report = run_detect(parse_sweep_config(cfg));
    int flagged = 0, ok = 0;
    for (const auto& row : report.rows) {
        if (row.eval_ok[0]) ++ok;
        else ++flagged;
    }
    CHECK(flagged > 0);  // construction undefined below the validity boundary
    CHECK(ok > 0);
    const std::string csv = detection_csv(report);
    CHECK(csv.find("error") != std::string::npos);
    REQUIRE(report.intervals.size() == 1);
    CHECK(std::abs(report.intervals[0].lo - 0.7308) <= 1e-3);
    CHECK(report.intervals[0].verified);
}

TEST_CASE("matrix json schema round-trips") {
    std::mt19937_64 rng(3);
    const Matrix m = random_complex(3, 5, rng);
    const Json j = matrix_to_json(m);
    CHECK(j.at("rows") == 3);
    CHECK(j.at("cols") == 5);
    CHECK((matrix_from_json(j) - m).cwiseAbs().maxCoeff() == 0.0);

    Json bad = j;
    bad["re"] = std::vector<double>{1.0};
    CHECK_THROWS_AS(matrix_from_json(bad), std::invalid_argument);
}

TEST_CASE("omitted step defaults to a 200-point axis") {
    Json cfg = base_config();
    cfg["state"]["params"]["alpha"] = {{"start", 0.0}, {"stop", 1.0}};
    const SweepConfig config = parse_sweep_config(cfg);
    CHECK(config.state_axes[0].points() == 200);
}

TEST_CASE("sepmax override reproduces a fixed-constant wnl4 sweep") {
    Json cfg;
    cfg["state"] = {{"family", "horodecki"},
                    {"params",
                     {{"gamma", {{"start", 3.0}, {"stop", 5.0}, {"step", 0.05}}}}}};
    cfg["witness"] = {{"family", "wlc"}, {"params", Json::object()}};
    cfg["kinds"] = {"WNL4"};
    cfg["sepmax_override"] = 0.040155;
    SweepConfig config = parse_sweep_config(cfg);
    config.bisect_tol = 1e-6;
    const DetectionReport report = run_detect(config);
    REQUIRE(report.intervals.size() == 1);
    CHECK(std::abs(report.intervals[0].lo - 3.7387) <= 1e-3);
    CHECK(report.intervals[0].hi == 5.0);
    CHECK(report.intervals[0].hi_at_domain_edge);
    CHECK(report.intervals[0].verified);

    // with the solved (correct) separable maximum the same sweep is empty
    cfg.erase("sepmax_override");
    SweepConfig solved = parse_sweep_config(cfg);
    solved.sepmax_restarts = 8;
    CHECK(run_detect(solved).intervals.empty());
}

TEST_CASE("linear dv detection requires a valid witness") {
    const DensityMatrix low = make_family_state("rho_beta", {0.715});
    const NlewEvaluation e = dv_l_evaluate(low);
    CHECK(e.value < 0);
    CHECK_FALSE(e.witness_valid);
    CHECK(detection_function(NlewKind::DvL, nullptr, low, std::nullopt) > 0);

    const DensityMatrix mid = make_family_state("rho_beta", {0.76});
    CHECK(detection_function(NlewKind::DvL, nullptr, mid, std::nullopt) < 0);
}

TEST_CASE("sep_max sidecar cache") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "nlew_sepmax_cache_test.json").string();
    std::remove(path.c_str());

    const WitnessOperator wc = wl_c();
    const double first = cached_sep_max(wc, 8, 42, path);
    CHECK(std::filesystem::exists(path));
    const double second = cached_sep_max(wc, 8, 42, path);
    CHECK(first == second);
    CHECK(first == doctest::Approx(81.0 / 1089).epsilon(1e-10));

    // closed form for wlp bypasses the cache entirely
    CHECK(cached_sep_max(wl_p(0.25), 8, 42, "") ==
          doctest::Approx(closed_form_wlp(0.25)).epsilon(1e-15));
    std::remove(path.c_str());
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3, 1e-17, 123456.789, -0.97997}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
}
