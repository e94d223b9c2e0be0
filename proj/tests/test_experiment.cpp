#include "doctest.h"

#include <cmath>

#include "fragile/experiment.hpp"
#include "fragile/error.hpp"
#include "helpers.hpp"

using namespace fragile;

TEST_CASE("fit_growth recovers a planted curve") {
    auto plant = [](const std::string& name, double c) {
        std::vector<std::pair<std::size_t, double>> pts;
        for (std::size_t n : {1u << 8, 1u << 10, 1u << 12, 1u << 16, 1u << 20}) {
            double ln = std::log2(double(n));
            double y = 0;
            if (name == "log") y = c * ln;
            else if (name == "loglog") y = c * std::log2(ln);
            else if (name == "log2") y = c * ln * ln;
            else if (name == "n") y = c * double(n);
            pts.emplace_back(n, y);
        }
        return pts;
    };
    for (const std::string& name : {"log", "loglog", "log2", "n"}) {
        auto fit = fit_growth(plant(name, 3.5));
        CHECK(fit.best == name);
        CHECK(fit.constant.at(name) == doctest::Approx(3.5));
        CHECK(fit.residual.at(name) == doctest::Approx(0.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(fit_growth({{8, 1.0}}), InvalidConfig);
}

TEST_CASE("tournament experiment has exact per-size means") {
    ExperimentConfig cfg;
    cfg.algorithm = "tournament";
    cfg.sizes = {16, 64, 256};
    cfg.trials = 20;
    cfg.seed = 7;
    auto rep = run_experiment(cfg);
    REQUIRE(rep.per_size.size() == 3);
    for (const auto& sr : rep.per_size) {
        CHECK(sr.failures == 0);
        CHECK(sr.has_target);
        // winner count on a power of two is exactly log2 n, every trial
        CHECK(sr.f_target.mean == doctest::Approx(std::log2(double(sr.n))));
        CHECK(sr.f_target.max == std::uint64_t(std::log2(double(sr.n))));
        // n-1 comparisons for the minimum plus the playoff for second
        CHECK(sr.work.mean >= double(sr.n - 1));
    }
    CHECK(rep.fits.count("f_target_mean") == 1);
    // log and log-base-delta only differ by a constant, so either may win
    const auto& best = rep.fits.at("f_target_mean").best;
    CHECK((best == "log" || best == "log_delta"));
}

TEST_CASE("reports serialize deterministically and round trip") {
    ExperimentConfig cfg;
    cfg.algorithm = "sample-min";
    cfg.sizes = {128, 512};
    cfg.trials = 10;
    cfg.seed = 3;
    auto rep = run_experiment(cfg);
    auto js = to_json(rep);
    CHECK(js == to_json(run_experiment(cfg))); // byte-identical rerun

    auto back = report_from_json(js);
    CHECK(to_json(back) == js);
    CHECK(back.config.algorithm == "sample-min");
    CHECK(back.per_size.size() == 2);

    auto csv = to_csv(rep);
    CHECK(csv.find("algorithm,n,trials,failures") == 0);
    CHECK(csv.find("sample-min,128,10,0") != std::string::npos);
}

TEST_CASE("merge_reports blends duplicate sizes by trial weight") {
    ExperimentConfig a;
    a.algorithm = "tournament";
    a.sizes = {32};
    a.trials = 5;
    a.seed = 1;
    ExperimentConfig b = a;
    b.sizes = {32, 64};
    b.trials = 15;
    b.seed = 2;
    auto merged = merge_reports({run_experiment(a), run_experiment(b)});
    REQUIRE(merged.per_size.size() == 2);
    CHECK(merged.per_size[0].n == 32);
    CHECK(merged.per_size[0].trials == 20);
    CHECK(merged.per_size[0].f_target.mean == doctest::Approx(5.0));
    CHECK(merged.per_size[1].n == 64);

    ExperimentConfig other = a;
    other.algorithm = "heapify";
    CHECK_THROWS_AS(merge_reports({run_experiment(a), run_experiment(other)}), InvalidConfig);
    CHECK_THROWS_AS(merge_reports({}), InvalidConfig);
}

TEST_CASE("config json parsing applies defaults and rejects junk at run time") {
    auto cfg = config_from_json(R"({"algorithm":"r-median","sizes":[100],"trials":2})");
    CHECK(cfg.algorithm == "r-median");
    CHECK(cfg.seed == 1);
    CHECK(cfg.preset == "loglog");
    auto rep = run_experiment(cfg);
    CHECK(rep.per_size[0].failures == 0);

    ExperimentConfig bad = cfg;
    bad.algorithm = "quantum";
    CHECK_THROWS_AS(run_experiment(bad), InvalidConfig);
    bad = cfg;
    bad.sizes = {};
    CHECK_THROWS_AS(run_experiment(bad), InvalidConfig);
    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(run_experiment(bad), InvalidConfig);
    bad = cfg;
    bad.distribution = "sparse";
    CHECK_THROWS_AS(run_experiment(bad), InvalidConfig);
    bad = cfg;
    bad.algorithm = "det-median";
    bad.halver = "random:0";
    CHECK_THROWS_AS(run_experiment(bad), InvalidConfig);
}

TEST_CASE("every algorithm runs and checks out on a small size") {
    for (const std::string& alg : {"tournament", "sample-min", "tree-min", "det-median",
                                   "det-select", "r-median", "mergesort-linear",
                                   "mergesort-exp", "heapify"}) {
        ExperimentConfig cfg;
        cfg.algorithm = alg;
        cfg.sizes = {100};
        cfg.trials = 3;
        auto rep = run_experiment(cfg);
        CHECK(rep.per_size[0].failures == 0);
    }
}
