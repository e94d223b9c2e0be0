#include "fragile/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fragile/adversary.hpp"
#include "fragile/minimum.hpp"
#include "fragile/selection.hpp"
#include "fragile/sorting.hpp"

namespace fragile {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kCandidates = {"log",
                                              "loglog",
                                              "log2",
                                              "n",
                                              "log_over_loglog",
                                              "log_delta"};

double curve(const std::string& name, std::size_t n, double delta) {
    double ln = std::log2(std::max<double>(2.0, static_cast<double>(n)));
    double ll = std::log2(std::max(2.0, ln));
    if (name == "log") return ln;
    if (name == "loglog") return ll;
    if (name == "log2") return ln * ln;
    if (name == "n") return static_cast<double>(n);
    if (name == "log_over_loglog") return ln / ll;
    if (name == "log_delta") return ln / std::log2(std::max(2.0, delta));
    throw InvalidConfig("unknown growth candidate: " + name);
}

} // namespace

GrowthFit fit_growth(const std::vector<std::pair<std::size_t, double>>& points, double delta) {
    if (points.size() < 2) throw InvalidConfig("fit_growth: need at least two points");
    GrowthFit fit;
    double best = 0;
    for (const auto& name : kCandidates) {
        double sgg = 0, sgy = 0;
        for (auto [n, y] : points) {
            double g = curve(name, n, delta);
            sgg += g * g;
            sgy += g * y;
        }
        double c = sgg > 0 ? sgy / sgg : 0;
        double rss = 0;
        for (auto [n, y] : points) {
            double e = y - c * curve(name, n, delta);
            rss += e * e;
        }
        fit.constant[name] = c;
        fit.residual[name] = rss;
        if (fit.best.empty() || rss < best) {
            fit.best = name;
            best = rss;
        }
    }
    return fit;
}

namespace {

Aggregate aggregate(std::vector<std::uint64_t> samples) {
    Aggregate a;
    if (samples.empty()) return a;
    std::sort(samples.begin(), samples.end());
    double sum = 0;
    for (auto v : samples) sum += static_cast<double>(v);
    a.mean = sum / static_cast<double>(samples.size());
    auto pct = [&](double p) {
        std::size_t idx = static_cast<std::size_t>(
            std::ceil(p / 100.0 * static_cast<double>(samples.size())));
        idx = std::max<std::size_t>(1, std::min(idx, samples.size()));
        return static_cast<double>(samples[idx - 1]);
    };
    a.p50 = pct(50.0);
    a.p99 = pct(99.0);
    a.max = samples.back();
    return a;
}

std::vector<std::int64_t> make_values(const ExperimentConfig& cfg, std::size_t n, Rng& rng) {
    std::vector<std::int64_t> v(n);
    if (cfg.distribution == "worst-linear") return worst_case_linear_input(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(i + 1);
    if (cfg.distribution == "reverse") std::reverse(v.begin(), v.end());
    else if (cfg.distribution == "random") rng.shuffle(v);
    else if (cfg.distribution != "sorted")
        throw InvalidConfig("unknown distribution: " + cfg.distribution);
    return v;
}

HalverSpec parse_halver(const std::string& s, std::uint64_t seed) {
    if (s == "exact") return HalverSpec{HalverKind::ExactSort, 0, 0};
    if (s.rfind("random:", 0) == 0) {
        std::uint32_t rounds = static_cast<std::uint32_t>(std::stoul(s.substr(7)));
        if (rounds == 0) throw InvalidConfig("random halver needs at least one round");
        return HalverSpec{HalverKind::RandomMatching, rounds, seed};
    }
    throw InvalidConfig("unknown halver spec: " + s);
}

enum class TargetKind { Min, Median, Rank, None };

TargetKind target_kind(const std::string& alg) {
    if (alg == "tournament" || alg == "sample-min" || alg == "tree-min") return TargetKind::Min;
    if (alg == "det-median" || alg == "r-median") return TargetKind::Median;
    if (alg == "det-select") return TargetKind::Rank;
    if (alg == "mergesort-linear" || alg == "mergesort-exp" || alg == "heapify")
        return TargetKind::None;
    throw InvalidConfig("unknown algorithm: " + alg);
}

} // namespace

TrialReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.sizes.empty()) throw InvalidConfig("no input sizes given");
    if (cfg.trials == 0) throw InvalidConfig("trials must be positive");
    TargetKind kind = target_kind(cfg.algorithm);

    TrialReport report;
    report.config = cfg;
    for (std::size_t n : cfg.sizes) {
        if (n == 0) throw InvalidConfig("size 0 is not runnable");
        SizeReport sr;
        sr.n = n;
        sr.trials = cfg.trials;
        sr.has_target = kind != TargetKind::None;
        std::vector<std::uint64_t> f_target, f_rest, f_max, work;

        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = Rng::for_trial(cfg.seed, n, trial);
            std::vector<std::int64_t> values = make_values(cfg, n, rng);
            ValueOracle oracle(values);
            Ledger ledger(n);
            Comparer cmp(oracle, ledger);
            std::vector<Item> items = real_items(n);

            std::uint32_t rank = 0;
            if (kind == TargetKind::Rank)
                rank = cfg.rank == 0 ? static_cast<std::uint32_t>((n + 1) / 2)
                                     : cfg.rank;

            Item result{};
            bool ok = true;
            if (cfg.algorithm == "tournament") {
                result = tournament_minimum(items, cmp).minimum;
            } else if (cfg.algorithm == "sample-min") {
                result = sample_minimum(items, cmp, rng).minimum;
            } else if (cfg.algorithm == "tree-min") {
                result = tree_minimum(items, cfg.delta, cmp, rng);
            } else if (cfg.algorithm == "det-median") {
                result = det_median(items, cmp, parse_halver(cfg.halver, cfg.seed));
            } else if (cfg.algorithm == "det-select") {
                result = det_select(items, rank, cmp, parse_halver(cfg.halver, cfg.seed));
            } else if (cfg.algorithm == "r-median") {
                RMedianParams params;
                params.preset = cfg.preset == "sublog" ? RMedianPreset::SubLog
                                                       : RMedianPreset::LogLog;
                if (cfg.preset != "sublog" && cfg.preset != "loglog")
                    throw InvalidConfig("unknown preset: " + cfg.preset);
                result = r_median(items, params, cmp, rng);
            } else if (cfg.algorithm == "mergesort-linear" || cfg.algorithm == "mergesort-exp") {
                auto out = mergesort(items, cfg.algorithm == "mergesort-linear"
                                                ? MergeKind::Linear
                                                : MergeKind::Exponential,
                                     cmp);
                for (std::size_t i = 0; ok && i + 1 < out.size(); ++i)
                    ok = values[out[i].id] <= values[out[i + 1].id];
            } else { // heapify
                auto out = floyd_heapify(items, cmp);
                ok = is_min_heap(out, values);
            }

            std::optional<ElementId> target;
            if (kind != TargetKind::None) {
                std::uint32_t want_rank = 1;
                if (kind == TargetKind::Median) want_rank = static_cast<std::uint32_t>((n + 1) / 2);
                if (kind == TargetKind::Rank) want_rank = rank;
                std::vector<std::int64_t> sorted = values;
                std::nth_element(sorted.begin(), sorted.begin() + (want_rank - 1), sorted.end());
                std::int64_t want = sorted[want_rank - 1];
                ok = values[result.id] == want && !result.is_dummy();
                target = result.is_dummy() ? ElementId{0} : result.id;
            }
            if (!ok) ++sr.failures;

            Summary s = summarize(ledger, target);
            if (s.f_target) f_target.push_back(*s.f_target);
            f_rest.push_back(s.f_max_rest);
            f_max.push_back(s.f_max);
            work.push_back(s.work);
        }
        sr.f_target = aggregate(std::move(f_target));
        sr.f_max_rest = aggregate(std::move(f_rest));
        sr.f_max = aggregate(std::move(f_max));
        sr.work = aggregate(std::move(work));
        report.per_size.push_back(sr);
    }
    refit(report);
    return report;
}

void refit(TrialReport& report) {
    report.fits.clear();
    if (report.per_size.size() < 2) return;
    double delta = static_cast<double>(report.config.delta);
    std::vector<std::pair<std::size_t, double>> mean_pts, p99_pts;
    bool has_target = true;
    for (const auto& sr : report.per_size) has_target = has_target && sr.has_target;
    for (const auto& sr : report.per_size) {
        const Aggregate& a = has_target ? sr.f_target : sr.f_max;
        mean_pts.emplace_back(sr.n, a.mean);
        p99_pts.emplace_back(sr.n, a.p99);
    }
    std::string stem = has_target ? "f_target" : "f_max";
    report.fits[stem + "_mean"] = fit_growth(mean_pts, delta);
    report.fits[stem + "_p99"] = fit_growth(p99_pts, delta);
}

namespace {

ordered_json agg_json(const Aggregate& a) {
    return ordered_json{{"mean", a.mean}, {"p50", a.p50}, {"p99", a.p99}, {"max", a.max}};
}

Aggregate agg_from(const ordered_json& j) {
    Aggregate a;
    a.mean = j.at("mean").get<double>();
    a.p50 = j.at("p50").get<double>();
    a.p99 = j.at("p99").get<double>();
    a.max = j.at("max").get<std::uint64_t>();
    return a;
}

ordered_json config_json(const ExperimentConfig& c) {
    return ordered_json{{"algorithm", c.algorithm}, {"sizes", c.sizes},
                        {"trials", c.trials},       {"seed", c.seed},
                        {"distribution", c.distribution}, {"delta", c.delta},
                        {"preset", c.preset},       {"halver", c.halver},
                        {"rank", c.rank},           {"check", c.check}};
}

ExperimentConfig config_from(const ordered_json& j) {
    ExperimentConfig c;
    c.algorithm = j.value("algorithm", c.algorithm);
    c.sizes = j.value("sizes", c.sizes);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.distribution = j.value("distribution", c.distribution);
    c.delta = j.value("delta", c.delta);
    c.preset = j.value("preset", c.preset);
    c.halver = j.value("halver", c.halver);
    c.rank = j.value("rank", c.rank);
    c.check = j.value("check", c.check);
    return c;
}

} // namespace

std::string to_json(const TrialReport& report) {
    ordered_json j;
    j["config"] = config_json(report.config);
    j["per_size"] = ordered_json::array();
    for (const auto& sr : report.per_size) {
        ordered_json e{{"n", sr.n},
                       {"trials", sr.trials},
                       {"failures", sr.failures},
                       {"has_target", sr.has_target},
                       {"f_target", agg_json(sr.f_target)},
                       {"f_max_rest", agg_json(sr.f_max_rest)},
                       {"f_max", agg_json(sr.f_max)},
                       {"work", agg_json(sr.work)}};
        j["per_size"].push_back(e);
    }
    j["fits"] = ordered_json::object();
    for (const auto& [stat, fit] : report.fits) {
        ordered_json f{{"best", fit.best},
                       {"constant", fit.constant},
                       {"residual", fit.residual}};
        j["fits"][stat] = f;
    }
    return j.dump(2) + "\n";
}

TrialReport report_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    TrialReport r;
    r.config = config_from(j.at("config"));
    for (const auto& e : j.at("per_size")) {
        SizeReport sr;
        sr.n = e.at("n").get<std::size_t>();
        sr.trials = e.at("trials").get<std::size_t>();
        sr.failures = e.at("failures").get<std::uint64_t>();
        sr.has_target = e.at("has_target").get<bool>();
        sr.f_target = agg_from(e.at("f_target"));
        sr.f_max_rest = agg_from(e.at("f_max_rest"));
        sr.f_max = agg_from(e.at("f_max"));
        sr.work = agg_from(e.at("work"));
        r.per_size.push_back(sr);
    }
    refit(r);
    return r;
}

TrialReport merge_reports(const std::vector<TrialReport>& parts) {
    if (parts.empty()) throw InvalidConfig("report merge: no inputs");
    TrialReport merged = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].config.algorithm != merged.config.algorithm)
            throw InvalidConfig("report merge: algorithms differ");
        for (const auto& sr : parts[i].per_size) merged.per_size.push_back(sr);
    }
    // combine duplicate sizes by trial-weighted average (max stays max)
    std::sort(merged.per_size.begin(), merged.per_size.end(),
              [](const SizeReport& a, const SizeReport& b) { return a.n < b.n; });
    std::vector<SizeReport> out;
    auto blend = [](Aggregate& a, const Aggregate& b, double wa, double wb) {
        a.mean = (a.mean * wa + b.mean * wb) / (wa + wb);
        a.p50 = (a.p50 * wa + b.p50 * wb) / (wa + wb);
        a.p99 = (a.p99 * wa + b.p99 * wb) / (wa + wb);
        a.max = std::max(a.max, b.max);
    };
    for (const auto& sr : merged.per_size) {
        if (!out.empty() && out.back().n == sr.n) {
            SizeReport& dst = out.back();
            auto wa = static_cast<double>(dst.trials), wb = static_cast<double>(sr.trials);
            blend(dst.f_target, sr.f_target, wa, wb);
            blend(dst.f_max_rest, sr.f_max_rest, wa, wb);
            blend(dst.f_max, sr.f_max, wa, wb);
            blend(dst.work, sr.work, wa, wb);
            dst.trials += sr.trials;
            dst.failures += sr.failures;
            dst.has_target = dst.has_target && sr.has_target;
        } else {
            out.push_back(sr);
        }
    }
    merged.per_size = std::move(out);
    refit(merged);
    return merged;
}

std::string to_csv(const TrialReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "algorithm,n,trials,failures,"
          "f_target_mean,f_target_p50,f_target_p99,f_target_max,"
          "f_max_rest_mean,f_max_rest_p50,f_max_rest_p99,f_max_rest_max,"
          "f_max_mean,f_max_p50,f_max_p99,f_max_max,"
          "work_mean,work_p50,work_p99,work_max\n";
    auto row = [&](const Aggregate& a) {
        os << "," << a.mean << "," << a.p50 << "," << a.p99 << "," << a.max;
    };
    for (const auto& sr : report.per_size) {
        os << report.config.algorithm << "," << sr.n << "," << sr.trials << "," << sr.failures;
        row(sr.f_target);
        row(sr.f_max_rest);
        row(sr.f_max);
        row(sr.work);
        os << "\n";
    }
    return os.str();
}

ExperimentConfig config_from_json(const std::string& text) {
    return config_from(ordered_json::parse(text));
}

} // namespace fragile
