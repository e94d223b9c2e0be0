// fragile: experiment runner, network inspector, and adversary driver.
//
// Exit codes: 0 ok, 2 invalid config/arguments, 3 check failure in --check mode.

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fragile/adversary.hpp"
#include "fragile/experiment.hpp"
#include "fragile/minimum.hpp"
#include "fragile/network.hpp"
#include "fragile/sorting.hpp"

namespace {

using namespace fragile;

// resolve an output path against FRAGILE_OUT_DIR unless absolute or empty
std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("FRAGILE_OUT_DIR")) return std::filesystem::path(dir) / p;
    return p;
}

void write_or_print(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    auto path = resolve_out(out);
    std::ofstream f(path);
    if (!f) throw IoFailure("cannot open for writing: " + path.string());
    f << text;
    if (!f) throw IoFailure("write failed: " + path.string());
}

std::string slurp(const std::string& file) {
    std::ifstream f(file);
    if (!f) throw IoFailure("cannot open: " + file);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        sizes.push_back(std::stoull(tok));
    }
    return sizes;
}

int cmd_run(const std::string& config_file, const std::string& alg, const std::string& sizes,
            std::size_t trials, std::uint64_t seed, const std::string& dist, std::uint32_t delta,
            const std::string& preset, const std::string& halver, std::uint32_t rank, bool check,
            const std::string& format, const std::string& out) {
    ExperimentConfig cfg;
    if (!config_file.empty()) cfg = config_from_json(slurp(config_file));
    if (!alg.empty()) cfg.algorithm = alg;
    if (!sizes.empty()) cfg.sizes = parse_sizes(sizes);
    if (trials) cfg.trials = trials;
    if (seed) cfg.seed = seed;
    if (!dist.empty()) cfg.distribution = dist;
    if (delta) cfg.delta = delta;
    if (!preset.empty()) cfg.preset = preset;
    if (!halver.empty()) cfg.halver = halver;
    if (rank) cfg.rank = rank;
    if (check) cfg.check = true;

    TrialReport report = run_experiment(cfg);
    write_or_print(out, format == "csv" ? to_csv(report) : to_json(report));

    if (cfg.check) {
        std::uint64_t bad = 0;
        for (const auto& sr : report.per_size) bad += sr.failures;
        if (bad) {
            std::cerr << "check: " << bad << " failing trial(s)\n";
            return 3;
        }
    }
    return 0;
}

int cmd_network_build(const std::string& kind, std::uint32_t n, std::uint32_t rounds,
                      std::uint64_t seed, const std::string& out) {
    ComparatorNetwork net;
    if (kind == "batcher") {
        net = sorting_network(n);
    } else if (kind == "halver") {
        HalverSpec spec;
        if (rounds) {
            spec.kind = HalverKind::RandomMatching;
            spec.rounds = rounds;
            spec.seed = seed;
        }
        net = build_halver(n, spec);
    } else {
        throw InvalidConfig("unknown network kind: " + kind);
    }
    auto stats = depth_and_size(net);
    std::cerr << kind << " n=" << n << " depth=" << stats.depth << " size=" << stats.size << '\n';
    write_or_print(out, to_text(net));
    return 0;
}

int cmd_network_verify(const std::string& file) {
    std::istringstream in(slurp(file));
    ComparatorNetwork net = from_text(in);
    bool ok = verify_sorting(net);
    std::cout << (ok ? "sorting: yes" : "sorting: no") << '\n';
    return 0;
}

int cmd_network_stats(const std::string& file, bool epsilon) {
    std::istringstream in(slurp(file));
    ComparatorNetwork net = from_text(in);
    auto stats = depth_and_size(net);
    std::cout << "width " << net.width << "\ndepth " << stats.depth << "\nsize " << stats.size
              << "\nlayers " << stats.layer_count << '\n';
    if (epsilon) std::cout << "epsilon " << measure_halver_epsilon(net) << '\n';
    return 0;
}

int cmd_adversary(const std::string& kind, std::size_t n, std::size_t a, std::size_t b) {
    if (kind == "min") {
        MinAdversary adv(n);
        Ledger led(n);
        Comparer cmp(adv, led);
        auto res = tournament_minimum(real_items(n), cmp);
        auto order = adv.certify(res.minimum.id);
        std::uint64_t bound = static_cast<std::uint64_t>(std::bit_width(n - 1));
        std::cout << "n " << n << "\nclaimed_min " << res.minimum.id << "\nmin_count "
                  << led.count(res.minimum.id) << "\nbound " << bound << "\ncertified_order "
                  << order.size() << " elements\n";
        return led.count(res.minimum.id) >= bound ? 0 : 3;
    }
    if (kind == "merge") {
        MergeScapegoat adv(a, b);
        Ledger led(a + b);
        Comparer cmp(adv, led);
        std::vector<Item> ra, rb;
        for (std::size_t i = 0; i < a; ++i) ra.push_back(Item::real(static_cast<ElementId>(i)));
        for (std::size_t i = 0; i < b; ++i)
            rb.push_back(Item::real(static_cast<ElementId>(a + i)));
        merge_runs(ra, rb, MergeKind::Linear, cmp);
        std::cout << "a " << a << "\nb " << b << "\nscapegoat " << adv.scapegoat()
                  << "\nscapegoat_count " << led.count(adv.scapegoat()) << "\nbound "
                  << adv.forced_bound() << '\n';
        return led.count(adv.scapegoat()) >= adv.forced_bound() ? 0 : 3;
    }
    if (kind == "mergesort") {
        MergesortScapegoatCompose adv(n);
        Ledger led(n);
        Comparer cmp(adv, led);
        mergesort(real_items(n), MergeKind::Linear, cmp);
        std::cout << "n " << n << "\nscapegoat " << adv.root_scapegoat() << "\nscapegoat_count "
                  << led.count(adv.root_scapegoat()) << "\nbound " << adv.forced_bound() << '\n';
        return led.count(adv.root_scapegoat()) >= adv.forced_bound() ? 0 : 3;
    }
    throw InvalidConfig("unknown adversary: " + kind);
}

int cmd_report_merge(const std::vector<std::string>& files, const std::string& format,
                     const std::string& out) {
    std::vector<TrialReport> parts;
    for (const auto& f : files) parts.push_back(report_from_json(slurp(f)));
    TrialReport merged = merge_reports(parts);
    write_or_print(out, format == "csv" ? to_csv(merged) : to_json(merged));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fragile-complexity experiment harness"};
    app.require_subcommand(1);

    // run
    std::string config_file, alg, sizes, dist, preset, halver, format = "json", out;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::uint32_t delta = 0, rank = 0;
    bool check = false;
    auto* run = app.add_subcommand("run", "run an experiment and emit a report");
    run->add_option("--config", config_file, "JSON config file (flags override it)");
    run->add_option("--alg", alg,
                    "tournament | sample-min | tree-min | det-median | det-select | "
                    "r-median | mergesort-linear | mergesort-exp | heapify");
    run->add_option("--n", sizes, "comma-separated input sizes");
    run->add_option("--trials", trials, "trials per size");
    run->add_option("--seed", seed, "master seed");
    run->add_option("--dist", dist, "random | sorted | reverse | worst-linear");
    run->add_option("--delta", delta, "tree-min fan-out");
    run->add_option("--preset", preset, "r-median preset: loglog | sublog");
    run->add_option("--halver", halver, "det-median/select halver: exact | random:R");
    run->add_option("--rank", rank, "det-select rank (1-based)");
    run->add_flag("--check", check, "verify each trial against a plain oracle; exit 3 on failure");
    run->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--out", out, "output file (default: stdout; relative to $FRAGILE_OUT_DIR)");

    // network build|verify|stats
    auto* net = app.add_subcommand("network", "build and inspect comparator networks");
    net->require_subcommand(1);
    std::string net_kind, net_file, net_out;
    std::uint32_t net_n = 8, net_rounds = 0;
    std::uint64_t net_seed = 1;
    bool net_eps = false;
    auto* nb = net->add_subcommand("build", "build a network and print its text form");
    nb->add_option("kind", net_kind, "batcher | halver")->required();
    nb->add_option("--n", net_n, "width")->required();
    nb->add_option("--rounds", net_rounds, "halver: random matching rounds (0 = exact)");
    nb->add_option("--seed", net_seed, "halver: matching seed");
    nb->add_option("--out", net_out, "output file (default: stdout)");
    auto* nv = net->add_subcommand("verify", "0-1 check a network from its text form");
    nv->add_option("--file", net_file, "network text file")->required();
    auto* ns = net->add_subcommand("stats", "depth/size of a network from its text form");
    ns->add_option("--file", net_file, "network text file")->required();
    ns->add_flag("--epsilon", net_eps, "also measure halver epsilon (width <= 24)");

    // adversary min|merge|mergesort
    auto* adv = app.add_subcommand("adversary", "drive algorithms against adversary oracles");
    adv->require_subcommand(1);
    std::size_t adv_n = 16, adv_a = 8, adv_b = 8;
    auto* am = adv->add_subcommand("min", "minimum adversary vs tournament");
    am->add_option("--n", adv_n, "element count");
    auto* ag = adv->add_subcommand("merge", "scapegoat adversary vs linear merge");
    ag->add_option("--a", adv_a, "run A length");
    ag->add_option("--b", adv_b, "run B length");
    auto* ac = adv->add_subcommand("mergesort", "composed scapegoat adversary vs mergesort");
    ac->add_option("--n", adv_n, "element count");

    // report merge
    auto* rep = app.add_subcommand("report", "operate on saved reports");
    rep->require_subcommand(1);
    std::vector<std::string> rep_files;
    std::string rep_format = "json", rep_out;
    auto* rm = rep->add_subcommand("merge", "combine JSON reports with matching configs");
    rm->add_option("files", rep_files, "input report files")->required();
    rm->add_option("--format", rep_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    rm->add_option("--out", rep_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
        if (*run)
            return cmd_run(config_file, alg, sizes, trials, seed, dist, delta, preset, halver,
                           rank, check, format, out);
        if (*nb) return cmd_network_build(net_kind, net_n, net_rounds, net_seed, net_out);
        if (*nv) return cmd_network_verify(net_file);
        if (*ns) return cmd_network_stats(net_file, net_eps);
        if (*am) return cmd_adversary("min", adv_n, 0, 0);
        if (*ag) return cmd_adversary("merge", 0, adv_a, adv_b);
        if (*ac) return cmd_adversary("mergesort", adv_n, 0, 0);
        if (*rm) return cmd_report_merge(rep_files, rep_format, rep_out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const fragile::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
