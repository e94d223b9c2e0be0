#pragma once

#include <cstdint>
#include <vector>

#include "fragile/network.hpp"
#include "fragile/oracle.hpp"
#include "fragile/rng.hpp"

namespace fragile {

// Deterministic median via halver cascades: per round, build stage chains to
// extract pivot sets just above and just below the middle, mark and discard
// equal counts from both flanks, set the stage sets aside, and finish by
// sorting what is left.  Returns the lower median item.
Item det_median(const std::vector<Item>& xs, Comparer& cmp,
                const HalverSpec& halver = HalverSpec{});

// rank-t selection (1-based) by padding with free dummies until t becomes
// the lower median
Item det_select(const std::vector<Item>& xs, std::uint32_t t, Comparer& cmp,
                const HalverSpec& halver = HalverSpec{});

enum class RMedianPreset { LogLog, SubLog };

struct RMedianParams {
    RMedianPreset preset = RMedianPreset::LogLog;
    // sample size k(n), bucket growth d(n) follow the preset:
    //   LogLog: k = n^(2/3), d = n^(1/12)   SubLog: k = n / log2 n, d = log2 n
};

struct RMedianStats {
    std::uint64_t fallbacks = 0;     // imbalance reroutes into det_median
    std::uint64_t recursion_depth = 0;
    std::uint64_t base_sorts = 0;
};

// Randomized median: sort a sample, bucket its flanks geometrically, probe
// every unsampled element against least-compared flank pivots (reusing a
// pivot for d(n) consecutive probes), discard into the outer buckets, and
// recurse on the surviving center.  Exact on every run.
Item r_median(const std::vector<Item>& xs, const RMedianParams& params, Comparer& cmp,
              Rng& rng, RMedianStats* stats = nullptr);

} // namespace fragile
