#pragma once

#include <optional>
#include <vector>

#include "fragile/oracle.hpp"
#include "fragile/rng.hpp"

namespace fragile {

struct MinResult {
    Item minimum;
    std::optional<Item> second; // absent when the input has one element
};

// Balanced single-elimination tournament; odd rounds give the last entry a
// bye.  The second-smallest is found by a playoff among the winner's defeated
// opponents, never touching the winner again.
MinResult tournament_minimum(const std::vector<Item>& xs, Comparer& cmp);

// Sampling recursion: half-size sample, |X|^(2/3) sub-sample, filter against
// the sub-sample runner-up, recurse, then filter the unsampled rest.
MinResult sample_minimum(const std::vector<Item>& xs, Comparer& cmp, Rng& rng);

// Fixed-degree reduction tree (left-packed, last node gets 2..delta
// children); every node runs sample_minimum over its children's minima.
Item tree_minimum(const std::vector<Item>& xs, std::uint32_t delta, Comparer& cmp, Rng& rng);

} // namespace fragile
