#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fragile/oracle.hpp"

namespace fragile {

struct Comparator {
    std::uint32_t low = 0;
    std::uint32_t high = 0;
    bool operator==(const Comparator&) const = default;
};

// Layered comparator network.  Comparators inside one layer must be
// wire-disjoint; a comparator routes the minimum to its low wire.
struct ComparatorNetwork {
    std::uint32_t width = 0;
    std::vector<std::vector<Comparator>> layers;
};

struct NetworkStats {
    std::uint32_t depth = 0;        // after greedy repacking
    std::uint64_t size = 0;         // comparator count
    std::uint32_t layer_count = 0;  // as declared
};

// throws MalformedNetwork on bad wires or non-disjoint layers
NetworkStats depth_and_size(const ComparatorNetwork& net);

// applies the network to an arrangement (items by wire), counting via cmp
void execute(const ComparatorNetwork& net, Comparer& cmp, std::vector<Item>& wires);

// uncounted execution on plain values, for analysis/verification
void execute_values(const ComparatorNetwork& net, std::vector<std::int64_t>& wires);

// sorting network for n = 2^k (throws NotPowerOfTwo otherwise)
ComparatorNetwork batcher_odd_even(std::uint32_t n);

// Batcher network pruned to arbitrary width >= 1
ComparatorNetwork sorting_network(std::uint32_t n);

// exhaustive 0-1 check; throws TooWide for width > 24
bool verify_sorting(const ComparatorNetwork& net);

enum class HalverKind { ExactSort, RandomMatching };

struct HalverSpec {
    HalverKind kind = HalverKind::ExactSort;
    std::uint32_t rounds = 0;     // RandomMatching only
    std::uint64_t seed = 0;       // RandomMatching only
};

// Even-width halver: smallest half is routed (approximately) to the left
// half of the wires.  ExactSort is a full sorting network; RandomMatching
// applies `rounds` random perfect matchings between the two halves.
ComparatorNetwork build_halver(std::uint32_t n, const HalverSpec& spec);

// max fraction (over all 0-1 inputs with at most n/2 zeros resp. ones) of
// the smallest-m landing right / largest-m landing left; throws TooWide > 24
double measure_halver_epsilon(const ComparatorNetwork& net);

// bit i = 1 iff output wire i carries a value larger than `pivot`
std::vector<bool> signature(const std::vector<std::int64_t>& outputs, std::int64_t pivot);

// Verifies that swapping rank-neighboring inputs never changes the signature
// of the non-primary outputs w.r.t. the rank-t value, over random inputs.
// Throws NotSelectionNetwork if output 0 fails to carry the rank-t value.
bool check_signature_invariance(const ComparatorNetwork& net, std::uint32_t t,
                                std::uint32_t trials, std::uint64_t seed);

// same, over caller-supplied inputs (each a permutation of distinct values)
bool check_signature_invariance_on(const ComparatorNetwork& net, std::uint32_t t,
                                   const std::vector<std::vector<std::int64_t>>& inputs);

// Rewires a selection network (rank t at output 0) into a partition network:
// returns perm with perm[i] = final slot of output wire i, so the t smallest
// values occupy slots 0..t-1.  Validated over all 0-1 inputs (width <= 24).
std::vector<std::uint32_t> selection_to_partition(const ComparatorNetwork& net, std::uint32_t t);

// text format: "width N layers L" header, then "layer low high" per line
std::string to_text(const ComparatorNetwork& net);
ComparatorNetwork from_text(std::istream& in);
std::string to_json(const ComparatorNetwork& net);

} // namespace fragile
