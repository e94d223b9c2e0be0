#pragma once

#include <cstdint>
#include <vector>

#include "fragile/oracle.hpp"

namespace fragile {

enum class MergeKind { Linear, Exponential };

// merges two sorted runs; Exponential uses doubling + binary search with a
// virtual top sentinel that never touches the ledger
std::vector<Item> merge_runs(const std::vector<Item>& a, const std::vector<Item>& b,
                             MergeKind kind, Comparer& cmp);

// top-down mergesort, left half gets ceil(n/2) elements
std::vector<Item> mergesort(const std::vector<Item>& xs, MergeKind kind, Comparer& cmp);

// values (n, 1, 2, ..., n-1): drives linear mergesort into Theta(n) on one element
std::vector<std::int64_t> worst_case_linear_input(std::size_t n);

// Floyd-style bottom-up min-heap construction; sift-down uses two
// comparisons per level (child vs child, then parent vs smaller child).
// Returns the heap arrangement.
std::vector<Item> floyd_heapify(const std::vector<Item>& xs, Comparer& cmp);

bool is_min_heap(const std::vector<Item>& xs, const std::vector<std::int64_t>& values);

} // namespace fragile
