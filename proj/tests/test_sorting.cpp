#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fragile/sorting.hpp"
#include "helpers.hpp"

using namespace fragile;
using namespace testutil;

namespace {

std::vector<std::int64_t> values_of(const std::vector<Item>& items, const Ctx& c) {
    std::vector<std::int64_t> out;
    out.reserve(items.size());
    for (Item x : items) out.push_back(c.oracle.values()[x.id]);
    return out;
}

} // namespace

TEST_CASE("linear merge hand trace") {
    // runs (1,3) and (2,4): three comparisons, head of A charged twice
    Ctx c({1, 3, 2, 4});
    auto out = merge_runs({Item::real(0), Item::real(1)}, {Item::real(2), Item::real(3)},
                          MergeKind::Linear, c.cmp);
    CHECK(values_of(out, c) == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(c.ledger.work() == 3);
    CHECK(conserved(c.ledger));
}

TEST_CASE("exponential merge hand trace") {
    // A = (10), B = (1..8): probes at positions 1,2,4,8 all answer 'greater',
    // position 16 is the free virtual top, the binary search stays free
    Ctx c({10, 1, 2, 3, 4, 5, 6, 7, 8});
    std::vector<Item> b;
    for (ElementId i = 1; i <= 8; ++i) b.push_back(Item::real(i));
    auto out = merge_runs({Item::real(0)}, b, MergeKind::Exponential, c.cmp);
    CHECK(values_of(out, c) == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8, 10});
    CHECK(c.ledger.count(0) == 4);
    CHECK(c.ledger.work() == 4);
}

TEST_CASE("both merges agree with std::merge on random runs") {
    for (std::size_t na : {0u, 1u, 5u, 33u}) {
        for (std::size_t nb : {0u, 1u, 7u, 32u}) {
            if (na + nb == 0) continue;
            auto vals = shuffled_values(na + nb, 1000 * na + nb);
            std::vector<Item> a, b;
            for (std::size_t i = 0; i < na; ++i) a.push_back(Item::real(static_cast<ElementId>(i)));
            for (std::size_t i = na; i < na + nb; ++i)
                b.push_back(Item::real(static_cast<ElementId>(i)));
            Ctx probe(vals);
            std::sort(a.begin(), a.end(),
                      [&](Item x, Item y) { return vals[x.id] < vals[y.id]; });
            std::sort(b.begin(), b.end(),
                      [&](Item x, Item y) { return vals[x.id] < vals[y.id]; });
            for (auto kind : {MergeKind::Linear, MergeKind::Exponential}) {
                Ctx c(vals);
                auto out = merge_runs(a, b, kind, c.cmp);
                auto got = values_of(out, c);
                CHECK(std::is_sorted(got.begin(), got.end()));
                CHECK(got.size() == na + nb);
                CHECK(conserved(c.ledger));
            }
        }
    }
}

TEST_CASE("mergesort sorts, both kinds") {
    for (std::size_t n : {1u, 2u, 3u, 17u, 64u, 257u}) {
        for (auto kind : {MergeKind::Linear, MergeKind::Exponential}) {
            Ctx c(shuffled_values(n, 5 * n + static_cast<int>(kind)));
            auto out = mergesort(real_items(n), kind, c.cmp);
            auto got = values_of(out, c);
            CHECK(std::is_sorted(got.begin(), got.end()));
            CHECK(got.size() == n);
        }
    }
}

TEST_CASE("sentinel-chasing input hammers linear merge but not exponential") {
    std::size_t n = 1 << 10;
    auto vals = worst_case_linear_input(n);
    CHECK(vals[0] == static_cast<std::int64_t>(n));
    CHECK(vals[1] == 1);

    Ctx lin(vals);
    mergesort(real_items(n), MergeKind::Linear, lin.cmp);
    CHECK(lin.ledger.count(0) >= 256);

    Ctx expo(vals);
    mergesort(real_items(n), MergeKind::Exponential, expo.cmp);
    auto s = summarize(expo.ledger);
    CHECK(s.f_max <= 400);

    CHECK_THROWS_AS(worst_case_linear_input(0), EmptyInput);
}

TEST_CASE("floyd heapify: exhaustive small inputs") {
    std::vector<std::int64_t> v = {1, 2, 3, 4, 5, 6, 7};
    do {
        Ctx c(v);
        auto h = floyd_heapify(real_items(7), c.cmp);
        CHECK(is_min_heap(h, c.oracle.values()));
        CHECK(conserved(c.ledger));
    } while (std::next_permutation(v.begin(), v.end()));
}

TEST_CASE("floyd heapify cost on structured inputs") {
    // an ascending array is already a min-heap: every internal node pays
    // exactly two comparisons and nothing moves
    Ctx sorted(iota_values(7));
    auto h = floyd_heapify(real_items(7), sorted.cmp);
    CHECK(is_min_heap(h, sorted.oracle.values()));
    CHECK(sorted.ledger.work() == 6);

    std::size_t n = 1 << 12;
    std::vector<std::int64_t> rev(n);
    for (std::size_t i = 0; i < n; ++i) rev[i] = static_cast<std::int64_t>(n - i);
    Ctx c(rev);
    auto heap = floyd_heapify(real_items(n), c.cmp);
    CHECK(is_min_heap(heap, c.oracle.values()));
    auto s = summarize(c.ledger);
    CHECK(s.work <= 2 * n);
    CHECK(double(s.f_max) <= 3 * std::log2(double(n)));
}
