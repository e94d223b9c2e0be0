#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "fragile/network.hpp"
#include "helpers.hpp"

using namespace fragile;
using namespace testutil;

namespace {

// independent epsilon oracle: run every 0-1 input through the network
// comparator by comparator; epsilon = worst misplaced count relative to n
double epsilon_brute(const ComparatorNetwork& net) {
    std::uint32_t n = net.width, h = n / 2;
    std::uint32_t worst = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> w(n);
        for (std::uint32_t i = 0; i < n; ++i) w[i] = (mask >> i) & 1;
        for (const auto& layer : net.layers)
            for (auto c : layer)
                if (w[c.low] > w[c.high]) std::swap(w[c.low], w[c.high]);
        std::uint32_t zeros = n - static_cast<std::uint32_t>(std::count(w.begin(), w.end(), 1));
        std::uint32_t ones = n - zeros;
        if (zeros <= h) {
            // the zeros are the smallest values; count those landing right
            std::uint32_t leaked = 0;
            for (std::uint32_t i = h; i < n; ++i) leaked += (w[i] == 0);
            worst = std::max(worst, leaked);
        }
        if (ones <= h) {
            std::uint32_t leaked = 0;
            for (std::uint32_t i = 0; i < h; ++i) leaked += (w[i] == 1);
            worst = std::max(worst, leaked);
        }
    }
    return double(worst) / double(n);
}

std::vector<std::vector<std::int64_t>> all_permutations(std::uint32_t n) {
    std::vector<std::int64_t> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<std::vector<std::int64_t>> out;
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

} // namespace

TEST_CASE("batcher odd-even network stats") {
    auto n8 = batcher_odd_even(8);
    auto s8 = depth_and_size(n8);
    CHECK(s8.depth == 6);
    CHECK(s8.size == 19);
    auto s4 = depth_and_size(batcher_odd_even(4));
    CHECK(s4.depth == 3);
    CHECK(s4.size == 5);
    CHECK_THROWS_AS(batcher_odd_even(6), NotPowerOfTwo);
    CHECK_THROWS_AS(batcher_odd_even(0), NotPowerOfTwo);
}

TEST_CASE("batcher and pruned networks sort") {
    for (std::uint32_t n : {2u, 4u, 8u, 16u}) CHECK(verify_sorting(batcher_odd_even(n)));
    for (std::uint32_t n = 1; n <= 17; ++n) {
        auto net = sorting_network(n);
        CHECK(net.width == n);
        CHECK(verify_sorting(net));
    }
    // pruning never increases depth past the parent power of two
    CHECK(depth_and_size(sorting_network(7)).depth <= depth_and_size(batcher_odd_even(8)).depth);
}

TEST_CASE("verify_sorting rejects a non-sorter") {
    ComparatorNetwork net{4, {{{0, 1}}, {{2, 3}}}};
    CHECK_FALSE(verify_sorting(net));
    ComparatorNetwork wide{25, {}};
    CHECK_THROWS_AS(verify_sorting(wide), TooWide);
}

TEST_CASE("depth_and_size repacks and validates") {
    // three singleton layers on disjoint wires repack into one
    ComparatorNetwork net{6, {{{0, 1}}, {{2, 3}}, {{4, 5}}}};
    auto s = depth_and_size(net);
    CHECK(s.depth == 1);
    CHECK(s.size == 3);
    CHECK(s.layer_count == 3);

    ComparatorNetwork bad{4, {{{0, 1}, {1, 2}}}};
    CHECK_THROWS_AS(depth_and_size(bad), MalformedNetwork);
    ComparatorNetwork oob{2, {{{0, 2}}}};
    CHECK_THROWS_AS(depth_and_size(oob), MalformedNetwork);
    ComparatorNetwork loop{2, {{{1, 1}}}};
    CHECK_THROWS_AS(depth_and_size(loop), MalformedNetwork);
}

TEST_CASE("execute sorts items and counts comparisons") {
    auto net = batcher_odd_even(8);
    Ctx c(shuffled_values(8, 42));
    auto wires = real_items(8);
    execute(net, c.cmp, wires);
    for (std::size_t i = 0; i + 1 < wires.size(); ++i) {
        CHECK(c.oracle.values()[wires[i].id] <= c.oracle.values()[wires[i + 1].id]);
    }
    CHECK(c.ledger.work() == 19);
    CHECK(conserved(c.ledger));
}

TEST_CASE("execute on all-equal values keeps id order stable per comparator") {
    auto net = batcher_odd_even(4);
    Ctx c({5, 5, 5, 5});
    auto wires = real_items(4);
    execute(net, c.cmp, wires);
    // equal-as-less resolves every tie toward the smaller id: identity layout
    for (std::size_t i = 0; i < 4; ++i) CHECK(wires[i].id == i);
    CHECK(c.ledger.work() == 5);

    auto narrow = real_items(3);
    CHECK_THROWS_AS(execute(net, c.cmp, narrow), WidthMismatch);
}

TEST_CASE("halver epsilon matches the brute-force oracle") {
    for (std::uint32_t n : {4u, 8u}) {
        auto exact = build_halver(n, HalverSpec{HalverKind::ExactSort, 0, 0});
        CHECK(measure_halver_epsilon(exact) == doctest::Approx(epsilon_brute(exact)));
        CHECK(measure_halver_epsilon(exact) == doctest::Approx(0.0));

        HalverSpec rm{HalverKind::RandomMatching, 3, 7};
        auto net = build_halver(n, rm);
        CHECK(net.width == n);
        CHECK(net.layers.size() == 3);
        for (const auto& layer : net.layers) {
            CHECK(layer.size() == n / 2);
            for (auto c : layer) {
                CHECK(c.low < n / 2);
                CHECK(c.high >= n / 2);
            }
        }
        CHECK(measure_halver_epsilon(net) == doctest::Approx(epsilon_brute(net)));
    }
    // one matching on width 4 strands at most one of two paired zeros: 1/4
    auto one = build_halver(4, HalverSpec{HalverKind::RandomMatching, 1, 1});
    CHECK(epsilon_brute(one) == doctest::Approx(0.25));
    CHECK(measure_halver_epsilon(one) == doctest::Approx(0.25));
    // the empty network halves nothing: both zeros can sit on the right
    ComparatorNetwork empty{4, {}};
    CHECK(epsilon_brute(empty) == doctest::Approx(0.5));
    CHECK(measure_halver_epsilon(empty) == doctest::Approx(0.5));
    CHECK_THROWS_AS(build_halver(5, HalverSpec{}), OddWidth);
}

TEST_CASE("random-matching halvers are seed-deterministic") {
    HalverSpec a{HalverKind::RandomMatching, 4, 99};
    auto n1 = build_halver(16, a), n2 = build_halver(16, a);
    CHECK(n1.layers == n2.layers);
    HalverSpec b{HalverKind::RandomMatching, 4, 100};
    CHECK(build_halver(16, b).layers != n1.layers);
}

TEST_CASE("signature of sorted outputs") {
    std::vector<std::int64_t> out = {3, 1, 7, 5};
    auto sig = signature(out, 3);
    CHECK(sig == std::vector<bool>{false, false, true, true});
}

TEST_CASE("signature invariance holds for sorting networks used as selectors") {
    // a sorting network places rank 1 at output 0; swapping rank-neighboring
    // inputs cannot change which values exceed the minimum
    CHECK(check_signature_invariance_on(batcher_odd_even(4), 1, all_permutations(4)));
    CHECK(check_signature_invariance(batcher_odd_even(8), 1, 1000, 5));
}

TEST_CASE("signature invariance rejects a non-selector") {
    ComparatorNetwork net{4, {{{0, 1}, {2, 3}}}}; // output 0 is not the min
    std::vector<std::vector<std::int64_t>> bad = {{3, 4, 1, 2}};
    CHECK_THROWS_AS(check_signature_invariance_on(net, 1, bad), NotSelectionNetwork);
    CHECK_THROWS_AS(check_signature_invariance(batcher_odd_even(4), 0, 10, 1), RankOutOfRange);
    CHECK_THROWS_AS(check_signature_invariance(batcher_odd_even(4), 5, 10, 1), RankOutOfRange);
}

TEST_CASE("selection network rewires into a partition network") {
    for (std::uint32_t t : {1u, 2u, 4u, 7u}) {
        auto net = batcher_odd_even(8);
        auto perm = selection_to_partition(net, t);
        REQUIRE(perm.size() == 8);
        // a full sorter already partitions: the permutation is the identity
        for (std::uint32_t i = 0; i < 8; ++i) CHECK(perm[i] == i);
    }
    ComparatorNetwork nonsel{4, {{{0, 1}, {2, 3}}}};
    CHECK_THROWS_AS(selection_to_partition(nonsel, 2), NotSelectionNetwork);
}

TEST_CASE("text and json round trips") {
    auto net = batcher_odd_even(8);
    auto text = to_text(net);
    std::istringstream in(text);
    auto back = from_text(in);
    CHECK(back.width == net.width);
    CHECK(back.layers == net.layers);

    std::istringstream junk("width nope layers 2");
    CHECK_THROWS_AS(from_text(junk), MalformedNetwork);

    auto js = to_json(net);
    CHECK(js.find("\"width\":8") != std::string::npos);
    CHECK(js.find("\"layers\":[") != std::string::npos);
}
