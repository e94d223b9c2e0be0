#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fragile/oracle.hpp"
#include "fragile/rng.hpp"

namespace testutil {

// oracle + ledger + comparer in one package
struct Ctx {
    fragile::ValueOracle oracle;
    fragile::Ledger ledger;
    fragile::Comparer cmp;

    explicit Ctx(std::vector<std::int64_t> values, bool record = false)
        : oracle(std::move(values)), ledger(oracle.size(), record), cmp(oracle, ledger) {}
};

inline std::vector<std::int64_t> iota_values(std::size_t n) {
    std::vector<std::int64_t> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

inline std::vector<std::int64_t> shuffled_values(std::size_t n, std::uint64_t seed) {
    auto v = iota_values(n);
    fragile::Rng rng(fragile::Rng::mix(seed));
    rng.shuffle(v);
    return v;
}

inline std::int64_t lower_median_value(std::vector<std::int64_t> v) {
    std::size_t r = (v.size() + 1) / 2;
    std::nth_element(v.begin(), v.begin() + (r - 1), v.end());
    return v[r - 1];
}

inline bool conserved(const fragile::Ledger& l) {
    std::uint64_t sum = 0;
    for (auto c : l.counts()) sum += c;
    return sum == 2 * l.work();
}

inline std::uint32_t clog2(std::size_t n) {
    std::uint32_t r = 0;
    while ((std::size_t{1} << r) < n) ++r;
    return r;
}

} // namespace testutil
