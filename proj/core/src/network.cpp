#include "fragile/network.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>

#include "fragile/rng.hpp"

namespace fragile {

NetworkStats depth_and_size(const ComparatorNetwork& net) {
    NetworkStats st;
    st.layer_count = static_cast<std::uint32_t>(net.layers.size());
    std::vector<std::uint32_t> avail(net.width, 0);
    std::vector<bool> used(net.width);
    for (const auto& layer : net.layers) {
        std::fill(used.begin(), used.end(), false);
        for (const auto& c : layer) {
            if (c.low >= c.high || c.high >= net.width)
                throw MalformedNetwork("comparator wires out of order or range");
            if (used[c.low] || used[c.high])
                throw MalformedNetwork("layer is not wire-disjoint");
            used[c.low] = used[c.high] = true;
            std::uint32_t d = std::max(avail[c.low], avail[c.high]) + 1;
            avail[c.low] = avail[c.high] = d;
            st.depth = std::max(st.depth, d);
            st.size += 1;
        }
    }
    return st;
}

void execute(const ComparatorNetwork& net, Comparer& cmp, std::vector<Item>& wires) {
    if (wires.size() != net.width) throw WidthMismatch("execute: arrangement width mismatch");
    depth_and_size(net); // validation
    for (const auto& layer : net.layers)
        for (const auto& c : layer)
            if (cmp.less(wires[c.high], wires[c.low]))
                std::swap(wires[c.low], wires[c.high]);
}

void execute_values(const ComparatorNetwork& net, std::vector<std::int64_t>& wires) {
    if (wires.size() != net.width) throw WidthMismatch("execute_values: width mismatch");
    for (const auto& layer : net.layers)
        for (const auto& c : layer)
            if (wires[c.high] < wires[c.low])
                std::swap(wires[c.low], wires[c.high]);
}

ComparatorNetwork batcher_odd_even(std::uint32_t n) {
    if (n == 0 || !std::has_single_bit(n)) throw NotPowerOfTwo("batcher: width must be 2^k");
    ComparatorNetwork net;
    net.width = n;
    for (std::uint32_t p = 1; p < n; p <<= 1) {
        for (std::uint32_t k = p; k >= 1; k >>= 1) {
            std::vector<Comparator> layer;
            for (std::uint32_t j = k % p; j + k < n; j += 2 * k)
                for (std::uint32_t i = 0; i < k && i + j + k < n; ++i)
                    if ((i + j) / (2 * p) == (i + j + k) / (2 * p))
                        layer.push_back({i + j, i + j + k});
            net.layers.push_back(std::move(layer));
        }
    }
    return net;
}

ComparatorNetwork sorting_network(std::uint32_t n) {
    if (n == 0) throw EmptyInput("sorting_network: zero width");
    std::uint32_t full = std::bit_ceil(n);
    if (full == n && n > 1) return batcher_odd_even(n);
    ComparatorNetwork net;
    net.width = n;
    if (n == 1) return net;
    // prune the 2^k network: wires >= n hold virtual top values that never
    // move, so comparators touching them are no-ops
    for (auto& layer : batcher_odd_even(full).layers) {
        std::vector<Comparator> kept;
        for (const auto& c : layer)
            if (c.high < n) kept.push_back(c);
        if (!kept.empty()) net.layers.push_back(std::move(kept));
    }
    return net;
}

namespace {

// 0-1 simulation of one input mask (bit i = wire i); returns output mask
std::uint32_t run_mask(const ComparatorNetwork& net, std::uint32_t mask) {
    for (const auto& layer : net.layers)
        for (const auto& c : layer) {
            std::uint32_t a = (mask >> c.low) & 1u, b = (mask >> c.high) & 1u;
            if (a > b) mask ^= (1u << c.low) | (1u << c.high);
        }
    return mask;
}

} // namespace

bool verify_sorting(const ComparatorNetwork& net) {
    if (net.width > 24) throw TooWide("verify_sorting: width above 0-1 cap (24)");
    depth_and_size(net);
    std::uint32_t w = net.width;
    for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
        std::uint32_t out = run_mask(net, mask);
        std::uint32_t ones = static_cast<std::uint32_t>(std::popcount(mask));
        std::uint32_t sorted = ones == 0 ? 0 : (((1u << ones) - 1) << (w - ones));
        if (out != sorted) return false;
    }
    return true;
}

ComparatorNetwork build_halver(std::uint32_t n, const HalverSpec& spec) {
    if (n == 0) throw EmptyInput("build_halver: zero width");
    if (n % 2 != 0) throw OddWidth("build_halver: width must be even");
    if (spec.kind == HalverKind::ExactSort) return sorting_network(n);
    ComparatorNetwork net;
    net.width = n;
    Rng rng(Rng::mix(spec.seed ^ (0x68616c66ull + n)));
    std::uint32_t half = n / 2;
    std::vector<std::uint32_t> right(half);
    for (std::uint32_t r = 0; r < spec.rounds; ++r) {
        std::iota(right.begin(), right.end(), half);
        rng.shuffle(right);
        std::vector<Comparator> layer(half);
        for (std::uint32_t i = 0; i < half; ++i) layer[i] = {i, right[i]};
        net.layers.push_back(std::move(layer));
    }
    return net;
}

double measure_halver_epsilon(const ComparatorNetwork& net) {
    if (net.width > 24) throw TooWide("measure_halver_epsilon: width above 0-1 cap (24)");
    if (net.width % 2 != 0) throw OddWidth("measure_halver_epsilon: width must be even");
    std::uint32_t w = net.width, half = w / 2;
    std::uint32_t left_mask = (1u << half) - 1;
    std::uint32_t worst_num = 0; // worst misplaced count (epsilon = worst / w)
    for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
        std::uint32_t out = run_mask(net, mask);
        std::uint32_t ones = static_cast<std::uint32_t>(std::popcount(mask));
        std::uint32_t zeros = w - ones;
        if (zeros <= half) {
            // zeros are the smallest-m; count the ones that leaked right
            std::uint32_t zr = half - static_cast<std::uint32_t>(std::popcount(out >> half));
            worst_num = std::max(worst_num, zr);
        }
        if (ones <= half) {
            std::uint32_t ol = static_cast<std::uint32_t>(std::popcount(out & left_mask));
            worst_num = std::max(worst_num, ol);
        }
    }
    return static_cast<double>(worst_num) / static_cast<double>(w);
}

std::vector<bool> signature(const std::vector<std::int64_t>& outputs, std::int64_t pivot) {
    std::vector<bool> sig(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) sig[i] = outputs[i] > pivot;
    return sig;
}

namespace {

std::int64_t rank_value(std::vector<std::int64_t> v, std::uint32_t t) {
    std::nth_element(v.begin(), v.begin() + (t - 1), v.end());
    return v[t - 1];
}

bool invariance_for_input(const ComparatorNetwork& net, std::uint32_t t,
                          const std::vector<std::int64_t>& input) {
    std::uint32_t n = net.width;
    if (input.size() != n) throw WidthMismatch("signature check: input width mismatch");
    std::int64_t pivot = rank_value(input, t);

    auto run = [&](const std::vector<std::int64_t>& in) {
        std::vector<std::int64_t> wires = in;
        execute_values(net, wires);
        if (wires[0] != pivot)
            throw NotSelectionNetwork("output 0 does not carry the rank-t value");
        return signature(wires, pivot);
    };

    std::vector<bool> base = run(input);
    // sorted copy to locate rank-neighboring values
    std::vector<std::int64_t> sorted = input;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t r = 0; r + 1 < n; ++r) {
        std::vector<std::int64_t> swapped = input;
        auto pa = std::find(swapped.begin(), swapped.end(), sorted[r]);
        auto pb = std::find(swapped.begin(), swapped.end(), sorted[r + 1]);
        std::iter_swap(pa, pb);
        std::vector<bool> sig = run(swapped);
        // output 0 is the selected value itself; compare the rest
        for (std::uint32_t i = 1; i < n; ++i)
            if (sig[i] != base[i]) return false;
    }
    return true;
}

} // namespace

bool check_signature_invariance_on(const ComparatorNetwork& net, std::uint32_t t,
                                   const std::vector<std::vector<std::int64_t>>& inputs) {
    if (t == 0 || t > net.width) throw RankOutOfRange("signature check: bad rank");
    for (const auto& in : inputs)
        if (!invariance_for_input(net, t, in)) return false;
    return true;
}

bool check_signature_invariance(const ComparatorNetwork& net, std::uint32_t t,
                                std::uint32_t trials, std::uint64_t seed) {
    if (t == 0 || t > net.width) throw RankOutOfRange("signature check: bad rank");
    Rng rng(Rng::mix(seed ^ 0x516e61ull));
    std::vector<std::int64_t> vals(net.width);
    std::iota(vals.begin(), vals.end(), 1);
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
        rng.shuffle(vals);
        if (!invariance_for_input(net, t, vals)) return false;
    }
    return true;
}

std::vector<std::uint32_t> selection_to_partition(const ComparatorNetwork& net, std::uint32_t t) {
    std::uint32_t n = net.width;
    if (t == 0 || t > n) throw RankOutOfRange("selection_to_partition: bad rank");
    if (n > 24) throw TooWide("selection_to_partition: width above 0-1 cap (24)");

    // probe with scrambled distinct values (a sorted probe is a fixed point
    // of any comparator network and would reveal nothing); the signature
    // w.r.t. the rank-t value tells which outputs carry small-side values
    std::vector<std::int64_t> wires(n);
    std::iota(wires.begin(), wires.end(), 1);
    Rng rng(Rng::mix(0x9a27ull ^ (static_cast<std::uint64_t>(n) << 8) ^ t));
    rng.shuffle(wires);
    execute_values(net, wires);
    std::vector<std::uint32_t> perm(n);
    std::uint32_t next_small = 0, next_large = t;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (wires[i] <= static_cast<std::int64_t>(t)) {
            if (next_small >= t) throw NotSelectionNetwork("probe run: small side overflow");
            perm[i] = next_small++;
        } else {
            if (next_large >= n) throw NotSelectionNetwork("probe run: large side overflow");
            perm[i] = next_large++;
        }
    }

    // 0-1 validation: after rewiring, the first t slots must hold the t smallest
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::uint32_t out = run_mask(net, mask);
        std::uint32_t zeros = n - static_cast<std::uint32_t>(std::popcount(out));
        std::uint32_t zeros_front = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (perm[i] < t && ((out >> i) & 1u) == 0) ++zeros_front;
        if (zeros_front != std::min(t, zeros))
            throw NotSelectionNetwork("0-1 validation failed after rewiring");
    }
    return perm;
}

std::string to_text(const ComparatorNetwork& net) {
    std::ostringstream os;
    os << "width " << net.width << " layers " << net.layers.size() << "\n";
    for (std::size_t l = 0; l < net.layers.size(); ++l)
        for (const auto& c : net.layers[l])
            os << l << " " << c.low << " " << c.high << "\n";
    return os.str();
}

ComparatorNetwork from_text(std::istream& in) {
    std::string kw1, kw2;
    std::uint32_t width = 0;
    std::size_t layers = 0;
    if (!(in >> kw1 >> width >> kw2 >> layers) || kw1 != "width" || kw2 != "layers")
        throw MalformedNetwork("bad header, expected 'width N layers L'");
    ComparatorNetwork net;
    net.width = width;
    net.layers.resize(layers);
    std::size_t l;
    Comparator c;
    while (in >> l >> c.low >> c.high) {
        if (l >= layers) throw MalformedNetwork("layer index out of range");
        net.layers[l].push_back(c);
    }
    if (!in.eof() && in.fail() && !in.bad()) {
        in.clear();
        std::string rest;
        if (in >> rest) throw MalformedNetwork("trailing garbage in network file");
    }
    depth_and_size(net); // validate
    return net;
}

std::string to_json(const ComparatorNetwork& net) {
    std::ostringstream os;
    os << "{\"width\":" << net.width << ",\"layers\":[";
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        if (l) os << ",";
        os << "[";
        for (std::size_t i = 0; i < net.layers[l].size(); ++i) {
            if (i) os << ",";
            os << "[" << net.layers[l][i].low << "," << net.layers[l][i].high << "]";
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

} // namespace fragile
