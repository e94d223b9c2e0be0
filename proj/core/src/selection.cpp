#include "fragile/selection.hpp"

#include "fragile/sorting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <queue>
#include <unordered_set>

namespace fragile {

namespace {

constexpr ElementId kPadTag = 0xFFFFFFFFu; // local halver padding, stripped right away

std::uint32_t floor_log2(std::size_t x) { return static_cast<std::uint32_t>(std::bit_width(x)) - 1; }
std::uint32_t ceil_log2(std::size_t x) { return x <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(x - 1)); }

struct NetKey {
    std::uint32_t width;
    HalverKind kind;
    std::uint32_t rounds;
    std::uint64_t seed;
    bool sorter; // full sorting network, kind ignored
    auto operator<=>(const NetKey&) const = default;
};

const ComparatorNetwork& cached_network(const NetKey& key) {
    static std::map<NetKey, ComparatorNetwork> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ComparatorNetwork net = key.sorter
        ? sorting_network(key.width)
        : build_halver(key.width, HalverSpec{key.kind, key.rounds, key.seed});
    return cache.emplace(key, std::move(net)).first->second;
}

void sort_items(std::vector<Item>& v, Comparer& cmp) {
    if (v.size() < 2) return;
    const auto& net = cached_network({static_cast<std::uint32_t>(v.size()),
                                      HalverKind::ExactSort, 0, 0, true});
    execute(net, cmp, v);
}

Item lower_median_by_sort(std::vector<Item> v, Comparer& cmp) {
    sort_items(v, cmp);
    return v[(v.size() + 1) / 2 - 1];
}

// one halver pass; odd widths get a free top dummy that is stripped after
std::pair<std::vector<Item>, std::vector<Item>>
halve(std::vector<Item> s, const HalverSpec& hs, Comparer& cmp) {
    if (s.size() % 2) s.push_back(Item::dummy_high(kPadTag));
    const auto& net = cached_network({static_cast<std::uint32_t>(s.size()), hs.kind,
                                      hs.rounds, hs.seed, hs.kind == HalverKind::ExactSort});
    std::vector<Item> wires = std::move(s);
    execute(net, cmp, wires);
    std::size_t half = wires.size() / 2;
    std::vector<Item> left(wires.begin(), wires.begin() + half);
    std::vector<Item> right(wires.begin() + half, wires.end());
    auto strip = [](std::vector<Item>& v) {
        std::erase_if(v, [](Item x) { return x.kind != 0 && x.id == kPadTag; });
    };
    strip(left);
    strip(right);
    return {std::move(left), std::move(right)};
}

std::uint64_t item_key(Item x) {
    return (static_cast<std::uint64_t>(static_cast<std::uint8_t>(x.kind)) << 32) | x.id;
}

Item det_median_items(std::vector<Item> cur, Comparer& cmp, const HalverSpec& hs) {
    if (cur.empty()) throw EmptyInput("det_median: empty input");
    const std::size_t n_top = cur.size();
    const std::size_t stop =
        std::max<std::size_t>(16, n_top / std::max<std::uint32_t>(1, ceil_log2(n_top)));
    std::vector<Item> aside;

    while (cur.size() > stop) {
        const std::size_t m = cur.size();
        std::uint32_t k = 2 * (floor_log2(floor_log2(m)) / 2);
        if (k < 2) break;

        // stage chains: right-leaning for high pivots, mirrored for low ones
        auto [left0, right0] = halve(cur, hs, cmp);
        std::vector<Item> sk = std::move(right0);
        for (std::uint32_t i = 1; i < k && sk.size() >= 2; ++i) {
            auto [l, r] = halve(std::move(sk), hs, cmp);
            sk = (i % 2 == 1) ? std::move(l) : std::move(r);
        }
        std::vector<Item> skbar = std::move(left0);
        for (std::uint32_t i = 1; i < k && skbar.size() >= 2; ++i) {
            auto [l, r] = halve(std::move(skbar), hs, cmp);
            skbar = (i % 2 == 1) ? std::move(r) : std::move(l);
        }
        if (sk.size() < 4 || skbar.size() < 4) break;
        sort_items(sk, cmp);
        sort_items(skbar, cmp);

        auto mid_half = [](const std::vector<Item>& s) {
            std::size_t q = s.size() / 4;
            std::size_t len = std::min((s.size() + 1) / 2, s.size() - q);
            return std::vector<Item>(s.begin() + q, s.begin() + q + len);
        };
        std::vector<Item> rp = mid_half(sk);   // pivots just above the median
        std::vector<Item> lp = mid_half(skbar); // pivots just below

        // mark phase; round-robin keeps every pivot's extra load <= ceil(m/|P|)
        std::vector<std::int8_t> mark(m, 0); // +1 R, -1 L, 0 none
        for (std::size_t idx = 0; idx < m; ++idx) {
            Item y = cur[idx];
            Item p = rp[idx % rp.size()];
            if (item_key(p) == item_key(y)) p = rp[(idx + 1) % rp.size()];
            if (!cmp.less(y, p)) mark[idx] = +1; // y >= a high pivot: above the median
        }
        for (std::size_t idx = 0; idx < m; ++idx) {
            Item y = cur[idx];
            Item p = lp[idx % lp.size()];
            if (item_key(p) == item_key(y)) p = lp[(idx + 1) % lp.size()];
            if (cmp.less(y, p)) mark[idx] = (mark[idx] == +1) ? 0 : -1;
        }

        std::size_t nl = 0, nr = 0;
        for (std::int8_t v : mark) {
            if (v > 0) ++nr;
            if (v < 0) ++nl;
        }
        std::size_t d = std::min(nl, nr);

        std::unordered_set<std::uint64_t> in_stage;
        for (Item x : sk) in_stage.insert(item_key(x));
        for (Item x : skbar) in_stage.insert(item_key(x));

        std::vector<Item> next;
        next.reserve(m);
        std::size_t dl = d, dr = d;
        for (std::size_t idx = 0; idx < m; ++idx) {
            if (mark[idx] > 0 && dr > 0) { --dr; continue; } // discard above
            if (mark[idx] < 0 && dl > 0) { --dl; continue; } // discard below
            if (in_stage.count(item_key(cur[idx]))) aside.push_back(cur[idx]);
            else next.push_back(cur[idx]);
        }
        cur = std::move(next);
    }

    cur.insert(cur.end(), aside.begin(), aside.end());
    return lower_median_by_sort(std::move(cur), cmp);
}

} // namespace

Item det_median(const std::vector<Item>& xs, Comparer& cmp, const HalverSpec& halver) {
    return det_median_items(xs, cmp, halver);
}

Item det_select(const std::vector<Item>& xs, std::uint32_t t, Comparer& cmp,
                const HalverSpec& halver) {
    const std::size_t n = xs.size();
    if (n == 0) throw EmptyInput("det_select: empty input");
    if (t < 1 || t > n) throw RankOutOfRange("det_select: rank out of range");

    // pad with free dummies until rank t becomes the lower median
    std::size_t pad = n + 1 - 2 * std::min<std::size_t>(t, n + 1 - t);
    std::vector<Item> padded = xs;
    padded.reserve(n + pad);
    bool below = t <= n / 2 || (n % 2 == 1 && t == (n + 1) / 2);
    for (std::size_t i = 0; i < pad; ++i)
        padded.push_back(below ? Item::dummy_low(static_cast<ElementId>(i))
                               : Item::dummy_high(static_cast<ElementId>(i)));
    Item res = det_median_items(std::move(padded), cmp, halver);
    if (res.is_dummy()) throw Error("det_select: dummy selected (internal)");
    return res;
}

namespace {

struct Bucket {
    struct Pivot {
        std::uint64_t load = 0;
        std::uint64_t seq = 0;
        Item item;
        bool marked = false;
        bool operator>(const Pivot& o) const {
            return load != o.load ? load > o.load : seq > o.seq;
        }
    };
    std::priority_queue<Pivot, std::vector<Pivot>, std::greater<Pivot>> heap;
    std::vector<Item> residents; // ground truth of membership
    std::optional<Pivot> cur;
    std::uint64_t uses_left = 0;
    std::uint64_t seq_counter = 0;

    void add(Item x, bool marked) {
        residents.push_back(x);
        heap.push(Pivot{0, seq_counter++, x, marked});
    }
    bool has_pivot() const { return cur.has_value() || !heap.empty(); }
    // least-compared pivot, reused for `window` consecutive probes
    std::pair<Item, bool> take(std::uint64_t window) {
        if (!cur || uses_left == 0) {
            if (cur) heap.push(*cur);
            cur = heap.top();
            heap.pop();
            uses_left = window;
        }
        --uses_left;
        ++cur->load;
        return {cur->item, cur->marked};
    }
};

struct Params {
    std::size_t k;
    std::uint64_t d;
};

Params preset_params(std::size_t n, RMedianPreset preset) {
    double nn = static_cast<double>(n);
    if (preset == RMedianPreset::LogLog) {
        auto k = static_cast<std::size_t>(std::ceil(std::pow(nn, 2.0 / 3.0)));
        auto d = std::max<std::uint64_t>(
            2, static_cast<std::uint64_t>(std::llround(std::pow(nn, 1.0 / 12.0))));
        return {std::min(k, n), d};
    }
    auto k = static_cast<std::size_t>(std::ceil(nn / std::max(1.0, std::log2(nn))));
    auto d = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::log2(nn)));
    return {std::min(k, n), d};
}

// Randomized stand-in for the low-fragility sorter: shuffling first makes a
// plain linear mergesort charge every element O(log m) expected comparisons,
// where a Batcher network would pin Theta(log^2 m) on each wire.
void shuffled_sort(std::vector<Item>& v, Comparer& cmp, Rng& rng) {
    if (v.size() < 2) return;
    rng.shuffle(v);
    v = mergesort(v, MergeKind::Linear, cmp);
}

std::vector<Item> sample_items(const std::vector<Item>& xs, std::size_t take, Rng& rng,
                               std::vector<Item>& rest) {
    std::vector<Item> pool = xs;
    for (std::size_t i = 0; i < take; ++i)
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    std::vector<Item> picked(pool.begin(), pool.begin() + take);
    rest.assign(pool.begin() + take, pool.end());
    return picked;
}

Item r_select(std::vector<Item> xs, std::size_t t, std::size_t top_n,
              const RMedianParams& params, Comparer& cmp, Rng& rng, RMedianStats* stats,
              std::uint64_t depth) {
    const std::size_t n = xs.size();
    if (t < 1 || t > n) throw RankOutOfRange("r_median: internal rank out of range");
    if (stats) stats->recursion_depth = std::max(stats->recursion_depth, depth);

    auto sorted_pick = [&](std::vector<Item> v, std::size_t rank) {
        if (stats) ++stats->base_sorts;
        shuffled_sort(v, cmp, rng);
        return v[rank - 1];
    };

    auto [k, d] = preset_params(n, params.preset);
    if (n <= 64 || k < 16) return sorted_pick(std::move(xs), t);

    double log_n = std::log2(static_cast<double>(n));
    std::size_t n0 = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(k * log_n)));
    std::size_t n1 = static_cast<std::size_t>(std::ceil(3.0 * std::sqrt(k * log_n)));
    std::size_t mid = k / 2;
    if (n0 >= mid) return sorted_pick(std::move(xs), t); // sample too small to filter

    // geometric bucket boundaries; at least two rings even when the growth
    // law overshoots k/4 immediately (ranges are clipped below)
    std::vector<std::size_t> nb = {n0, n1};
    while (true) {
        std::size_t nxt = static_cast<std::size_t>(
            std::ceil(static_cast<double>(nb.back()) * static_cast<double>(d)));
        if (nxt > k / 4) break;
        nb.push_back(nxt);
    }
    if (nb.size() < 3)
        nb.push_back(std::max(nb.back() + 1,
                              static_cast<std::size_t>(std::ceil(
                                  static_cast<double>(nb.back()) * static_cast<double>(d)))));
    const std::size_t b = nb.size() - 1;

    std::vector<Item> rest;
    std::vector<Item> s = sample_items(xs, k, rng, rest);
    shuffled_sort(s, cmp, rng);

    std::vector<Item> c(s.begin() + (mid - n0), s.begin() + std::min(k, mid + n0));
    std::vector<Bucket> lb(b + 1), rb_(b + 1);
    for (std::size_t i = 1; i <= b; ++i) {
        // outermost bucket absorbs every remaining extreme of the sample
        std::size_t llo = (i < b && mid > nb[i]) ? mid - nb[i] : 0;
        std::size_t lhi = mid > nb[i - 1] ? mid - nb[i - 1] : 0;
        for (std::size_t p = llo; p < lhi; ++p) lb[i].add(s[p], false);
        std::size_t rlo = std::min(k, mid + nb[i - 1]);
        std::size_t rhi = i < b ? std::min(k, mid + nb[i]) : k;
        for (std::size_t p = rlo; p < rhi; ++p) rb_[i].add(s[p], false);
    }

    rng.shuffle(rest);
    for (Item x : rest) {
        bool placed = false;
        for (std::size_t j = b - 1; j >= 1 && !placed; --j) {
            if (lb[j].has_pivot()) {
                auto [piv, marked] = lb[j].take(d);
                std::size_t chg = marked ? 1 : 2;
                if (cmp.less(x, piv)) {
                    if (j + chg < b) lb[j + chg].add(x, true);
                    else lb[b].residents.push_back(x);
                    placed = true;
                    break;
                }
            }
            if (rb_[j].has_pivot()) {
                auto [piv, marked] = rb_[j].take(d);
                std::size_t chg = marked ? 1 : 2;
                if (cmp.less(piv, x)) {
                    if (j + chg < b) rb_[j + chg].add(x, true);
                    else rb_[b].residents.push_back(x);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed) c.push_back(x);
    }

    std::size_t sum_l = 0, sum_r = 0;
    for (std::size_t i = 1; i <= b; ++i) {
        sum_l += lb[i].residents.size();
        sum_r += rb_[i].residents.size();
    }
    // guard failures are rare; recover with an exact sort of the level
    if (std::max(sum_l, sum_r) > n / 2) {
        if (stats) ++stats->fallbacks;
        return sorted_pick(std::move(xs), t);
    }

    // base: center small enough (or probing made no headway) -- sort it
    double base_cap = std::min(std::pow(std::log2(static_cast<double>(top_n)), 4.0), 2048.0);
    bool no_progress = c.size() >= (xs.size() * 97) / 100;
    if (static_cast<double>(c.size()) < base_cap || no_progress) {
        if (t <= sum_l || t - sum_l > c.size()) {
            if (stats) ++stats->fallbacks; // a flank swallowed the target rank
            return sorted_pick(std::move(xs), t);
        }
        return sorted_pick(std::move(c), t - sum_l);
    }

    // rebalance the flanks before recursing
    std::int64_t imbalance = static_cast<std::int64_t>(sum_l) - static_cast<std::int64_t>(sum_r);
    auto move_from = [&](std::vector<Bucket>& side, std::size_t count, std::size_t& sum) {
        for (std::size_t i = b; i >= 1 && count > 0; --i) {
            while (count > 0 && !side[i].residents.empty()) {
                c.push_back(side[i].residents.back());
                side[i].residents.pop_back();
                --count;
                --sum;
            }
        }
    };
    if (imbalance > 0) move_from(lb, static_cast<std::size_t>(imbalance), sum_l);
    else if (imbalance < 0) move_from(rb_, static_cast<std::size_t>(-imbalance), sum_r);

    if (t <= sum_l || t - sum_l > c.size()) {
        if (stats) ++stats->fallbacks;
        return sorted_pick(std::move(xs), t);
    }
    return r_select(std::move(c), t - sum_l, top_n, params, cmp, rng, stats, depth + 1);
}

} // namespace

Item r_median(const std::vector<Item>& xs, const RMedianParams& params, Comparer& cmp,
              Rng& rng, RMedianStats* stats) {
    if (xs.empty()) throw EmptyInput("r_median: empty input");
    return r_select(xs, (xs.size() + 1) / 2, xs.size(), params, cmp, rng, stats, 0);
}

} // namespace fragile
