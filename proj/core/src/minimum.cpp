#include "fragile/minimum.hpp"

#include <algorithm>
#include <numeric>

namespace fragile {

namespace {

// largest b with b^3 <= n^2, i.e. floor(n^(2/3)) without fp rounding trouble
std::size_t floor_pow_two_thirds(std::size_t n) {
    unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n;
    std::size_t lo = 1, hi = n;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo + 1) / 2;
        unsigned __int128 c = static_cast<unsigned __int128>(mid) * mid * mid;
        if (c <= n2) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

// draws a uniform subset of `take` items; leftovers land in `rest`
std::vector<Item> sample_subset(const std::vector<Item>& xs, std::size_t take, Rng& rng,
                                std::vector<Item>& rest) {
    std::vector<Item> pool = xs;
    for (std::size_t i = 0; i < take; ++i)
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    std::vector<Item> picked(pool.begin(), pool.begin() + take);
    rest.assign(pool.begin() + take, pool.end());
    return picked;
}

// Combines two (min, second) pairs.  Pairs are already sorted, so the joint
// minimum takes part in exactly one comparison here.
MinResult combine_sorted_pairs(const std::optional<MinResult>& p,
                               const std::optional<MinResult>& q, Comparer& cmp) {
    if (!p) return *q;
    if (!q) return *p;
    const MinResult *w, *l;
    if (cmp.less(p->minimum, q->minimum)) { w = &*p; l = &*q; }
    else { w = &*q; l = &*p; }
    Item second = l->minimum;
    if (w->second && cmp.less(*w->second, second)) second = *w->second;
    return MinResult{w->minimum, second};
}

} // namespace

namespace {

// plain knockout, minimum only
Item knockout(std::vector<Item> cur, Comparer& cmp) {
    while (cur.size() > 1) {
        std::size_t w = 0;
        std::size_t i = 0;
        for (; i + 1 < cur.size(); i += 2)
            cur[w++] = cmp.less(cur[i], cur[i + 1]) ? cur[i] : cur[i + 1];
        if (i < cur.size()) cur[w++] = cur[i]; // bye
        cur.resize(w);
    }
    return cur[0];
}

} // namespace

MinResult tournament_minimum(const std::vector<Item>& xs, Comparer& cmp) {
    if (xs.empty()) throw EmptyInput("tournament_minimum: empty input");
    if (xs.size() == 1) return {xs[0], std::nullopt};

    struct Entry {
        Item item;
        std::vector<Item> beaten;
    };
    std::vector<Entry> cur;
    cur.reserve(xs.size());
    for (Item x : xs) cur.push_back({x, {}});

    while (cur.size() > 1) {
        std::vector<Entry> next;
        next.reserve((cur.size() + 1) / 2);
        std::size_t i = 0;
        for (; i + 1 < cur.size(); i += 2) {
            std::size_t win = cmp.less(cur[i].item, cur[i + 1].item) ? i : i + 1;
            std::size_t lose = (win == i) ? i + 1 : i;
            cur[win].beaten.push_back(cur[lose].item);
            next.push_back(std::move(cur[win]));
        }
        if (i < cur.size()) next.push_back(std::move(cur[i])); // bye
        cur = std::move(next);
    }
    // playoff among the winner's victims decides second place
    return {cur[0].item, knockout(std::move(cur[0].beaten), cmp)};
}

MinResult sample_minimum(const std::vector<Item>& xs, Comparer& cmp, Rng& rng) {
    const std::size_t n = xs.size();
    if (n == 0) throw EmptyInput("sample_minimum: empty input");
    if (n <= 8) return tournament_minimum(xs, cmp);

    std::vector<Item> outside; // X \ A
    std::vector<Item> a = sample_subset(xs, (n + 1) / 2, rng, outside);
    std::vector<Item> a_rest; // A \ B
    std::size_t bsz = std::min(floor_pow_two_thirds(n), a.size());
    std::vector<Item> b = sample_subset(a, bsz, rng, a_rest);

    MinResult rb = sample_minimum(b, cmp, rng);
    Item thr_b = rb.second ? *rb.second : rb.minimum;
    std::vector<Item> d;
    for (Item x : a_rest)
        if (cmp.less(x, thr_b)) d.push_back(x);

    std::optional<MinResult> rd;
    if (!d.empty()) rd = sample_minimum(d, cmp, rng);
    MinResult ra = combine_sorted_pairs(rd, rb, cmp);

    Item thr_a = ra.second ? *ra.second : ra.minimum;
    std::vector<Item> c;
    for (Item x : outside)
        if (cmp.less(x, thr_a)) c.push_back(x);

    std::optional<MinResult> rc;
    if (!c.empty()) rc = tournament_minimum(c, cmp);
    return combine_sorted_pairs(ra, rc, cmp);
}

Item tree_minimum(const std::vector<Item>& xs, std::uint32_t delta, Comparer& cmp, Rng& rng) {
    if (xs.empty()) throw EmptyInput("tree_minimum: empty input");
    if (delta < 2) throw InvalidConfig("tree_minimum: delta must be >= 2");

    std::vector<Item> cur = xs;
    std::vector<Item> node, next;
    while (cur.size() > 1) {
        next.clear();
        std::size_t i = 0, m = cur.size();
        while (i < m) {
            std::size_t take = std::min<std::size_t>(delta, m - i);
            if (m - i == static_cast<std::size_t>(delta) + 1 && delta >= 3)
                take = delta - 1; // keep the last node at >= 2 children
            node.assign(cur.begin() + i, cur.begin() + i + take);
            next.push_back(take == 1 ? node[0] : sample_minimum(node, cmp, rng).minimum);
            i += take;
        }
        cur = next;
    }
    return cur[0];
}

} // namespace fragile
