#include "fragile/sorting.hpp"

#include <algorithm>
#include <deque>

namespace fragile {

namespace {

std::vector<Item> merge_linear(const std::vector<Item>& a, const std::vector<Item>& b,
                               Comparer& cmp) {
    std::vector<Item> out;
    out.reserve(a.size() + b.size());
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (cmp.less(b[ib], a[ia])) out.push_back(b[ib++]);
        else out.push_back(a[ia++]);
    }
    out.insert(out.end(), a.begin() + ia, a.end());
    out.insert(out.end(), b.begin() + ib, b.end());
    return out;
}

// Doubling + binary search for the head of one run inside the other, with the
// roles swapping every round.  Probes past the end hit a virtual top element
// and cost nothing.
std::vector<Item> merge_exponential(const std::vector<Item>& a, const std::vector<Item>& b,
                                    Comparer& cmp) {
    std::deque<Item> x(a.begin(), a.end());
    std::deque<Item> y(b.begin(), b.end());
    std::vector<Item> out;
    out.reserve(a.size() + b.size());
    // asymmetric by design: heads come from A and are searched inside B
    std::swap(x, y);
    while (!x.empty() && !y.empty()) {
        std::swap(x, y);
        if (x.empty()) break;
        Item head = x.front();
        // y[pos-1] is the pos-th element; pos > |y| means the virtual top
        auto head_below = [&](std::size_t pos) {
            if (pos > y.size()) return true; // head < virtual top, free
            return cmp.less(head, y[pos - 1]);
        };
        std::size_t count; // elements of y smaller than head
        if (head_below(1)) {
            count = 0;
        } else {
            std::size_t hi = 2;
            while (!head_below(hi)) hi *= 2;
            // smallest pos in (hi/2, hi] with y[pos] > head
            std::size_t lo = hi / 2 + 1, res = hi;
            while (lo < res) {
                std::size_t mid = lo + (res - lo) / 2;
                if (head_below(mid)) res = mid;
                else lo = mid + 1;
            }
            count = res - 1;
        }
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(y.front());
            y.pop_front();
        }
        out.push_back(head);
        x.pop_front();
    }
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

} // namespace

std::vector<Item> merge_runs(const std::vector<Item>& a, const std::vector<Item>& b,
                             MergeKind kind, Comparer& cmp) {
    if (kind == MergeKind::Linear) return merge_linear(a, b, cmp);
    return merge_exponential(a, b, cmp);
}

std::vector<Item> mergesort(const std::vector<Item>& xs, MergeKind kind, Comparer& cmp) {
    if (xs.size() <= 1) return xs;
    std::size_t half = (xs.size() + 1) / 2;
    std::vector<Item> left(xs.begin(), xs.begin() + half);
    std::vector<Item> right(xs.begin() + half, xs.end());
    return merge_runs(mergesort(left, kind, cmp), mergesort(right, kind, cmp), kind, cmp);
}

std::vector<std::int64_t> worst_case_linear_input(std::size_t n) {
    if (n == 0) throw EmptyInput("worst_case_linear_input: n must be positive");
    std::vector<std::int64_t> v(n);
    v[0] = static_cast<std::int64_t>(n);
    for (std::size_t i = 1; i < n; ++i) v[i] = static_cast<std::int64_t>(i);
    return v;
}

std::vector<Item> floyd_heapify(const std::vector<Item>& xs, Comparer& cmp) {
    std::vector<Item> h = xs;
    std::size_t n = h.size();
    if (n < 2) return h;
    for (std::size_t root = n / 2; root-- > 0;) {
        std::size_t v = root;
        while (true) {
            std::size_t l = 2 * v + 1, r = l + 1;
            if (l >= n) break;
            std::size_t child = l;
            if (r < n && cmp.less(h[r], h[l])) child = r; // child vs child
            if (!cmp.less(h[child], h[v])) break;         // parent vs smaller child
            std::swap(h[v], h[child]);
            v = child;
        }
    }
    return h;
}

bool is_min_heap(const std::vector<Item>& xs, const std::vector<std::int64_t>& values) {
    auto val = [&](Item x) { return values[x.id]; };
    for (std::size_t v = 1; v < xs.size(); ++v)
        if (val(xs[v]) < val(xs[(v - 1) / 2])) return false;
    return true;
}

} // namespace fragile
