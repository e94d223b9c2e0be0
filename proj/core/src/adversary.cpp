#include "fragile/adversary.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <queue>

namespace fragile {

// ---------------------------------------------------------------- minimum --

MinAdversary::MinAdversary(std::size_t n)
    : n_(n), out_(n), red_out_(n), part_(n, 0), indeg_(n, 0), beaten_(n, false) {
    if (n == 0) throw EmptyInput("min adversary: empty universe");
}

bool MinAdversary::is_sink(ElementId v) const { return !beaten_[v]; }

bool MinAdversary::reachable(ElementId from, ElementId to) const {
    if (from == to) return true;
    std::vector<bool> seen(n_, false);
    std::deque<ElementId> q{from};
    seen[from] = true;
    while (!q.empty()) {
        ElementId u = q.front();
        q.pop_front();
        for (ElementId v : out_[u]) {
            if (v == to) return true;
            if (!seen[v]) {
                seen[v] = true;
                q.push_back(v);
            }
        }
    }
    return false;
}

Outcome MinAdversary::answer(ElementId i, ElementId j) {
    if (i == j) throw IdenticalIds("min adversary: identical ids");
    if (i >= n_ || j >= n_) throw OutOfRange("min adversary: id out of range");
    // settled pairs follow the accumulated order
    if (reachable(i, j)) { ++part_[i]; ++part_[j]; return Outcome::Greater; }
    if (reachable(j, i)) { ++part_[i]; ++part_[j]; return Outcome::Less; }

    ElementId winner; // the one declared smaller
    bool red = false;
    if (!beaten_[i] && !beaten_[j]) {
        // two undefeated candidates: the busier one stays a candidate
        if (part_[i] != part_[j]) winner = part_[i] > part_[j] ? i : j;
        else winner = std::min(i, j);
        red = true;
    } else if (!beaten_[i]) {
        winner = i;
    } else if (!beaten_[j]) {
        winner = j;
    } else {
        winner = std::min(i, j); // incomparable non-candidates
    }
    ElementId loser = winner == i ? j : i;
    out_[loser].push_back(winner);
    if (red) red_out_[loser].push_back(winner);
    beaten_[loser] = true;
    ++indeg_[winner];
    ++part_[i];
    ++part_[j];
    return winner == i ? Outcome::Less : Outcome::Greater;
}

std::uint64_t MinAdversary::red_reach(ElementId v) const {
    // count elements with a red path down to v (they are all known >= v)
    std::vector<bool> seen(n_, false);
    seen[v] = true;
    std::uint64_t count = 1;
    std::deque<ElementId> q{v};
    // red_out_ points larger -> smaller; walk it backwards
    std::vector<std::vector<ElementId>> rev(n_);
    for (ElementId u = 0; u < n_; ++u)
        for (ElementId w : red_out_[u]) rev[w].push_back(u);
    while (!q.empty()) {
        ElementId u = q.front();
        q.pop_front();
        for (ElementId w : rev[u])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push_back(w);
            }
    }
    return count;
}

std::vector<ElementId> MinAdversary::sinks() const {
    std::vector<ElementId> s;
    for (ElementId v = 0; v < n_; ++v)
        if (!beaten_[v]) s.push_back(v);
    return s;
}

std::vector<ElementId> MinAdversary::certify(ElementId claimed_min) const {
    auto s = sinks();
    if (s.size() != 1)
        throw MultipleSinks("certify: order not pinned down, several candidates remain");
    if (s[0] != claimed_min)
        throw InconsistentClaim("certify: claimed minimum is not the unique candidate");
    // ascending topological order; ready ties go to the smaller id, matching
    // the answering rule for incomparable pairs
    std::vector<std::size_t> pending(n_); // unplaced elements known smaller
    std::vector<std::vector<ElementId>> above(n_);
    for (ElementId u = 0; u < n_; ++u) {
        pending[u] = out_[u].size();
        for (ElementId v : out_[u]) above[v].push_back(u);
    }
    std::priority_queue<ElementId, std::vector<ElementId>, std::greater<>> ready;
    for (ElementId v = 0; v < n_; ++v)
        if (pending[v] == 0) ready.push(v);
    std::vector<ElementId> order;
    order.reserve(n_);
    while (!ready.empty()) {
        ElementId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (ElementId u : above[v])
            if (--pending[u] == 0) ready.push(u);
    }
    if (order.size() != n_) throw InconsistentClaim("certify: answers form a cycle");
    return order;
}

// ------------------------------------------------------------------ merge --

MergeScapegoat::MergeScapegoat(std::size_t a, std::size_t b,
                               std::optional<std::size_t> scapegoat_pos)
    : a_(a), b_(b) {
    if (a == 0 || b == 0) throw EmptyInput("merge adversary: both runs must be non-empty");
    x_pos_ = scapegoat_pos.value_or(b / 2);
    if (x_pos_ >= b) throw OutOfRange("merge adversary: scapegoat position out of range");
    scapegoat_ = static_cast<ElementId>(a_ + x_pos_);
    lo_ = 0;
    hi_ = a_; // slots 0..|A| inclusive
}

std::uint64_t MergeScapegoat::forced_bound() const {
    return static_cast<std::uint64_t>(std::bit_width(a_)) - 1 + 1; // floor(log2 |A|) + 1
}

Outcome MergeScapegoat::answer_scapegoat_vs(std::size_t m, bool scapegoat_first) {
    // slot p = number of A-elements below x; x < a_m iff p <= m
    bool less;
    if (hi_ <= m) less = true;
    else if (lo_ >= m + 1) less = false;
    else {
        std::size_t if_less = m - lo_ + 1;    // interval [lo, m]
        std::size_t if_greater = hi_ - m;     // interval [m+1, hi]
        less = if_less > if_greater;
        if (less) hi_ = m;
        else lo_ = m + 1;
    }
    if (scapegoat_first) return less ? Outcome::Less : Outcome::Greater;
    return less ? Outcome::Greater : Outcome::Less;
}

Outcome MergeScapegoat::answer(ElementId i, ElementId j) {
    if (i == j) throw IdenticalIds("merge adversary: identical ids");
    if (i >= a_ + b_ || j >= a_ + b_) throw OutOfRange("merge adversary: id out of range");
    bool ia = i < a_, ja = j < a_;
    if (ia == ja) return i < j ? Outcome::Less : Outcome::Greater; // within one run
    ElementId bid = ia ? j : i;
    if (bid == scapegoat_) return answer_scapegoat_vs(ia ? i : j, !ia);
    std::size_t bpos = bid - a_;
    bool b_smaller = bpos < x_pos_; // B1 < A < B2
    if (ia) return b_smaller ? Outcome::Greater : Outcome::Less;
    return b_smaller ? Outcome::Less : Outcome::Greater;
}

// -------------------------------------------------------------- mergesort --

struct MergesortScapegoatCompose::Node {
    std::size_t lo = 0, hi = 0; // position range [lo, hi)
    std::unique_ptr<Node> left, right;
    ElementId scapegoat = 0; // fixed by the static larger-child descent
    bool active = false, done = false;
    std::vector<ElementId> a, b; // children output orders
    std::map<ElementId, std::size_t> pos_a, pos_b;
    bool sg_in_left = false;
    std::size_t slo = 0, shi = 0; // scapegoat slot interval in the other run
    std::map<std::pair<ElementId, ElementId>, Outcome> answered;
    std::vector<ElementId> order; // final merged order

    std::size_t size() const { return hi - lo; }
    bool leaf() const { return size() == 1; }
};

std::unique_ptr<MergesortScapegoatCompose::Node>
MergesortScapegoatCompose::build_tree(std::size_t lo, std::size_t hi) {
    auto v = std::make_unique<MergesortScapegoatCompose::Node>();
    v->lo = lo;
    v->hi = hi;
    if (hi - lo == 1) {
        v->scapegoat = static_cast<ElementId>(lo);
        v->done = true;
        v->order = {v->scapegoat};
        return v;
    }
    std::size_t mid = lo + (hi - lo + 1) / 2; // mergesort gives the left half ceil(n/2)
    v->left = build_tree(lo, mid);
    v->right = build_tree(mid, hi);
    // scapegoat reused from the larger child, ties to the left
    v->scapegoat = (v->left->size() >= v->right->size()) ? v->left->scapegoat
                                                         : v->right->scapegoat;
    return v;
}

MergesortScapegoatCompose::MergesortScapegoatCompose(std::size_t n) : n_(n) {
    if (n == 0) throw EmptyInput("mergesort adversary: empty universe");
    root_ = build_tree(0, n);
}

MergesortScapegoatCompose::~MergesortScapegoatCompose() = default;

ElementId MergesortScapegoatCompose::root_scapegoat() const { return root_->scapegoat; }

std::uint64_t MergesortScapegoatCompose::forced_bound() const {
    std::uint64_t total = 0;
    const Node* v = root_.get();
    while (!v->leaf()) {
        const Node* larger = v->left->size() >= v->right->size() ? v->left.get() : v->right.get();
        const Node* other = larger == v->left.get() ? v->right.get() : v->left.get();
        total += static_cast<std::uint64_t>(std::bit_width(other->size())) - 1 + 1;
        v = larger;
    }
    return total;
}

MergesortScapegoatCompose::Node* MergesortScapegoatCompose::locate(ElementId i, ElementId j) {
    Node* v = root_.get();
    while (!v->leaf()) {
        std::size_t mid = v->left->hi;
        bool il = i < mid, jl = j < mid;
        if (il && jl) v = v->left.get();
        else if (!il && !jl) v = v->right.get();
        else return v;
    }
    throw UnsupportedAccessPattern("mergesort adversary: comparison inside a leaf");
}

std::vector<ElementId> MergesortScapegoatCompose::finalize(Node* v) {
    if (v->done) return v->order;
    if (!v->active)
        throw UnsupportedAccessPattern("mergesort adversary: child merge never ran");
    // replay this node's linear merge against the recorded answers
    auto lookup = [&](ElementId x, ElementId y) -> Outcome {
        auto it = v->answered.find({x, y});
        if (it != v->answered.end()) return it->second;
        it = v->answered.find({y, x});
        if (it == v->answered.end())
            throw UnsupportedAccessPattern("mergesort adversary: child merge incomplete");
        return it->second == Outcome::Less ? Outcome::Greater : Outcome::Less;
    };
    std::size_t ia = 0, ib = 0;
    while (ia < v->a.size() && ib < v->b.size()) {
        // mirror of merge_linear: pop b first iff b < a
        if (lookup(v->b[ib], v->a[ia]) == Outcome::Less) v->order.push_back(v->b[ib++]);
        else v->order.push_back(v->a[ia++]);
    }
    v->order.insert(v->order.end(), v->a.begin() + ia, v->a.end());
    v->order.insert(v->order.end(), v->b.begin() + ib, v->b.end());
    v->done = true;
    return v->order;
}

void MergesortScapegoatCompose::activate(Node* v) {
    v->a = finalize(v->left.get());
    v->b = finalize(v->right.get());
    for (std::size_t p = 0; p < v->a.size(); ++p) v->pos_a[v->a[p]] = p;
    for (std::size_t p = 0; p < v->b.size(); ++p) v->pos_b[v->b[p]] = p;
    v->sg_in_left = v->scapegoat == v->left->scapegoat;
    v->slo = 0;
    v->shi = v->sg_in_left ? v->b.size() : v->a.size();
    v->active = true;
}

Outcome MergesortScapegoatCompose::answer(ElementId i, ElementId j) {
    if (i == j) throw IdenticalIds("mergesort adversary: identical ids");
    if (i >= n_ || j >= n_) throw OutOfRange("mergesort adversary: id out of range");
    Node* v = locate(i, j);
    if (!v->active) activate(v);

    auto cached = v->answered.find({i, j});
    if (cached != v->answered.end()) return cached->second;

    // own = run holding the scapegoat, other = the run it gets squeezed in
    const auto& pos_own = v->sg_in_left ? v->pos_a : v->pos_b;
    const auto& pos_other = v->sg_in_left ? v->pos_b : v->pos_a;

    auto in_own = [&](ElementId x) { return pos_own.count(x) != 0; };
    ElementId own_el = in_own(i) ? i : j;
    ElementId other_el = own_el == i ? j : i;
    if (!in_own(own_el) || in_own(other_el))
        throw UnsupportedAccessPattern("mergesort adversary: not a cross comparison");

    Outcome out;
    std::size_t m = pos_other.at(other_el);
    if (own_el == v->scapegoat) {
        // interval halving, exactly as in the two-run adversary
        bool less;
        if (v->shi <= m) less = true;
        else if (v->slo >= m + 1) less = false;
        else {
            std::size_t if_less = m - v->slo + 1;
            std::size_t if_greater = v->shi - m;
            less = if_less > if_greater;
            if (less) v->shi = m;
            else v->slo = m + 1;
        }
        // orient: `less` speaks for the scapegoat (own_el)
        out = less == (own_el == i) ? Outcome::Less : Outcome::Greater;
    } else {
        // elements before the scapegoat in its own run sit below the whole
        // other run, elements after it sit above
        bool own_smaller = pos_own.at(own_el) < pos_own.at(v->scapegoat);
        out = own_smaller == (own_el == i) ? Outcome::Less : Outcome::Greater;
    }
    v->answered[{i, j}] = out;
    return out;
}

} // namespace fragile
