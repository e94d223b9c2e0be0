#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fragile/error.hpp"

namespace fragile {

using ElementId = std::uint32_t;

enum class Outcome { Less, Greater, Equal };

// algorithm-facing handle: a real element by id, or a free dummy used for
// padding.  Dummies compare below / above every real element and never touch
// the ledger.
struct Item {
    ElementId id = 0;
    std::int8_t kind = 0; // -1 below-all dummy, 0 real, +1 above-all dummy

    static Item real(ElementId id) { return Item{id, 0}; }
    static Item dummy_low(ElementId tag) { return Item{tag, -1}; }
    static Item dummy_high(ElementId tag) { return Item{tag, +1}; }
    bool is_dummy() const { return kind != 0; }
};

inline std::vector<Item> real_items(std::size_t n) {
    std::vector<Item> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(Item::real(static_cast<ElementId>(i)));
    return v;
}

// Per-element comparison counts.  Each counted comparison bumps both sides,
// so 2*work == sum(counts) always.
class Ledger {
  public:
    explicit Ledger(std::size_t n, bool record_events = false)
        : counts_(n, 0), record_events_(record_events) {}

    std::size_t size() const { return counts_.size(); }
    std::uint64_t work() const { return work_; }
    std::uint64_t count(ElementId i) const {
        if (i >= counts_.size()) throw OutOfRange("ledger count: id out of range");
        return counts_[i];
    }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    const std::vector<std::pair<ElementId, ElementId>>& events() const { return events_; }
    bool recording() const { return record_events_; }

    void record(ElementId i, ElementId j) {
        counts_[i] += 1;
        counts_[j] += 1;
        work_ += 1;
        if (record_events_) events_.emplace_back(i, j);
    }

  private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t work_ = 0;
    bool record_events_;
    std::vector<std::pair<ElementId, ElementId>> events_;
};

struct Summary {
    std::optional<std::uint64_t> f_target;
    std::uint64_t f_max_rest = 0; // max count over non-target elements
    std::uint64_t f_max = 0;      // max count over all elements
    std::uint64_t work = 0;
};

Summary summarize(const Ledger& ledger, std::optional<ElementId> target = std::nullopt);

} // namespace fragile
