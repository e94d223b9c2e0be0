#pragma once

#include <cstdint>
#include <vector>

#include "fragile/ledger.hpp"

namespace fragile {

// Answers comparisons between element ids.  Either backed by concrete values
// or by an adversary that invents a consistent order on the fly.
class Oracle {
  public:
    virtual ~Oracle() = default;
    virtual Outcome answer(ElementId i, ElementId j) = 0;
    virtual std::size_t size() const = 0;
};

class ValueOracle : public Oracle {
  public:
    explicit ValueOracle(std::vector<std::int64_t> values) : values_(std::move(values)) {}

    Outcome answer(ElementId i, ElementId j) override {
        std::int64_t a = values_[i], b = values_[j];
        if (a < b) return Outcome::Less;
        if (a > b) return Outcome::Greater;
        return Outcome::Equal;
    }
    std::size_t size() const override { return values_.size(); }
    const std::vector<std::int64_t>& values() const { return values_; }

  private:
    std::vector<std::int64_t> values_;
};

// Oracle + ledger bundle handed to every algorithm.  All tie handling lives
// here: Equal counts as Less for the smaller id, which yields a strict total
// order and keeps runs deterministic.
class Comparer {
  public:
    Comparer(Oracle& oracle, Ledger& ledger) : oracle_(oracle), ledger_(ledger) {}

    Outcome compare(ElementId i, ElementId j) {
        if (i == j) throw IdenticalIds("compare: identical ids");
        if (i >= ledger_.size() || j >= ledger_.size())
            throw OutOfRange("compare: id out of range");
        ledger_.record(i, j);
        return oracle_.answer(i, j);
    }

    // strict "a < b" over items; dummy comparisons are free
    bool less(Item a, Item b) {
        if (a.kind != 0 || b.kind != 0) {
            if (a.kind != b.kind) return a.kind < b.kind;
            return a.id < b.id; // dummies of the same side tie-break by tag
        }
        Outcome o = compare(a.id, b.id);
        if (o == Outcome::Equal) return a.id < b.id;
        return o == Outcome::Less;
    }

    Ledger& ledger() { return ledger_; }
    Oracle& oracle() { return oracle_; }

  private:
    Oracle& oracle_;
    Ledger& ledger_;
};

} // namespace fragile
