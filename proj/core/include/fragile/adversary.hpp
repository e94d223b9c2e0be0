#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "fragile/oracle.hpp"

namespace fragile {

// Minimum-finding adversary: keeps a digraph with edges pointing at the
// element declared smaller.  Sinks (never beaten) are compared by prior
// participation -- the busier one wins, ties to the smaller id -- which edges
// get colored red; settled pairs answer from reachability.  Maintains
// red-reach(v) <= 2^indegree(v) for every sink v.
class MinAdversary : public Oracle {
  public:
    explicit MinAdversary(std::size_t n);

    Outcome answer(ElementId i, ElementId j) override;
    std::size_t size() const override { return n_; }

    bool is_sink(ElementId v) const;
    std::uint64_t participation(ElementId v) const { return part_[v]; }
    std::uint64_t in_degree(ElementId v) const { return indeg_[v]; }
    // number of elements known (through red edges) to be >= v, incl. v
    std::uint64_t red_reach(ElementId v) const;
    std::vector<ElementId> sinks() const;

    // validates a claimed minimum: unique sink and it is the claim; returns
    // one total order (ascending) consistent with every answer given
    std::vector<ElementId> certify(ElementId claimed_min) const;

  private:
    bool reachable(ElementId from, ElementId to) const; // along smaller-pointing edges

    std::size_t n_;
    std::vector<std::vector<ElementId>> out_;      // u -> smaller v
    std::vector<std::vector<ElementId>> red_out_;  // red edges, larger -> smaller
    std::vector<std::uint64_t> part_;
    std::vector<std::uint64_t> indeg_;
    std::vector<bool> beaten_; // has an outgoing edge (lost at least once)
};

// Merge adversary (scapegoat argument): fixes B_1 < A < B_2 around one
// designated x in B and answers x-vs-A comparisons toward the larger half of
// x's remaining slot interval, forcing floor(log2 |A|) + 1 comparisons on x.
class MergeScapegoat : public Oracle {
  public:
    // ids 0..a-1 form sorted run A, ids a..a+b-1 form sorted run B;
    // scapegoat_pos indexes into B (default: middle)
    MergeScapegoat(std::size_t a, std::size_t b, std::optional<std::size_t> scapegoat_pos = {});

    Outcome answer(ElementId i, ElementId j) override;
    std::size_t size() const override { return a_ + b_; }

    ElementId scapegoat() const { return scapegoat_; }
    std::uint64_t forced_bound() const; // floor(log2 |A|) + 1
    std::pair<std::size_t, std::size_t> interval() const { return {lo_, hi_}; }

  private:
    Outcome answer_scapegoat_vs(std::size_t a_index, bool scapegoat_first);

    std::size_t a_, b_;
    ElementId scapegoat_;
    std::size_t x_pos_;      // scapegoat's position within B
    std::size_t lo_, hi_;    // candidate slots of x among A (0..|A|)
};

// Composed adversary for a full run of this repo's top-down linear mergesort
// on the identity arrangement: every merge node reuses the scapegoat of its
// larger child, so one element is squeezed at every level.
class MergesortScapegoatCompose : public Oracle {
  public:
    explicit MergesortScapegoatCompose(std::size_t n);
    ~MergesortScapegoatCompose() override;

    Outcome answer(ElementId i, ElementId j) override;
    std::size_t size() const override { return n_; }

    ElementId root_scapegoat() const;
    std::uint64_t forced_bound() const; // sum of per-level merge bounds

  private:
    struct Node;
    static std::unique_ptr<Node> build_tree(std::size_t lo, std::size_t hi);
    Node* locate(ElementId i, ElementId j);
    void activate(Node* v);
    std::vector<ElementId> finalize(Node* v); // output order of the node's merge

    std::size_t n_;
    std::unique_ptr<Node> root_;
};

} // namespace fragile
