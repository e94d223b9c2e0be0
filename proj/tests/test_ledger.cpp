#include "doctest.h"

#include "fragile/minimum.hpp"
#include "fragile/oracle.hpp"
#include "helpers.hpp"

using namespace fragile;
using namespace testutil;

TEST_CASE("every counted comparison bumps both sides") {
    Ctx c({5, 3, 9, 1}, true);
    c.cmp.compare(0, 1);
    c.cmp.compare(2, 3);
    c.cmp.compare(0, 3);
    CHECK(c.ledger.work() == 3);
    CHECK(c.ledger.count(0) == 2);
    CHECK(c.ledger.count(1) == 1);
    CHECK(c.ledger.count(2) == 1);
    CHECK(c.ledger.count(3) == 2);
    CHECK(conserved(c.ledger));
    REQUIRE(c.ledger.events().size() == 3);
    CHECK(c.ledger.events()[2] == std::pair<ElementId, ElementId>{0, 3});
}

TEST_CASE("dummy comparisons never touch the ledger") {
    Ctx c({7, 7});
    CHECK(c.cmp.less(Item::dummy_low(0), Item::real(0)));
    CHECK(c.cmp.less(Item::real(1), Item::dummy_high(0)));
    CHECK(c.cmp.less(Item::dummy_low(0), Item::dummy_high(0)));
    CHECK(c.cmp.less(Item::dummy_low(0), Item::dummy_low(1)));
    CHECK(c.ledger.work() == 0);
    // equal values: smaller id is lesser, and the comparison is counted
    CHECK(c.cmp.less(Item::real(0), Item::real(1)));
    CHECK_FALSE(c.cmp.less(Item::real(1), Item::real(0)));
    CHECK(c.ledger.work() == 2);
}

TEST_CASE("comparer rejects bad ids") {
    Ctx c({1, 2, 3});
    CHECK_THROWS_AS(c.cmp.compare(1, 1), IdenticalIds);
    CHECK_THROWS_AS(c.cmp.compare(0, 3), OutOfRange);
    CHECK_THROWS_AS(c.ledger.count(3), OutOfRange);
    CHECK(c.ledger.work() == 0);
}

TEST_CASE("summarize splits target from the rest") {
    // tournament on 8 elements with the minimum on id 0
    Ctx c({0, 12, 9, 4, 7, 15, 3, 8});
    auto res = tournament_minimum(real_items(8), c.cmp);
    CHECK(res.minimum.id == 0);
    REQUIRE(res.second.has_value());
    CHECK(res.second->id == 6);

    // hand trace: round pairs (0,1)(2,3)(4,5)(6,7) -> (0,3)(4,6) -> (0,6),
    // playoff among the winner's victims {1,3,6}: (1,3) then (3,6)
    std::vector<std::uint64_t> expect = {3, 2, 1, 4, 2, 1, 4, 1};
    CHECK(c.ledger.counts() == expect);
    CHECK(c.ledger.work() == 9);

    auto s = summarize(c.ledger, ElementId{0});
    REQUIRE(s.f_target.has_value());
    CHECK(*s.f_target == 3);
    CHECK(s.f_max_rest == 4);
    CHECK(s.f_max == 4);
    CHECK(s.work == 9);

    auto all = summarize(c.ledger);
    CHECK_FALSE(all.f_target.has_value());
    CHECK(all.f_max == 4);
    CHECK(all.f_max_rest == 4);
}
