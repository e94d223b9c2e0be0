#include "fragile/ledger.hpp"

namespace fragile {

Summary summarize(const Ledger& ledger, std::optional<ElementId> target) {
    if (target && *target >= ledger.size())
        throw OutOfRange("summarize: target id out of range");
    Summary s;
    s.work = ledger.work();
    for (ElementId i = 0; i < ledger.size(); ++i) {
        std::uint64_t c = ledger.counts()[i];
        if (c > s.f_max) s.f_max = c;
        if (target && i == *target) continue;
        if (c > s.f_max_rest) s.f_max_rest = c;
    }
    if (target) s.f_target = ledger.counts()[*target];
    return s;
}

} // namespace fragile
