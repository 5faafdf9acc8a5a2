#include <doctest.h>

#include <algorithm>

#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"
#include "vcx/family.hpp"
#include "vcx/rng.hpp"
#include "vcx/trace_occupancy.hpp"

using namespace vcx;

TEST_CASE("occupancy masks") {
    CHECK(TraceOccupancy::proper_subsets_mask(2) == 0b0111);
    CHECK(TraceOccupancy::order_mask(2, 1) == 0b0110);
    CHECK(TraceOccupancy::order_mask(3, 0) == 0b1);
    CHECK(TraceOccupancy::proper_subsets_mask(6) == ~(std::uint64_t{1} << 63));
    CHECK_THROWS_AS(TraceOccupancy(7, 0), UsageError);
    CHECK_THROWS_AS(TraceOccupancy::proper_subsets_mask(7), UsageError);
}

TEST_CASE("can_add agrees with the VC bound") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int n = d + 2 + static_cast<int>(seed % 4);
        const int k = d + 1;
        TraceOccupancy occ(k, TraceOccupancy::proper_subsets_mask(k));
        std::vector<Subset> members;
        SplitMix64 rng(seed);
        auto cands = k_subsets(n, k);
        for (int step = 0; step < 40; ++step) {
            const Subset g = cands[rng.below(cands.size())];
            if (std::find(members.begin(), members.end(), g) != members.end()) continue;
            auto next = members;
            next.push_back(g);
            const bool ok = vc_dimension(UniformFamily(n, k, next)) <= d;
            CAPTURE(seed);
            CHECK(occ.can_add(g.bits()) == ok);
            if (ok) {
                occ.add(g.bits());
                members = next;
            }
        }
        // add then pop restores the exact occupancy.
        const std::vector<std::uint64_t> snapshot(occ.occupancy().begin(), occ.occupancy().end());
        for (const Subset& g : cands) {
            if (!occ.can_add(g.bits())) continue;
            occ.add(g.bits());
            occ.pop();
            CHECK(std::vector<std::uint64_t>(occ.occupancy().begin(), occ.occupancy().end()) == snapshot);
        }
        CHECK(occ.size() == members.size());
    }
}
