#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "vcx/combinatorics.hpp"
#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"
#include "vcx/rng.hpp"
#include "vcx/trace_occupancy.hpp"

using namespace vcx;
using testing::F;

TEST_CASE("star_family examples") {
    CHECK(star_family(5, 2) == F(5, 3, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}, {1, 4, 5}}));
    CHECK(star_family(3, 2) == F(3, 3, {{1, 2, 3}}));
    CHECK(star_family(8, 3).size() == 35);
    CHECK_THROWS_AS(star_family(2, 2), UsageError);
    CHECK_THROWS_AS(star_family(4, 0), UsageError);
    for (int n = 4; n <= 7; ++n) {
        for (int d = 1; d + 2 <= n && d <= 3; ++d) {
            const UniformFamily star = star_family(n, d);
            CHECK(star.size() == binomial(n - 1, d));
            // Too few members to shatter a d-set when C(n-1,d) < 2^d.
            CHECK(vc_dimension(star) == oracle::vc_dimension(n, oracle::to_fam(star)));
            CHECK(vc_dimension(star) <= d);
            CHECK_FALSE(shattered_witness(star, d + 1).has_value());
        }
    }
}

TEST_CASE("complete_family examples") {
    CHECK(complete_family(4, 2).size() == 6);
    CHECK(complete_family(4, 4).size() == 1);
    CHECK(complete_family(5, 3).size() == 10);
    CHECK(vc_dimension(complete_family(5, 3)) == 2);
    CHECK(oracle::vc_dimension(5, oracle::to_fam(complete_family(5, 3))) == 2);
    CHECK(complete_family(4, 0).size() == 1);
    CHECK_THROWS_AS(complete_family(4, 5), UsageError);
    CHECK_THROWS_AS(complete_family(4, -1), UsageError);
}

TEST_CASE("splitmix64 reference values") {
    // Reference outputs of the SplitMix64 step for seed 0.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    SplitMix64 b(99);
    for (int i = 0; i < 1000; ++i) CHECK(b.below(7) < 7);
}

TEST_CASE("random_maximal_vc_family is deterministic, VC-bounded and maximal") {
    CHECK(random_maximal_vc_family({5, 6, 2}) == random_maximal_vc_family({5, 6, 2}));
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int n = d + 1 + static_cast<int>(seed % 6);
        const UniformFamily fam = random_maximal_vc_family({seed, n, d});
        CAPTURE(seed);
        CHECK(vc_dimension(fam) <= d);
        if (n <= 8) CHECK(oracle::vc_dimension(n, oracle::to_fam(fam)) <= d);
        if (n >= 2 * (d + 1) && d >= 2) CHECK(fam.size() <= binomial(n, d) - 1);
        CHECK(fam.size() <= binomial(n, d));
        // No further (d+1)-set can join.
        for (const Subset& g : k_subsets(n, d + 1)) {
            if (fam.contains(g)) continue;
            std::vector<Subset> more(fam.begin(), fam.end());
            more.push_back(g);
            CHECK(vc_dimension(UniformFamily(n, d + 1, more)) == d + 1);
        }
    }
    CHECK_THROWS_AS(random_maximal_vc_family({0, 8, 6}), UsageError);
}

TEST_CASE("random subfamilies") {
    const UniformFamily base = complete_family(7, 3);
    CHECK(random_subfamily(base, 3, 1, 1) == base);
    CHECK(random_subfamily(base, 3, 0, 1).empty());
    CHECK(random_subfamily(base, 3, 1, 2) == random_subfamily(base, 3, 1, 2));
    const UniformFamily half = random_subfamily(base, 3, 1, 2);
    for (const Subset& m : half) CHECK(base.contains(m));
    CHECK(random_uniform_family(6, 2, 1, 1, 1).size() == 15);
}
