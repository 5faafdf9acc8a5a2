#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "vcx/certificates.hpp"
#include "vcx/combinatorics.hpp"
#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"

using namespace vcx;
using testing::F;
using testing::S;

namespace {

UniformFamily four() { return F(6, 3, {{3, 4, 5}, {1, 3, 4}, {2, 3, 5}, {2, 4, 5}}); }

}  // namespace

TEST_CASE("certificates_of examples") {
    const UniformFamily two = F(4, 3, {{1, 2, 3}, {1, 2, 4}});
    CHECK(certificates_of(S(4, {1, 2, 3}), two) ==
          std::vector<Subset>{Subset::empty(4), S(4, {1}), S(4, {2}), S(4, {3}), S(4, {1, 3}), S(4, {2, 3})});
    CHECK(certificates_of(S(3, {1, 2, 3}), F(3, 3, {{1, 2, 3}})).size() == 7);
    const auto c = certificates_of(S(6, {3, 4, 5}), four());
    CHECK(std::find(c.begin(), c.end(), S(6, {3})) != c.end());
    CHECK(std::none_of(c.begin(), c.end(), [](const Subset& t) { return t.size() == 2; }));
    CHECK_THROWS_AS(certificates_of(S(4, {2, 3, 4}), two), UsageError);
}

TEST_CASE("max_certificate examples") {
    CHECK(max_certificate(S(4, {1, 2, 3}), F(4, 3, {{1, 2, 3}, {1, 2, 4}})) == S(4, {1, 3}));
    CHECK(max_certificate(S(3, {1, 2, 3}), F(3, 3, {{1, 2, 3}})) == S(3, {1, 2}));
    const auto c = certificates_of(S(6, {3, 4, 5}), four());
    CHECK(std::find(c.begin(), c.end(), S(6, {4})) != c.end());
    CHECK(max_certificate(S(6, {3, 4, 5}), four()) == S(6, {3}));
    CHECK(max_certificate(S(6, {3, 4, 5}), four(), TieBreak::kCanonicalGreatest).size() == 1);
}

TEST_CASE("max_certificate reports a shattered member") {
    // All 2-subsets of [3] plus {1}{2}{3}-style traces: complete 2-uniform on
    // [4] shatters each of its members.
    const UniformFamily k4 = complete_family(4, 2);
    CHECK_THROWS_AS(max_certificate(S(4, {1, 2}), k4), ShatteredMemberError);
    try {
        max_certificate(S(4, {1, 2}), k4);
    } catch (const ShatteredMemberError& e) {
        CHECK(e.member() == "{1,2}");
    }
    CHECK_THROWS_AS(build_assignment(k4, 1), ShatteredMemberError);
}

TEST_CASE("build_assignment examples") {
    const CertificateAssignment star = build_assignment(star_family(5, 2), 2);
    for (const Subset& m : star.family()) CHECK(star.certificate(m) == m.without(1));
    CHECK(star.strata().size() == 1);
    CHECK(star.stratum(2).size() == 6);
    check_assignment(star);

    const CertificateAssignment a = build_assignment(four(), 2);
    CHECK(a.certificate(S(6, {3, 4, 5})) == S(6, {3}));
    CHECK(a.stratum(1).size() == 1);
    CHECK(a.stratum(2).size() == 3);
    check_assignment(a);

    const CertificateAssignment empty = build_assignment(UniformFamily(5, 3), 2);
    CHECK(empty.assigned().empty());
    CHECK(empty.fibers().empty());
    CHECK(empty.strata().empty());
    CHECK_THROWS_AS(build_assignment(four(), 3), UsageError);
    CHECK(build_assignment(four(), 2) == a);
}

TEST_CASE("check_assignment rejects a non-maximum choice") {
    const UniformFamily fam = F(4, 3, {{1, 2, 3}, {1, 2, 4}});
    const CertificateAssignment bad(fam, 2, {S(4, {3}), S(4, {1, 4})});
    CHECK_THROWS_AS(check_assignment(bad), InvariantViolation);
    const CertificateAssignment not_cert(fam, 2, {S(4, {1, 2}), S(4, {1, 4})});
    CHECK_THROWS_AS(check_assignment(not_cert), InvariantViolation);
}

TEST_CASE("fiber_size_histogram examples") {
    const FiberHistogram h = fiber_size_histogram(build_assignment(star_family(5, 2), 2));
    CHECK(h.counts == std::map<std::size_t, std::size_t>{{1, 6}});
    CHECK(h.max_fiber == 1);
    CHECK(h.ceiling == 162);
    CHECK(fiber_size_ceiling(2) == factorial(3) * ipow(3, 3));
    CHECK(fiber_size_histogram(build_assignment(UniformFamily(5, 3), 2)).counts.empty());
}

TEST_CASE("classify_fiber examples") {
    const CertificateAssignment a = build_assignment(four(), 2);
    const FiberShape s = classify_fiber(S(6, {3}), a);
    CHECK(s.kind == FiberKind::kSingleton);
    CHECK(s.named == std::vector<int>{4, 5});
    CHECK(s.side_u == std::vector<int>{1});
    CHECK(s.side_v == std::vector<int>{2});
    CHECK(s.reconstruct() == s.fiber);
    CHECK_THROWS_AS(classify_fiber(S(6, {3, 4}), a), UsageError);
    CHECK_THROWS_AS(classify_fiber(S(6, {6}), a), UsageError);
}

TEST_CASE("triangle fiber") {
    // T = {1}: the only members through 1 are 123, 134, 124.
    const UniformFamily tri = F(6, 3, {{1, 2, 3}, {1, 3, 4}, {1, 2, 4}, {2, 3, 4}});
    const CertificateAssignment a = build_assignment(tri, 2);
    check_assignment(a);
    const FiberShape s = classify_fiber(S(6, {1}), a);
    CHECK(s.kind == FiberKind::kTriangle);
    CHECK(s.fiber.size() == 3);
    CHECK(s.named == std::vector<int>{2, 3, 4});
    CHECK(s.reconstruct() == s.fiber);
    CHECK(fiber_size_histogram(a).counts.at(3) == 1);
}

TEST_CASE("cherry fiber") {
    // T = {1} is certified by 123 and 124 only; they share 2.
    const UniformFamily fam = F(5, 3, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {2, 3, 4}});
    const CertificateAssignment a = build_assignment(fam, 2);
    check_assignment(a);
    bool seen = false;
    for (const auto& [t, fiber] : a.fibers()) {
        if (t.size() != 1) continue;
        const FiberShape s = classify_fiber(t, a);
        CHECK(s.reconstruct() == s.fiber);
        if (s.kind == FiberKind::kCherry) {
            seen = true;
            REQUIRE(s.fiber.size() == 2);
            CHECK((s.fiber[0] & s.fiber[1]) == t.with(s.named[0]));
            CHECK(s.named[1] < s.named[2]);
        }
    }
    CHECK(seen);
    const FiberShape one = classify_fiber(S(5, {1}), a);
    CHECK(one.kind == FiberKind::kCherry);
    CHECK(one.named == std::vector<int>{2, 3, 4});
}

TEST_CASE("classify_members on restricted groups") {
    const Subset t = S(6, {1});
    CHECK(classify_members(t, std::vector<Subset>{S(6, {1, 2, 3}), S(6, {1, 2, 5})}).kind == FiberKind::kCherry);
    CHECK(classify_members(t, std::vector<Subset>{S(6, {1, 2, 3})}).kind == FiberKind::kSingleton);
    CHECK(classify_members(t, std::vector<Subset>{S(6, {1, 2, 3}), S(6, {1, 3, 4}), S(6, {1, 2, 4})}).kind ==
          FiberKind::kTriangle);
    CHECK_THROWS_AS(classify_members(t, std::vector<Subset>{S(6, {1, 2, 3}), S(6, {1, 4, 5})}),
                    InvariantViolation);
}

TEST_CASE("certificate properties on random VC-bounded families") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int n = d + 2 + static_cast<int>(seed % 5);
        UniformFamily fam = random_maximal_vc_family(FuzzSeed{seed, n, d});
        if (seed % 2) fam = random_subfamily(fam, seed, 2, 3);
        CAPTURE(seed);
        const CertificateAssignment a = build_assignment(fam, d);
        check_assignment(a);
        const auto ofam = oracle::to_fam(fam);
        std::size_t strata_total = 0;
        for (const auto& [s, members] : a.strata()) strata_total += members.size();
        CHECK(strata_total == fam.size());
        for (std::size_t i = 0; i < fam.size(); ++i) {
            const auto want = oracle::certificates(oracle::to_set(fam[i]), ofam);
            const auto got = certificates_of(fam[i], fam);
            CHECK(got.size() == want.size());
            CHECK(a.assigned()[i].size() == oracle::max_certificate_size(oracle::to_set(fam[i]), ofam));
        }
        for (const auto& [t, fiber] : a.fibers()) {
            if (t.size() == d) {
                CHECK(fiber.size() == 1);
                const auto through = std::count_if(fam.begin(), fam.end(),
                                                   [&](const Subset& m) { return t.is_subset_of(m); });
                CHECK(through == 1);
            }
            if (t.size() == d - 1) {
                CHECK(fiber.size() <= 3);
                const FiberShape s = classify_fiber(t, a);
                CHECK(s.fiber.size() == fiber.size());
            }
        }
        CHECK(fiber_size_histogram(a).max_fiber <= fiber_size_ceiling(d));
    }
}
