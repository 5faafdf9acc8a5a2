#include "vcx/certificates.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include "vcx/combinatorics.hpp"
#include "vcx/errors.hpp"

namespace vcx {

namespace {

constexpr int kMaxCertificateWidth = 25;

/// realized[t] is true when the compressed trace t on `member` occurs.
std::vector<bool> realized_traces(const Subset& member, const UniformFamily& fam) {
    const int k = member.size();
    if (k > kMaxCertificateWidth) throw UsageError("member too wide for certificate search");
    std::vector<bool> realized(std::size_t{1} << k, false);
    for (const Subset& other : fam) {
        realized[compress_bits(other.bits() & member.bits(), member.bits())] = true;
    }
    return realized;
}

void require_member(const Subset& member, const UniformFamily& fam) {
    if (!fam.contains(member)) throw UsageError(member.to_string() + " is not a member");
}

std::string fiber_error(const Subset& t, const std::string& detail) {
    return "fiber of " + t.to_string() + " matches no shape: " + detail;
}

/// The two elements of m \ t, ascending; throws unless there are exactly two.
std::pair<int, int> private_pair(const Subset& t, const Subset& m) {
    if (!t.is_subset_of(m) || m.size() != t.size() + 2) {
        throw InvariantViolation(fiber_error(t, m.to_string() + " is not T plus two elements"));
    }
    const auto extra = (m - t).elements();
    return {extra[0], extra[1]};
}

}  // namespace

std::vector<Subset> certificates_of(const Subset& member, const UniformFamily& fam) {
    require_member(member, fam);
    const auto realized = realized_traces(member, fam);
    std::vector<Subset> out;
    const std::uint64_t full = realized.size() - 1;
    for (std::uint64_t t = 0; t < full; ++t) {
        if (!realized[t]) out.emplace_back(fam.n(), expand_bits(t, member.bits()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subset max_certificate(const Subset& member, const UniformFamily& fam, TieBreak tie) {
    require_member(member, fam);
    const auto realized = realized_traces(member, fam);
    const int k = member.size();
    for (int s = k - 1; s >= 0; --s) {
        std::optional<std::uint64_t> pick;
        // Compressed patterns of popcount s, ascending, expand to ascending subsets.
        for (std::uint64_t t = 0; t + 1 < realized.size(); ++t) {
            if (std::popcount(t) != s || realized[t]) continue;
            pick = t;
            if (tie == TieBreak::kCanonicalLeast) break;
        }
        if (pick) return Subset(fam.n(), expand_bits(*pick, member.bits()));
    }
    throw ShatteredMemberError(member.to_string(),
                               "member " + member.to_string() + " is shattered (no certificate)");
}

CertificateAssignment::CertificateAssignment(UniformFamily family, int d,
                                             std::vector<Subset> assigned)
    : family_(std::move(family)), d_(d), assigned_(std::move(assigned)) {
    if (assigned_.size() != family_.size()) {
        throw UsageError("assignment size does not match family size");
    }
    for (std::size_t i = 0; i < assigned_.size(); ++i) {
        const Subset& f = family_[i];
        const Subset& c = assigned_[i];
        if (c.n() != f.n() || !c.is_subset_of(f) || c == f) {
            throw UsageError("assigned " + c.to_string() + " is not a proper subset of " +
                             f.to_string());
        }
        fibers_[c].push_back(f);
        strata_[c.size()].push_back(f);
    }
}

const Subset& CertificateAssignment::certificate(const Subset& member) const {
    auto idx = family_.index_of(member);
    if (!idx) throw UsageError(member.to_string() + " is not a member");
    return assigned_[*idx];
}

std::span<const Subset> CertificateAssignment::fiber(const Subset& t) const {
    auto it = fibers_.find(t);
    if (it == fibers_.end()) return {};
    return it->second;
}

std::span<const Subset> CertificateAssignment::stratum(int s) const {
    auto it = strata_.find(s);
    if (it == strata_.end()) return {};
    return it->second;
}

CertificateAssignment build_assignment(const UniformFamily& fam, int d, TieBreak tie) {
    if (d < 0 || fam.k() != d + 1) {
        throw UsageError("family is " + std::to_string(fam.k()) + "-uniform, expected d+1 = " +
                         std::to_string(d + 1));
    }
    std::vector<Subset> assigned;
    assigned.reserve(fam.size());
    for (const Subset& f : fam) assigned.push_back(max_certificate(f, fam, tie));
    return CertificateAssignment(fam, d, std::move(assigned));
}

void check_assignment(const CertificateAssignment& assign) {
    const UniformFamily& fam = assign.family();
    const int d = assign.d();
    std::size_t strata_total = 0;
    for (const auto& [s, members] : assign.strata()) {
        strata_total += members.size();
        for (const Subset& f : members) {
            if (assign.certificate(f).size() != s) {
                throw InvariantViolation("stratum " + std::to_string(s) + " holds " +
                                         f.to_string() + " with a different certificate size");
            }
        }
    }
    if (strata_total != fam.size()) throw InvariantViolation("strata do not partition the family");

    std::size_t fiber_total = 0;
    for (const auto& [t, members] : assign.fibers()) {
        fiber_total += members.size();
        for (const Subset& f : members) {
            if (assign.certificate(f) != t) {
                throw InvariantViolation("fiber of " + t.to_string() + " holds " + f.to_string());
            }
        }
        if (t.size() == d) {
            std::size_t containing = 0;
            for (const Subset& f : fam) containing += t.is_subset_of(f) ? 1 : 0;
            if (members.size() != 1 || containing != 1) {
                throw InvariantViolation("size-d certificate " + t.to_string() + " lies in " +
                                         std::to_string(containing) + " members");
            }
        }
        if (t.size() == d - 1 && members.size() > 3) {
            throw InvariantViolation("size-(d-1) fiber of " + t.to_string() + " has " +
                                     std::to_string(members.size()) + " members");
        }
    }
    if (fiber_total != fam.size()) throw InvariantViolation("fibers do not partition the family");

    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Subset& f = fam[i];
        const Subset& c = assign.assigned()[i];
        const auto certs = certificates_of(f, fam);
        if (!std::binary_search(certs.begin(), certs.end(), c)) {
            throw InvariantViolation(c.to_string() + " is not a certificate of " + f.to_string());
        }
        for (const Subset& other : certs) {
            if (other.size() > c.size()) {
                throw InvariantViolation(c.to_string() + " is not a maximum certificate of " +
                                         f.to_string() + " (" + other.to_string() +
                                         " is larger)");
            }
        }
    }
}

std::uint64_t fiber_size_ceiling(int d) {
    return factorial(d + 1) * ipow(static_cast<std::uint64_t>(d + 1), d + 1);
}

FiberHistogram fiber_size_histogram(const CertificateAssignment& assign) {
    FiberHistogram h;
    h.ceiling = fiber_size_ceiling(assign.d());
    for (const auto& [t, members] : assign.fibers()) {
        ++h.counts[members.size()];
        h.max_fiber = std::max(h.max_fiber, members.size());
    }
    if (h.max_fiber > h.ceiling) {
        throw InvariantViolation("fiber of size " + std::to_string(h.max_fiber) +
                                 " exceeds the sunflower ceiling " + std::to_string(h.ceiling));
    }
    return h;
}

const char* to_string(FiberKind kind) {
    switch (kind) {
        case FiberKind::kTriangle: return "TRIANGLE";
        case FiberKind::kCherry: return "CHERRY";
        case FiberKind::kSingleton: return "SINGLETON";
    }
    return "?";
}

std::vector<Subset> FiberShape::reconstruct() const {
    std::vector<Subset> out;
    switch (kind) {
        case FiberKind::kTriangle:
            out = {core.with(named[0]).with(named[1]), core.with(named[1]).with(named[2]),
                   core.with(named[2]).with(named[0])};
            break;
        case FiberKind::kCherry:
            out = {core.with(named[0]).with(named[1]), core.with(named[0]).with(named[2])};
            break;
        case FiberKind::kSingleton:
            out = {core.with(named[0]).with(named[1])};
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiberShape classify_members(const Subset& t, std::span<const Subset> members) {
    FiberShape shape;
    shape.core = t;
    shape.fiber.assign(members.begin(), members.end());
    std::sort(shape.fiber.begin(), shape.fiber.end());
    const auto& fiber = shape.fiber;
    switch (fiber.size()) {
        case 1: {
            auto [x, y] = private_pair(t, fiber[0]);
            shape.kind = FiberKind::kSingleton;
            shape.named = {x, y};
            break;
        }
        case 2: {
            auto [p0, p1] = private_pair(t, fiber[0]);
            auto [q0, q1] = private_pair(t, fiber[1]);
            const Subset shared = (fiber[0] & fiber[1]) - t;
            if (shared.size() != 1) {
                throw InvariantViolation(fiber_error(t, "two members share " +
                                                            std::to_string(shared.size()) +
                                                            " elements beyond T"));
            }
            const int a = shared.min_element();
            const int b = (p0 == a) ? p1 : p0;
            const int c = (q0 == a) ? q1 : q0;
            shape.kind = FiberKind::kCherry;
            shape.named = {a, std::min(b, c), std::max(b, c)};
            break;
        }
        case 3: {
            Subset extra = Subset::empty(t.n());
            for (const Subset& m : fiber) {
                private_pair(t, m);
                extra = extra | (m - t);
            }
            if (extra.size() != 3) {
                throw InvariantViolation(fiber_error(t, "three members do not form a triangle"));
            }
            shape.kind = FiberKind::kTriangle;
            shape.named = extra.elements();
            break;
        }
        default:
            throw InvariantViolation(
                fiber_error(t, "fiber has " + std::to_string(fiber.size()) + " members"));
    }
    if (shape.reconstruct() != shape.fiber) {
        throw InvariantViolation(fiber_error(t, "members do not match the named pattern"));
    }
    return shape;
}

FiberShape classify_fiber(const Subset& t, const CertificateAssignment& assign) {
    if (t.size() != assign.d() - 1) {
        throw UsageError("classify_fiber needs |T| = d-1, got " + t.to_string());
    }
    const auto fiber = assign.fiber(t);
    if (fiber.empty()) throw UsageError(t.to_string() + " is not an assigned certificate");
    FiberShape shape = classify_members(t, fiber);

    std::vector<Subset> containing;
    for (const Subset& f : assign.family()) {
        if (t.is_subset_of(f)) containing.push_back(f);
    }
    const auto is_fiber = [&](const Subset& f) {
        return std::binary_search(shape.fiber.begin(), shape.fiber.end(), f);
    };
    const auto& nm = shape.named;

    for (const Subset& f : containing) {
        if (is_fiber(f)) continue;
        auto [p, q] = private_pair(t, f);
        switch (shape.kind) {
            case FiberKind::kTriangle:
                throw InvariantViolation(
                    fiber_error(t, "triangle fiber but " + f.to_string() + " also contains T"));
            case FiberKind::kCherry: {
                const int a = nm[0], b = nm[1], c = nm[2];
                if ((p == b && q == c) || (p == c && q == b)) {
                    shape.has_opposite = true;
                } else if (p == a || q == a) {
                    const int u = (p == a) ? q : p;
                    if (u == b || u == c) {
                        throw InvariantViolation(fiber_error(t, "cherry member outside fiber"));
                    }
                    shape.side_u.push_back(u);
                } else {
                    throw InvariantViolation(
                        fiber_error(t, f.to_string() + " avoids the shared element"));
                }
                break;
            }
            case FiberKind::kSingleton: {
                const int x = nm[0], y = nm[1];
                if (p == x || q == x) {
                    shape.side_u.push_back(p == x ? q : p);
                } else if (p == y || q == y) {
                    shape.side_v.push_back(p == y ? q : p);
                } else {
                    throw InvariantViolation(
                        fiber_error(t, f.to_string() + " meets T but neither x nor y"));
                }
                break;
            }
        }
    }
    std::sort(shape.side_u.begin(), shape.side_u.end());
    std::sort(shape.side_v.begin(), shape.side_v.end());
    return shape;
}

}  // namespace vcx
