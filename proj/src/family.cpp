#include "vcx/family.hpp"

#include <algorithm>
#include <unordered_set>

#include "vcx/combinatorics.hpp"
#include "vcx/errors.hpp"

namespace vcx {

UniformFamily::UniformFamily(int n, int k) : n_(n), k_(k) {
    if (n < 0 || n > kMaxGroundSize) {
        throw UsageError("ground-set size must be in [0, 63], got " + std::to_string(n));
    }
    if (k < 0 || k > n) {
        throw UsageError("uniformity k=" + std::to_string(k) + " outside [0, n]");
    }
}

UniformFamily::UniformFamily(int n, int k, std::vector<Subset> members)
    : UniformFamily(n, k) {
    for (const Subset& m : members) {
        if (m.n() != n) throw UsageError("member " + m.to_string() + " has mismatched ground set");
        if (m.size() != k) {
            throw UsageError("member " + m.to_string() + " has cardinality " +
                             std::to_string(m.size()) + ", expected " + std::to_string(k));
        }
    }
    std::sort(members.begin(), members.end());
    auto dup = std::adjacent_find(members.begin(), members.end());
    if (dup != members.end()) throw UsageError("duplicate member " + dup->to_string());
    members_ = std::move(members);
}

bool UniformFamily::contains(const Subset& s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
}

std::optional<std::size_t> UniformFamily::index_of(const Subset& s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

UniformFamily UniformFamily::subfamily(std::span<const Subset> keep) const {
    std::vector<Subset> out;
    out.reserve(keep.size());
    for (const Subset& s : keep) {
        if (!contains(s)) throw UsageError(s.to_string() + " is not a member");
        out.push_back(s);
    }
    return UniformFamily(n_, k_, std::move(out));
}

bool is_shattered(const Subset& s, const UniformFamily& fam) {
    if (s.n() != fam.n()) throw UsageError("is_shattered: ground-set mismatch");
    const int width = s.size();
    if (width > kMaxShatterWidth) {
        throw UsageError("is_shattered: |S| = " + std::to_string(width) + " exceeds " +
                         std::to_string(kMaxShatterWidth));
    }
    const std::uint64_t needed = std::uint64_t{1} << width;
    if (fam.size() < needed) return false;
    std::vector<bool> seen(needed, false);
    std::uint64_t distinct = 0;
    for (const Subset& f : fam) {
        const std::uint64_t idx = compress_bits(f.bits() & s.bits(), s.bits());
        if (!seen[idx]) {
            seen[idx] = true;
            if (++distinct == needed) return true;
        }
    }
    return false;
}

std::optional<Subset> shattered_witness(const UniformFamily& fam, int s) {
    if (s < 0 || s > fam.n()) throw UsageError("shattered_witness: s outside [0, n]");
    // Colex enumeration reaches the least candidate first; stop there.
    const std::uint64_t limit = std::uint64_t{1} << fam.n();
    if (s == 0) {
        if (is_shattered(Subset::empty(fam.n()), fam)) return Subset::empty(fam.n());
        return std::nullopt;
    }
    for (std::uint64_t v = (std::uint64_t{1} << s) - 1; v < limit; v = next_same_popcount(v)) {
        Subset cand(fam.n(), v << 1);
        if (is_shattered(cand, fam)) return cand;
        if (v == ((std::uint64_t{1} << s) - 1) << (fam.n() - s)) break;
    }
    return std::nullopt;
}

int vc_dimension(const UniformFamily& fam) {
    if (fam.empty()) return -1;
    // Shattering is downward closed, so the shattered sizes form a prefix 0..VC.
    const int cap = std::min(fam.k(), fam.n());
    int best = 0;
    for (int s = 1; s <= cap; ++s) {
        if (!shattered_witness(fam, s)) break;
        best = s;
    }
    return best;
}

ShadowSet shadow(const UniformFamily& fam) {
    if (fam.k() == 0) throw UsageError("shadow of a 0-uniform family is undefined");
    std::unordered_set<std::uint64_t> seen;
    std::vector<Subset> out;
    for (const Subset& f : fam) {
        for (std::uint64_t w = f.bits(); w != 0; w &= w - 1) {
            const std::uint64_t sub = f.bits() & ~(w & -w);
            if (seen.insert(sub).second) out.emplace_back(fam.n(), sub);
        }
    }
    std::sort(out.begin(), out.end());
    return ShadowSet{fam.n(), fam.k(), false, std::move(out)};
}

ShadowSet complement_shadow(const UniformFamily& fam) {
    ShadowSet sh = shadow(fam);
    std::vector<Subset> out;
    std::size_t pos = 0;
    for_each_k_subset(fam.n(), fam.k() - 1, [&](const Subset& s) {
        while (pos < sh.members.size() && sh.members[pos] < s) ++pos;
        if (pos < sh.members.size() && sh.members[pos] == s) return;
        out.push_back(s);
    });
    return ShadowSet{fam.n(), fam.k(), true, std::move(out)};
}

std::uint64_t sauer_shelah_bound(int n, int d) {
    std::uint64_t total = 0;
    for (int i = 0; i <= d; ++i) total += binomial(n, i);
    return total;
}

}  // namespace vcx
