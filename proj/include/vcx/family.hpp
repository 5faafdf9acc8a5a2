#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vcx/subset.hpp"

namespace vcx {

/// A k-uniform family over [n]: distinct k-sets kept in strictly increasing
/// (colex) order.
class UniformFamily {
public:
    UniformFamily() = default;

    /// Empty family.
    UniformFamily(int n, int k);

    /// Sorts the members. Throws UsageError on a duplicate, a member of the
    /// wrong cardinality, or a member over a different ground set.
    UniformFamily(int n, int k, std::vector<Subset> members);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    std::span<const Subset> members() const noexcept { return members_; }
    const Subset& operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(const Subset& s) const;
    /// Position of `s` in member order, if present.
    std::optional<std::size_t> index_of(const Subset& s) const;

    /// The members listed in `keep` (any order, no duplicates; each must belong here).
    UniformFamily subfamily(std::span<const Subset> keep) const;

    friend bool operator==(const UniformFamily&, const UniformFamily&) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Subset> members_;
};

/// Either the shadow ∂F (all (k-1)-sets inside some member) or its complement
/// within C([n], k-1).
struct ShadowSet {
    int n = 0;
    int k = 0;
    bool complement = false;
    std::vector<Subset> members;
};

/// Largest |S| a shattering test accepts; the trace occupancy table has 2^|S| slots.
inline constexpr int kMaxShatterWidth = 25;

/// True iff every subset of S is realized as a trace F ∩ S of some member.
bool is_shattered(const Subset& s, const UniformFamily& fam);

/// Largest s such that some s-subset of [n] is shattered; -1 for the empty family.
int vc_dimension(const UniformFamily& fam);

/// Colex-least shattered s-set, if any.
std::optional<Subset> shattered_witness(const UniformFamily& fam, int s);

ShadowSet shadow(const UniformFamily& fam);
ShadowSet complement_shadow(const UniformFamily& fam);

/// Sum_{i<=d} C(n, i).
std::uint64_t sauer_shelah_bound(int n, int d);

}  // namespace vcx
