#pragma once

#include <optional>
#include <vector>

#include "vcx/family.hpp"
#include "vcx/subset.hpp"

namespace vcx {

/// p sets whose pairwise intersections all equal `core`. Petals are full
/// sets (core included).
struct Sunflower {
    Subset core;
    std::vector<Subset> petals;
};

/// Erdős–Rado extraction. Greedily collects a maximal pairwise-disjoint
/// subfamily in colex order; if it has p sets they form a sunflower with
/// empty core. Otherwise recurses on the link of the element of that
/// subfamily's union lying in the most members (ties: least element) and
/// re-attaches it to the core. Always succeeds once |fam| >= k!(p-1)^k.
/// Returns exactly p petals. Throws UsageError for p < 1.
std::optional<Sunflower> find_sunflower(const UniformFamily& fam, int p);

bool validate_sunflower(const Sunflower& s);

/// k!(p-1)^k, the size that forces a p-sunflower in a k-uniform family.
std::uint64_t sunflower_threshold(int k, int p);

}  // namespace vcx
