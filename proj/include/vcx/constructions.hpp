#pragma once

#include <cstdint>

#include "vcx/family.hpp"

namespace vcx {

struct FuzzSeed {
    std::uint64_t seed = 0;
    int n = 0;
    int d = 0;
};

/// All (d+1)-subsets of [n] containing element 1. Needs n >= d+1 >= 2.
UniformFamily star_family(int n, int d);

/// All of C([n], k).
UniformFamily complete_family(int n, int k);

/// Visits C([n], d+1) in a seeded random order and keeps each set whose
/// addition leaves every member with a certificate. The result has VC
/// dimension <= d and no further (d+1)-set can be added. Needs d+1 <= 6.
UniformFamily random_maximal_vc_family(const FuzzSeed& seed);

/// Each member of `fam` kept independently with probability keep_num/keep_den.
/// Subfamilies of VC-bounded families stay VC-bounded.
UniformFamily random_subfamily(const UniformFamily& fam, std::uint64_t seed,
                               std::uint64_t keep_num, std::uint64_t keep_den);

/// Random k-uniform family: each k-set of [n] kept with probability
/// keep_num/keep_den. No VC constraint.
UniformFamily random_uniform_family(int n, int k, std::uint64_t seed, std::uint64_t keep_num,
                                    std::uint64_t keep_den);

}  // namespace vcx
