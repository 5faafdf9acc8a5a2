#include "vcx/constructions.hpp"

#include <string>
#include <utility>

#include "vcx/errors.hpp"
#include "vcx/rng.hpp"
#include "vcx/trace_occupancy.hpp"

namespace vcx {

UniformFamily star_family(int n, int d) {
    if (d < 1 || n < d + 1 || n > kMaxGroundSize) {
        throw UsageError("star_family needs n >= d+1 >= 2 and n <= 63, got n=" +
                         std::to_string(n) + " d=" + std::to_string(d));
    }
    std::vector<Subset> members;
    for (const Subset& rest : k_subsets(n, d)) {
        if (!rest.contains(1)) members.push_back(rest.with(1));
    }
    return UniformFamily(n, d + 1, std::move(members));
}

UniformFamily complete_family(int n, int k) {
    if (n < 0 || n > kMaxGroundSize || k < 0 || k > n) {
        throw UsageError("complete_family needs 0 <= k <= n <= 63");
    }
    return UniformFamily(n, k, k_subsets(n, k));
}

UniformFamily random_maximal_vc_family(const FuzzSeed& seed) {
    const int n = seed.n, d = seed.d, k = d + 1;
    if (d < 0 || k > n || n > kMaxGroundSize) {
        throw UsageError("random_maximal_vc_family needs d+1 <= n <= 63");
    }
    if (k > TraceOccupancy::kMaxWidth) throw UsageError("random_maximal_vc_family needs d <= 5");
    std::vector<Subset> order = k_subsets(n, k);
    SplitMix64 rng(seed.seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    TraceOccupancy occ(k, TraceOccupancy::proper_subsets_mask(k));
    std::vector<Subset> kept;
    for (const Subset& s : order) {
        if (occ.can_add(s.bits())) {
            occ.add(s.bits());
            kept.push_back(s);
        }
    }
    return UniformFamily(n, k, std::move(kept));
}

UniformFamily random_subfamily(const UniformFamily& fam, std::uint64_t seed,
                               std::uint64_t keep_num, std::uint64_t keep_den) {
    if (keep_den == 0 || keep_num > keep_den) throw UsageError("keep probability must be in [0,1]");
    SplitMix64 rng(seed);
    std::vector<Subset> kept;
    for (const Subset& m : fam) {
        if (rng.below(keep_den) < keep_num) kept.push_back(m);
    }
    return UniformFamily(fam.n(), fam.k(), std::move(kept));
}

UniformFamily random_uniform_family(int n, int k, std::uint64_t seed, std::uint64_t keep_num,
                                    std::uint64_t keep_den) {
    return random_subfamily(complete_family(n, k), seed, keep_num, keep_den);
}

}  // namespace vcx
