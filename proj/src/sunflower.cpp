#include "vcx/sunflower.hpp"

#include <algorithm>
#include <bit>

#include "vcx/combinatorics.hpp"
#include "vcx/errors.hpp"

namespace vcx {

namespace {

// Members as raw words, sorted ascending. Returns core and petal words.
std::optional<std::pair<std::uint64_t, std::vector<std::uint64_t>>> extract(
    const std::vector<std::uint64_t>& members, int p) {
    if (members.empty()) return std::nullopt;

    std::vector<std::uint64_t> disjoint;
    std::uint64_t used = 0;
    for (std::uint64_t m : members) {
        if ((m & used) != 0) continue;
        // The empty set is disjoint from everything but can appear only once.
        disjoint.push_back(m);
        used |= m;
        if (static_cast<int>(disjoint.size()) == p) return std::make_pair(std::uint64_t{0}, disjoint);
    }
    if (used == 0) return std::nullopt;

    int best = 0;
    std::size_t best_count = 0;
    for (std::uint64_t w = used; w != 0; w &= w - 1) {
        const int e = std::countr_zero(w);
        const std::uint64_t bit = std::uint64_t{1} << e;
        const auto count = static_cast<std::size_t>(
            std::count_if(members.begin(), members.end(), [&](std::uint64_t m) { return (m & bit) != 0; }));
        if (count > best_count) {
            best = e;
            best_count = count;
        }
    }
    const std::uint64_t x = std::uint64_t{1} << best;
    std::vector<std::uint64_t> link;
    for (std::uint64_t m : members) {
        if (m & x) link.push_back(m & ~x);
    }
    std::sort(link.begin(), link.end());
    auto inner = extract(link, p);
    if (!inner) return std::nullopt;
    inner->first |= x;
    for (auto& petal : inner->second) petal |= x;
    return inner;
}

}  // namespace

std::optional<Sunflower> find_sunflower(const UniformFamily& fam, int p) {
    if (p < 1) throw UsageError("sunflower size p must be positive");
    std::vector<std::uint64_t> words;
    words.reserve(fam.size());
    for (const Subset& m : fam) words.push_back(m.bits());
    auto found = extract(words, p);
    if (!found) return std::nullopt;
    Sunflower s{Subset(fam.n(), found->first), {}};
    for (std::uint64_t w : found->second) s.petals.emplace_back(fam.n(), w);
    std::sort(s.petals.begin(), s.petals.end());
    return s;
}

bool validate_sunflower(const Sunflower& s) {
    for (std::size_t i = 0; i < s.petals.size(); ++i) {
        if (!s.core.is_subset_of(s.petals[i])) return false;
        for (std::size_t j = i + 1; j < s.petals.size(); ++j) {
            if (s.petals[i] == s.petals[j]) return false;
            if ((s.petals[i] & s.petals[j]) != s.core) return false;
        }
    }
    return true;
}

std::uint64_t sunflower_threshold(int k, int p) {
    return factorial(k) * ipow(static_cast<std::uint64_t>(p - 1), k);
}

}  // namespace vcx
