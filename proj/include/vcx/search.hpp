#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "vcx/family.hpp"

namespace vcx {

struct SearchBudget {
    std::uint64_t max_nodes = 0;                ///< 0 = unlimited
    std::chrono::milliseconds timeout{0};       ///< 0 = unlimited
    int threads = 1;
};

enum class SearchMode { kExact, kWitness, kOrder };

const char* to_string(SearchMode mode);

struct SearchResult {
    SearchMode mode = SearchMode::kExact;
    int n = 0;
    int d = 0;
    int order = -1;                  ///< certificate order s, order mode only
    std::uint64_t target = 0;        ///< witness mode only
    std::uint64_t best = 0;
    UniformFamily witness;
    bool optimal = false;            ///< the search tree was exhausted
    bool budget_exhausted = false;
    bool target_unreachable = false; ///< witness mode: exhausted without reaching target
    std::uint64_t nodes = 0;         ///< approximate under threads > 1
    std::chrono::milliseconds wall{0};
};

/// C(n-1,d) + C(n-4,d-2): the best known construction size.
std::uint64_t bracket_lower(int n, int d);
/// C(n,d) - 1: the best known general upper bound (d >= 2, n >= 2d+2).
std::uint64_t bracket_upper(int n, int d);
/// The default witness target, equal to bracket_lower.
std::uint64_t default_witness_target(int n, int d);

/// max |F| over F ⊆ C([n], d+1) with VC(F) <= d, by branch and bound.
SearchResult exact_max(int n, int d, const SearchBudget& budget = {});

/// Searches for a VC <= d family of size >= target, starting from the star
/// as incumbent. Stops as soon as one is found, so optimal is set only when
/// the tree was exhausted and best = target - 1.
SearchResult lower_bound_witness(int n, int d, std::optional<std::uint64_t> target = std::nullopt,
                                 const SearchBudget& budget = {});

/// max |F| over (d+1)-uniform F in which every member has a certificate of
/// size exactly s.
SearchResult certificate_order_max(int n, int d, int s, const SearchBudget& budget = {});

/// True iff every member of fam has a certificate of size exactly s.
bool has_order_certificates(const UniformFamily& fam, int s);

}  // namespace vcx
