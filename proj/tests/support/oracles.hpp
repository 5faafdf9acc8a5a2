#pragma once

// Brute-force reference implementations. They share no code with the
// library: sets are sorted int vectors, traces are std::set of vectors.

#include <cstdint>
#include <optional>
#include <vector>

#include "vcx/family.hpp"

namespace oracle {

using Set = std::vector<int>;
using Fam = std::vector<Set>;

Fam to_fam(const vcx::UniformFamily& fam);
Set to_set(const vcx::Subset& s);

Set intersect(const Set& a, const Set& b);
bool subset_of(const Set& a, const Set& b);

/// Every subset of {1..n}, as sorted vectors.
std::vector<Set> all_subsets(int n);
std::vector<Set> subsets_of(const Set& s);

bool shattered(const Set& s, const Fam& fam);
/// -1 for the empty family.
int vc_dimension(int n, const Fam& fam);

/// Proper subsets T of f with no member g having g ∩ f = T.
std::vector<Set> certificates(const Set& f, const Fam& fam);
/// Largest certificate size, -1 if none.
int max_certificate_size(const Set& f, const Fam& fam);

std::vector<Set> shadow(const Fam& fam);

/// max |F| over F ⊆ C([n], d+1) with VC(F) <= d, by enumerating every
/// subfamily. Needs C(n, d+1) <= 24.
int extremal_number(int n, int d);

/// Same, requiring every member to have a certificate of size exactly s.
int order_extremal_number(int n, int d, int s);

std::uint64_t binom(int n, int k);

}  // namespace oracle
