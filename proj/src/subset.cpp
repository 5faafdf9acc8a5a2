#include "vcx/subset.hpp"

#include <bit>

#include "vcx/combinatorics.hpp"
#include "vcx/errors.hpp"

namespace vcx {

namespace {

void require_same_ground(const Subset& a, const Subset& b) {
    if (a.n() != b.n()) {
        throw UsageError("ground-set mismatch: n=" + std::to_string(a.n()) + " vs n=" +
                         std::to_string(b.n()));
    }
}

}  // namespace

Subset::Subset(int n, std::uint64_t bits) : bits_(bits), n_(n) {
    if (n < 0 || n > kMaxGroundSize) {
        throw UsageError("ground-set size must be in [0, 63], got " + std::to_string(n));
    }
    if ((bits & ~ground_mask(n)) != 0) {
        throw UsageError("subset word has bits outside [1.." + std::to_string(n) + "]");
    }
}

Subset Subset::of(int n, std::initializer_list<int> elements) {
    return of(n, std::span<const int>(elements.begin(), elements.size()));
}

Subset Subset::of(int n, std::span<const int> elements) {
    std::uint64_t bits = 0;
    for (int e : elements) {
        if (e < 1 || e > n) {
            throw UsageError("element " + std::to_string(e) + " outside [1.." +
                             std::to_string(n) + "]");
        }
        bits |= std::uint64_t{1} << e;
    }
    return Subset(n, bits);
}

int Subset::size() const noexcept { return std::popcount(bits_); }

Subset Subset::with(int e) const {
    if (e < 1 || e > n_) throw UsageError("element " + std::to_string(e) + " out of range");
    return Subset(Unchecked{}, n_, bits_ | (std::uint64_t{1} << e));
}

Subset Subset::without(int e) const {
    if (e < 1 || e > n_) throw UsageError("element " + std::to_string(e) + " out of range");
    return Subset(Unchecked{}, n_, bits_ & ~(std::uint64_t{1} << e));
}

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t w = bits_; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
    return out;
}

int Subset::min_element() const noexcept {
    return bits_ == 0 ? 0 : std::countr_zero(bits_);
}

std::string Subset::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    }
    out += '}';
    return out;
}

std::string Subset::to_line() const {
    std::string out;
    for (int e : elements()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(e);
    }
    return out;
}

Subset operator&(const Subset& a, const Subset& b) {
    require_same_ground(a, b);
    return Subset(Subset::Unchecked{}, a.n_, a.bits_ & b.bits_);
}

Subset operator|(const Subset& a, const Subset& b) {
    require_same_ground(a, b);
    return Subset(Subset::Unchecked{}, a.n_, a.bits_ | b.bits_);
}

Subset operator-(const Subset& a, const Subset& b) {
    require_same_ground(a, b);
    return Subset(Subset::Unchecked{}, a.n_, a.bits_ & ~b.bits_);
}

Subset trace(const Subset& member, const Subset& s) { return member & s; }

void for_each_k_subset(int n, int k, const std::function<void(const Subset&)>& fn) {
    if (n < 0 || n > kMaxGroundSize) throw UsageError("ground-set size out of range");
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(Subset::empty(n));
        return;
    }
    // Work on bits 0..n-1 and shift up by one so element e sits at bit e.
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t v = (std::uint64_t{1} << k) - 1; v < limit; v = next_same_popcount(v)) {
        fn(Subset(n, v << 1));
        if (v == ((std::uint64_t{1} << k) - 1) << (n - k)) break;
    }
}

std::vector<Subset> k_subsets(int n, int k) {
    std::vector<Subset> out;
    out.reserve(static_cast<std::size_t>(binomial(n, k)));
    for_each_k_subset(n, k, [&](const Subset& s) { out.push_back(s); });
    return out;
}

std::vector<Subset> k_subsets_of(const Subset& s, int k) {
    std::vector<Subset> out;
    const int m = s.size();
    if (k < 0 || k > m) return out;
    if (k == 0) return {Subset::empty(s.n())};
    const std::uint64_t last = ((std::uint64_t{1} << k) - 1) << (m - k);
    for (std::uint64_t v = (std::uint64_t{1} << k) - 1;; v = next_same_popcount(v)) {
        out.emplace_back(s.n(), expand_bits(v, s.bits()));
        if (v == last) break;
    }
    return out;
}

}  // namespace vcx
