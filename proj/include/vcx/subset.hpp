#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace vcx {

inline constexpr int kMaxGroundSize = 63;

/// Bits 1..n set; bit 0 is never used so that bit e stands for element e.
constexpr std::uint64_t ground_mask(int n) {
    return n <= 0 ? 0 : ((std::uint64_t{1} << n) - 1) << 1;
}

/// A subset of the ground set [n] = {1..n}, one machine word wide.
///
/// Element e lives at bit e. Members compare by integer value of the word,
/// which is colex order on sets; every "least" tie-break in the library
/// means this order.
class Subset {
public:
    constexpr Subset() = default;

    /// Throws UsageError if n is outside [0, 63] or a bit above n (or bit 0) is set.
    Subset(int n, std::uint64_t bits);

    static Subset empty(int n) { return Subset(n, 0); }
    static Subset ground(int n) { return Subset(n, ground_mask(n)); }
    static Subset of(int n, std::initializer_list<int> elements);
    static Subset of(int n, std::span<const int> elements);

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr int n() const noexcept { return n_; }
    int size() const noexcept;
    bool is_empty() const noexcept { return bits_ == 0; }
    bool contains(int e) const noexcept {
        return e >= 1 && e <= n_ && ((bits_ >> e) & 1U) != 0;
    }
    bool is_subset_of(const Subset& other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }

    Subset with(int e) const;
    Subset without(int e) const;

    /// Elements in increasing order.
    std::vector<int> elements() const;
    /// Least element, or 0 for the empty set.
    int min_element() const noexcept;

    /// "{1,2,3}"
    std::string to_string() const;
    /// "1 2 3", the member line of the family text format.
    std::string to_line() const;

    friend bool operator==(const Subset&, const Subset&) = default;
    friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) noexcept {
        if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
        return a.n_ <=> b.n_;
    }

    friend Subset operator&(const Subset& a, const Subset& b);
    friend Subset operator|(const Subset& a, const Subset& b);
    /// Set difference a \ b.
    friend Subset operator-(const Subset& a, const Subset& b);

private:
    struct Unchecked {};
    constexpr Subset(Unchecked, int n, std::uint64_t bits) : bits_(bits), n_(n) {}

    std::uint64_t bits_ = 0;
    int n_ = 0;
};

/// F ∩ S. Throws UsageError when the ground sets differ.
Subset trace(const Subset& member, const Subset& s);

/// Calls fn(Subset) for every k-subset of [n] in colex order.
void for_each_k_subset(int n, int k, const std::function<void(const Subset&)>& fn);

/// All k-subsets of [n] in colex order.
std::vector<Subset> k_subsets(int n, int k);

/// All subsets of `s` of size k, in colex order.
std::vector<Subset> k_subsets_of(const Subset& s, int k);

}  // namespace vcx

template <>
struct std::hash<vcx::Subset> {
    std::size_t operator()(const vcx::Subset& s) const noexcept {
        return std::hash<std::uint64_t>{}(s.bits() * 0x9E3779B97F4A7C15ULL ^
                                          static_cast<std::uint64_t>(s.n()));
    }
};
