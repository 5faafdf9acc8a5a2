#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vcx {

/// Incremental bookkeeping of which traces each member of a growing
/// (k)-uniform family has seen on itself.
///
/// Member words use the Subset bit layout. For every member F the occupancy
/// word has bit t set when some member realizes the trace whose compressed
/// index (relative to F) is t. A member is dead when every index in the
/// `required` mask is occupied: for plain VC-boundedness that mask is all
/// proper subsets, so dead means "no certificate left". Realized traces only
/// accumulate, so once a candidate cannot be added it never can again.
class TraceOccupancy {
public:
    static constexpr int kMaxWidth = 6;

    /// Every proper subset of a k-set: dead == shattered on itself.
    static std::uint64_t proper_subsets_mask(int k);
    /// Every subset of size exactly s: dead == no certificate of order s.
    static std::uint64_t order_mask(int k, int s);

    TraceOccupancy(int k, std::uint64_t required);

    /// Would adding `word` keep every member (including `word`) alive?
    bool can_add(std::uint64_t word) const;
    /// Adds without checking; callers test can_add first.
    void add(std::uint64_t word);
    /// Undoes the most recent add.
    void pop();

    std::size_t size() const noexcept { return members_.size(); }
    std::span<const std::uint64_t> members() const noexcept { return members_; }
    std::span<const std::uint64_t> occupancy() const noexcept { return occ_; }

private:
    struct Change {
        std::uint32_t index;
        std::uint64_t old_occ;
    };

    int k_;
    std::uint64_t required_;
    std::uint64_t top_;
    std::vector<std::uint64_t> members_;
    std::vector<std::uint64_t> occ_;
    std::vector<Change> log_;
    std::vector<std::size_t> log_marks_;
};

}  // namespace vcx
