#include "vcx/trace_occupancy.hpp"

#include <bit>
#include <string>

#include "vcx/combinatorics.hpp"
#include "vcx/errors.hpp"

namespace vcx {

std::uint64_t TraceOccupancy::proper_subsets_mask(int k) {
    if (k < 0 || k > kMaxWidth) throw UsageError("trace occupancy supports k <= 6");
    const std::uint64_t all = (k == kMaxWidth) ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << k)) - 1;
    return all & ~(std::uint64_t{1} << ((1U << k) - 1));
}

std::uint64_t TraceOccupancy::order_mask(int k, int s) {
    if (k < 0 || k > kMaxWidth) throw UsageError("trace occupancy supports k <= 6");
    std::uint64_t mask = 0;
    for (unsigned t = 0; t < (1U << k); ++t) {
        if (std::popcount(t) == s) mask |= std::uint64_t{1} << t;
    }
    return mask;
}

TraceOccupancy::TraceOccupancy(int k, std::uint64_t required)
    : k_(k), required_(required), top_(std::uint64_t{1} << ((1U << k) - 1)) {
    if (k < 1 || k > kMaxWidth) {
        throw UsageError("trace occupancy supports 1 <= k <= 6, got k=" + std::to_string(k));
    }
}

bool TraceOccupancy::can_add(std::uint64_t word) const {
    std::uint64_t own = top_;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const std::uint64_t f = members_[i];
        const std::uint64_t meet = f & word;
        const std::uint64_t occ = occ_[i] | (std::uint64_t{1} << compress_bits(meet, f));
        if ((occ & required_) == required_) return false;
        own |= std::uint64_t{1} << compress_bits(meet, word);
    }
    return (own & required_) != required_;
}

void TraceOccupancy::add(std::uint64_t word) {
    log_marks_.push_back(log_.size());
    std::uint64_t own = top_;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const std::uint64_t f = members_[i];
        const std::uint64_t meet = f & word;
        const std::uint64_t occ = occ_[i] | (std::uint64_t{1} << compress_bits(meet, f));
        if (occ != occ_[i]) {
            log_.push_back({static_cast<std::uint32_t>(i), occ_[i]});
            occ_[i] = occ;
        }
        own |= std::uint64_t{1} << compress_bits(meet, word);
    }
    members_.push_back(word);
    occ_.push_back(own);
}

void TraceOccupancy::pop() {
    if (members_.empty()) return;
    members_.pop_back();
    occ_.pop_back();
    const std::size_t mark = log_marks_.back();
    log_marks_.pop_back();
    while (log_.size() > mark) {
        occ_[log_.back().index] = log_.back().old_occ;
        log_.pop_back();
    }
}

}  // namespace vcx
