#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vcx/family.hpp"
#include "vcx/subset.hpp"

namespace vcx {

/// How max_certificate picks among certificates of maximum size. Any choice
/// is valid for the downstream structure; the default is the one every
/// report uses.
enum class TieBreak { kCanonicalLeast, kCanonicalGreatest };

/// All proper subsets T ⊊ F that are not a trace F' ∩ F of any member F',
/// in colex order. Throws UsageError if F is not a member.
std::vector<Subset> certificates_of(const Subset& member, const UniformFamily& fam);

/// A certificate of maximum size. Throws ShatteredMemberError if F has none.
Subset max_certificate(const Subset& member, const UniformFamily& fam,
                       TieBreak tie = TieBreak::kCanonicalLeast);

/// A choice c(F) of maximum certificate for every member of a
/// (d+1)-uniform family, with the fibers c^{-1}(T) and the strata
/// F_s = {F : |c(F)| = s} precomputed.
class CertificateAssignment {
public:
    CertificateAssignment() = default;

    /// `assigned[i]` is the certificate of `family[i]`. Only the shape is
    /// checked here (proper subsets, matching ground set); see
    /// check_assignment for the full invariants.
    CertificateAssignment(UniformFamily family, int d, std::vector<Subset> assigned);

    const UniformFamily& family() const noexcept { return family_; }
    int d() const noexcept { return d_; }
    std::span<const Subset> assigned() const noexcept { return assigned_; }

    /// c(F); throws UsageError if F is not a member.
    const Subset& certificate(const Subset& member) const;

    const std::map<Subset, std::vector<Subset>>& fibers() const noexcept { return fibers_; }
    /// c^{-1}(T), empty when T is not in the image.
    std::span<const Subset> fiber(const Subset& t) const;

    const std::map<int, std::vector<Subset>>& strata() const noexcept { return strata_; }
    std::span<const Subset> stratum(int s) const;

    friend bool operator==(const CertificateAssignment&, const CertificateAssignment&) = default;

private:
    UniformFamily family_;
    int d_ = 0;
    std::vector<Subset> assigned_;
    std::map<Subset, std::vector<Subset>> fibers_;
    std::map<int, std::vector<Subset>> strata_;
};

/// c(F) = max_certificate(F) for every member. Throws UsageError unless the
/// family is (d+1)-uniform and ShatteredMemberError naming the first member
/// without a certificate.
CertificateAssignment build_assignment(const UniformFamily& fam, int d,
                                       TieBreak tie = TieBreak::kCanonicalLeast);

/// Verifies everything a valid assignment promises: each c(F) is a
/// certificate of maximum size, fibers and strata regroup c exactly, a size-d
/// certificate lies in exactly one member, and size-(d-1) fibers have at most
/// three members. Throws InvariantViolation on the first failure.
void check_assignment(const CertificateAssignment& assign);

/// The explicit fiber-size ceiling (d+1)! (d+1)^(d+1) obtained from the
/// sunflower argument.
std::uint64_t fiber_size_ceiling(int d);

struct FiberHistogram {
    std::map<std::size_t, std::size_t> counts;  ///< fiber size -> number of certificates
    std::size_t max_fiber = 0;
    std::uint64_t ceiling = 0;
};

/// Histogram of |c^{-1}(T)| over the image. Throws InvariantViolation if the
/// largest fiber exceeds fiber_size_ceiling(d).
FiberHistogram fiber_size_histogram(const CertificateAssignment& assign);

enum class FiberKind { kTriangle, kCherry, kSingleton };

const char* to_string(FiberKind kind);

/// Shape of a fiber whose certificate T has size d-1.
///
/// named: TRIANGLE {x,y,z} ascending with fiber {Txy,Tyz,Tzx};
///        CHERRY {a,b,c} with fiber {Tab,Tac} (a shared, b < c);
///        SINGLETON {x,y} ascending with fiber {Txy}.
/// side_u / side_v describe the remaining members containing T:
///        CHERRY: Tau for u in side_u, plus Tbc when has_opposite;
///        SINGLETON: Txu for u in side_u, Tyv for v in side_v.
/// Restricted classifications (classify_members) leave the side sets empty.
struct FiberShape {
    FiberKind kind = FiberKind::kSingleton;
    Subset core;
    std::vector<Subset> fiber;
    std::vector<int> named;
    std::vector<int> side_u;
    std::vector<int> side_v;
    bool has_opposite = false;

    /// The fiber members rebuilt from core and named elements, sorted.
    std::vector<Subset> reconstruct() const;
};

/// Classifies c^{-1}(T) for |T| = d-1 and validates the full containment
/// pattern of {F : T ⊆ F}. Throws UsageError if T has the wrong size or is
/// not a certificate in use, InvariantViolation if no case matches.
FiberShape classify_fiber(const Subset& t, const CertificateAssignment& assign);

/// Classifies an arbitrary group of (|T|+2)-sets containing T by the pairwise
/// pattern only: three sets forming a triangle, two sets sharing one element
/// beyond T, or one set. Used on fibers restricted to a subfamily.
FiberShape classify_members(const Subset& t, std::span<const Subset> members);

}  // namespace vcx
