#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcx/certificates.hpp"
#include "vcx/family.hpp"
#include "vcx/subset.hpp"

namespace vcx {

/// Disjoint pairs {F, F'} from the stratum F_{d-1} with c(F) ∪ c(F') = F ∩ F',
/// chosen greedily until no further pair fits.
struct PairCollection {
    std::vector<std::pair<Subset, Subset>> pairs;  ///< first < second
    std::vector<Subset> members;                   ///< flattened, sorted
};

/// Scans pairs F < F' of F_{d-1} in colex order, taking a pair when both are
/// unused and c(F) ∪ c(F') = F ∩ F'; repeats passes to a fixpoint.
PairCollection build_pair_collection(const CertificateAssignment& assign);

/// Checks pair validity, |F ∩ F'| = d, |c(F) ∩ c(F')| = d-2, distinctness and
/// maximality. Throws InvariantViolation.
void check_pair_collection(const PairCollection& pairs, const CertificateAssignment& assign);

/// G = (F_d ∪ F_{d-1}) \ P together with its own certificate assignment c_G.
struct GoodSubfamily {
    UniformFamily family;
    CertificateAssignment assignment;
};

/// Members whose maximum G-certificate still has size d-1 keep c_F(F); the
/// others get a maximum G-certificate chosen by `tie`. Throws
/// InvariantViolation if some |c_G(F)| falls outside [d-1, d].
GoodSubfamily build_good_subfamily(const CertificateAssignment& assign,
                                   const PairCollection& pairs,
                                   TieBreak tie = TieBreak::kCanonicalLeast);

/// Certificates of G-members with distinct size-(d-1) certificates have
/// disjoint upward neighbourhoods S_{F,c} = {S : c(F) ⊆ S ⊆ F, |S| in {d-1,d}}.
/// Throws InvariantViolation otherwise.
void check_good_subfamily(const GoodSubfamily& good);

/// Upward neighbourhood S_{F,c} of a member with certificate c (|c| = d-1).
std::vector<Subset> certificate_neighbourhood(const Subset& member, const Subset& cert);

struct AnchorPair {
    int i = 1;
    int j = 2;
    std::uint64_t cobar_score = 0;  ///< |cobar∂G(i)| + |cobar∂G(j)|
    std::uint64_t low_score = 0;    ///< |G_{d-1}(i)| + |G_{d-1}(j)|
};

/// Minimizes (cobar_score, low_score, (i, j)) over pairs i < j.
AnchorPair select_anchor_pair(const GoodSubfamily& good);

enum class MemberClass { kF1, kF2, kH0Star, kH11, kH12, kKd, kKd1 };

const char* to_string(MemberClass c);

/// Which rule produced f(F).
enum class FRule {
    kCertificate,      ///< H_{0,*}, K_d: u_{c(F)}
    kTraceOnV,         ///< H_{1,2}: u_{F ∩ V}
    kHalfTraceHalfCert,///< H_{1,1}: ½u_{F∩V} + ½u_{c(F)∩V}
    kTriangle,
    kCherry,
    kSingletonNone,    ///< no H_{1,1} partner: u_T
    kSingletonOne,     ///< one partner Taι: ½u_T + ½u_{Tb}
    kSingletonShared,  ///< partners Ta1, Ta2: u_{Tb}
    kSingletonSplit,   ///< partners Ta1, Tb2: ½u_{Tx} + ½u_{Ty}
};

const char* to_string(FRule r);

/// Sparse vector over the index family, coefficients in half-units.
struct CoefficientVector {
    std::vector<std::pair<std::size_t, int>> entries;  ///< (index, half-units), index ascending

    int mass() const;
    friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

/// Exact fraction; den == 0 marks an undefined ratio.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction of(std::int64_t num, std::int64_t den);
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct AssertedInequality {
    std::string name;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool holds = false;
};

struct BoundAudit {
    std::uint64_t family = 0;
    std::uint64_t f1 = 0;
    std::uint64_t f2 = 0;
    std::uint64_t f3 = 0;
    std::uint64_t pair_members = 0;
    std::uint64_t index_family = 0;
    std::uint64_t cobar_f = 0;
    std::uint64_t cobar_g = 0;
    std::uint64_t cobar_g_in_v = 0;
    std::uint64_t cobar_f3 = 0;
    std::uint64_t cobar_f3_in_v = 0;
    std::uint64_t binom_n1_d = 0;
    std::uint64_t binom_n2_d1 = 0;
    std::uint64_t binom_n2_d = 0;

    std::vector<AssertedInequality> asserted;

    // Reported only; never asserted.
    std::int64_t slack = 0;             ///< C(n-1,d) + |F1| + |F2| - |cobar F3 ∩ C(V,d)| - |F|
    Fraction tenth_cobar_f;             ///< 0.1 |cobar∂F|, to compare with |F1| + |F2|
    Fraction pair_threshold;            ///< 400 d^2 n^(d-2)
    Fraction corollary_bound;           ///< (10/9)(C(n-1,d) - |F|), to compare with |cobar∂F|
    Fraction v_share_of_cobar_g;        ///< |cobar∂G ∩ C(V,d)| / |cobar∂G|

    bool all_hold() const;
};

struct PipelineOptions {
    /// Skip the up-front VC check; a violated lemma then surfaces as an
    /// InvariantViolation.
    bool assume_vc = false;
    TieBreak tie = TieBreak::kCanonicalLeast;
};

/// Everything the partition pipeline computes for one family.
struct PartitionReport {
    int n = 0;
    int d = 0;
    UniformFamily family;
    CertificateAssignment assignment;  ///< c_F
    PairCollection pairs;
    GoodSubfamily good;                ///< G and c_G
    AnchorPair anchors;
    Subset v;                          ///< [n] \ {i, j}
    std::vector<Subset> f1, f2, f3;
    std::map<Subset, MemberClass> classes;  ///< every member of F
    std::vector<Subset> index_family;       ///< the index family, colex order
    std::map<Subset, CoefficientVector> f;  ///< on F3
    std::map<Subset, FRule> rules;          ///< on F3
    std::vector<int> column_sums;           ///< half-units per index
    int max_column_sum = 0;
    std::map<Subset, std::size_t> g;        ///< injection F3 -> index
    BoundAudit audit;

    /// Position of s in index_family, if present.
    std::optional<std::size_t> index_of(const Subset& s) const;
};

/// Builds c_F, P, G with c_G, the anchors and the split F1/F2/F3 with class
/// labels. Throws UsageError when the family is not (d+1)-uniform, d < 1, or
/// (without assume_vc) its VC dimension exceeds d.
PartitionReport partition_family(const UniformFamily& fam, int d, const PipelineOptions& opts = {});

/// Fills index_family, f and rules. Throws InvariantViolation if f is not
/// well defined.
void build_f(PartitionReport& report);

/// Fills column_sums; returns the largest. Throws InvariantViolation above 2.
int verify_column_sums(PartitionReport& report);

/// Fills g. Throws InvariantViolation if the unit and half supports overlap,
/// a half index is shared by more than two members, or g is not injective.
void build_injection_g(PartitionReport& report);

/// Fills audit. Throws InvariantViolation if an exact inequality fails.
BoundAudit audit_bound(PartitionReport& report);

/// All of the above in order.
PartitionReport run_pipeline(const UniformFamily& fam, int d, const PipelineOptions& opts = {});

/// Re-derives every structural claim about a finished report from scratch:
/// partition exactness, pair invariants, the good-subfamily properties, class
/// invariants, restricted fiber shapes, f well-definedness and support,
/// column sums, the g construction, and the audit. Throws InvariantViolation.
void verify_report(const PartitionReport& report);

}  // namespace vcx
