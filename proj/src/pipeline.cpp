#include "vcx/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "vcx/combinatorics.hpp"
#include "vcx/errors.hpp"

namespace vcx {

namespace {

[[noreturn]] void violation(const std::string& where, const std::string& detail) {
    throw InvariantViolation(where + ": " + detail);
}

bool is_valid_pair(const Subset& a, const Subset& b, const CertificateAssignment& assign) {
    return (assign.certificate(a) | assign.certificate(b)) == (a & b);
}

int certificate_size_in(const Subset& member, const UniformFamily& fam) {
    const auto certs = certificates_of(member, fam);
    int best = -1;
    for (const Subset& c : certs) best = std::max(best, c.size());
    return best;
}

std::size_t count_containing(const std::vector<Subset>& sets, int r) {
    return static_cast<std::size_t>(
        std::count_if(sets.begin(), sets.end(), [r](const Subset& s) { return s.contains(r); }));
}

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

CoefficientVector unit(std::size_t idx) { return CoefficientVector{{{idx, 2}}}; }

CoefficientVector halves(std::size_t a, std::size_t b) {
    if (a == b) violation("f", "half-half image with a repeated index");
    if (a > b) std::swap(a, b);
    return CoefficientVector{{{a, 1}, {b, 1}}};
}

}  // namespace

// ---------------------------------------------------------------------------
// P

PairCollection build_pair_collection(const CertificateAssignment& assign) {
    PairCollection out;
    const int d = assign.d();
    const auto low = assign.stratum(d - 1);
    std::vector<bool> used(low.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < low.size(); ++a) {
            if (used[a]) continue;
            for (std::size_t b = a + 1; b < low.size(); ++b) {
                if (used[b] || !is_valid_pair(low[a], low[b], assign)) continue;
                used[a] = used[b] = true;
                out.pairs.emplace_back(low[a], low[b]);
                changed = true;
                break;
            }
        }
    }
    for (const auto& [a, b] : out.pairs) {
        out.members.push_back(a);
        out.members.push_back(b);
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

void check_pair_collection(const PairCollection& pairs, const CertificateAssignment& assign) {
    const int d = assign.d();
    std::set<Subset> seen;
    for (const auto& [a, b] : pairs.pairs) {
        const std::string tag = "pair {" + a.to_string() + ", " + b.to_string() + "}";
        if (!seen.insert(a).second || !seen.insert(b).second) violation(tag, "member reused");
        if (assign.certificate(a).size() != d - 1 || assign.certificate(b).size() != d - 1) {
            violation(tag, "member outside F_{d-1}");
        }
        if (!is_valid_pair(a, b, assign)) violation(tag, "c(F) ∪ c(F') != F ∩ F'");
        if ((a & b).size() != d) violation(tag, "|F ∩ F'| != d");
        if ((assign.certificate(a) & assign.certificate(b)).size() != d - 2) {
            violation(tag, "|c(F) ∩ c(F')| != d-2");
        }
    }
    if (std::vector<Subset>(seen.begin(), seen.end()) != pairs.members) {
        violation("P", "flattened member list disagrees with the pairs");
    }
    const auto low = assign.stratum(d - 1);
    std::vector<Subset> rest;
    for (const Subset& f : low) {
        if (!seen.contains(f)) rest.push_back(f);
    }
    for (std::size_t a = 0; a < rest.size(); ++a) {
        for (std::size_t b = a + 1; b < rest.size(); ++b) {
            if (is_valid_pair(rest[a], rest[b], assign)) {
                violation("P", "not maximal: {" + rest[a].to_string() + ", " +
                                   rest[b].to_string() + "} could be added");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// G and c_G

GoodSubfamily build_good_subfamily(const CertificateAssignment& assign,
                                   const PairCollection& pairs, TieBreak tie) {
    const UniformFamily& fam = assign.family();
    const int d = assign.d();
    std::vector<Subset> kept;
    for (std::size_t idx = 0; idx < fam.size(); ++idx) {
        const int s = assign.assigned()[idx].size();
        if ((s == d || s == d - 1) &&
            !std::binary_search(pairs.members.begin(), pairs.members.end(), fam[idx])) {
            kept.push_back(fam[idx]);
        }
    }
    UniformFamily g(fam.n(), fam.k(), std::move(kept));
    std::vector<Subset> cg;
    cg.reserve(g.size());
    for (const Subset& f : g) {
        const int best = certificate_size_in(f, g);
        if (best == d - 1) {
            const Subset& inherited = assign.certificate(f);
            if (inherited.size() != d - 1) {
                violation("c_G", f.to_string() + " has maximum G-certificate size d-1 but |c_F| = " +
                                     std::to_string(inherited.size()));
            }
            cg.push_back(inherited);
        } else if (best == d) {
            cg.push_back(max_certificate(f, g, tie));
        } else {
            violation("good subfamily (ii)", f.to_string() + " has maximum G-certificate size " +
                                                 std::to_string(best));
        }
    }
    CertificateAssignment cga(g, d, std::move(cg));
    return GoodSubfamily{std::move(g), std::move(cga)};
}

std::vector<Subset> certificate_neighbourhood(const Subset& member, const Subset& cert) {
    std::vector<Subset> out{cert};
    for (int e : (member - cert).elements()) out.push_back(cert.with(e));
    std::sort(out.begin(), out.end());
    return out;
}

void check_good_subfamily(const GoodSubfamily& good) {
    const int d = good.assignment.d();
    std::map<Subset, Subset> owner;  // S -> certificate whose neighbourhood holds it
    for (std::size_t idx = 0; idx < good.family.size(); ++idx) {
        const Subset& f = good.family[idx];
        const Subset& c = good.assignment.assigned()[idx];
        if (c.size() < d - 1 || c.size() > d) {
            violation("good subfamily (ii)", f.to_string() + " has |c_G| = " +
                                                 std::to_string(c.size()));
        }
        if (c.size() != d - 1) continue;
        for (const Subset& s : certificate_neighbourhood(f, c)) {
            auto [it, inserted] = owner.emplace(s, c);
            if (!inserted && it->second != c) {
                violation("good subfamily (iii)", s.to_string() + " lies above both " +
                                                      it->second.to_string() + " and " +
                                                      c.to_string());
            }
        }
    }
}

// ---------------------------------------------------------------------------
// anchors

AnchorPair select_anchor_pair(const GoodSubfamily& good) {
    const int n = good.family.n();
    const int d = good.assignment.d();
    if (n < 2) throw UsageError("anchor selection needs n >= 2");
    const auto cobar = complement_shadow(good.family).members;
    std::vector<Subset> low(good.assignment.stratum(d - 1).begin(),
                            good.assignment.stratum(d - 1).end());
    std::vector<std::uint64_t> cobar_r(static_cast<std::size_t>(n) + 1), low_r(cobar_r.size());
    for (int r = 1; r <= n; ++r) {
        cobar_r[r] = count_containing(cobar, r);
        low_r[r] = count_containing(low, r);
    }
    AnchorPair best{1, 2, cobar_r[1] + cobar_r[2], low_r[1] + low_r[2]};
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            AnchorPair cand{i, j, cobar_r[i] + cobar_r[j], low_r[i] + low_r[j]};
            if (std::tie(cand.cobar_score, cand.low_score, cand.i, cand.j) <
                std::tie(best.cobar_score, best.low_score, best.i, best.j)) {
                best = cand;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// labels

const char* to_string(MemberClass c) {
    switch (c) {
        case MemberClass::kF1: return "F1";
        case MemberClass::kF2: return "F2";
        case MemberClass::kH0Star: return "H0STAR";
        case MemberClass::kH11: return "H11";
        case MemberClass::kH12: return "H12";
        case MemberClass::kKd: return "KD";
        case MemberClass::kKd1: return "KD1";
    }
    return "?";
}

const char* to_string(FRule r) {
    switch (r) {
        case FRule::kCertificate: return "certificate";
        case FRule::kTraceOnV: return "trace-on-V";
        case FRule::kHalfTraceHalfCert: return "half-trace-half-certificate";
        case FRule::kTriangle: return "triangle";
        case FRule::kCherry: return "cherry";
        case FRule::kSingletonNone: return "singleton-none";
        case FRule::kSingletonOne: return "singleton-one";
        case FRule::kSingletonShared: return "singleton-shared";
        case FRule::kSingletonSplit: return "singleton-split";
    }
    return "?";
}

int CoefficientVector::mass() const {
    int total = 0;
    for (const auto& [idx, w] : entries) total += w;
    return total;
}

Fraction Fraction::of(std::int64_t num, std::int64_t den) {
    if (den == 0) return Fraction{num, 0};
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return Fraction{num / g, den / g};
}

bool BoundAudit::all_hold() const {
    return std::all_of(asserted.begin(), asserted.end(),
                       [](const AssertedInequality& a) { return a.holds; });
}

std::optional<std::size_t> PartitionReport::index_of(const Subset& s) const {
    auto it = std::lower_bound(index_family.begin(), index_family.end(), s);
    if (it == index_family.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - index_family.begin());
}

// ---------------------------------------------------------------------------
// partition

PartitionReport partition_family(const UniformFamily& fam, int d, const PipelineOptions& opts) {
    if (d < 1) throw UsageError("pipeline needs d >= 1");
    if (fam.k() != d + 1) {
        throw UsageError("pipeline needs a (d+1)-uniform family; got k=" + std::to_string(fam.k()) +
                         " with d=" + std::to_string(d));
    }
    if (fam.n() < 2) throw UsageError("pipeline needs n >= 2");
    if (!opts.assume_vc && vc_dimension(fam) > d) {
        throw UsageError("family has VC dimension above d=" + std::to_string(d) +
                         "; pass assume_vc to run anyway");
    }

    PartitionReport r;
    r.n = fam.n();
    r.d = d;
    r.family = fam;
    try {
        r.assignment = build_assignment(fam, d, opts.tie);
    } catch (const ShatteredMemberError& e) {
        throw InvariantViolation(std::string("certificate existence (VC <= d): ") + e.what());
    }
    r.pairs = build_pair_collection(r.assignment);
    r.good = build_good_subfamily(r.assignment, r.pairs, opts.tie);
    r.anchors = select_anchor_pair(r.good);
    const int i = r.anchors.i, j = r.anchors.j;
    const Subset ij = Subset::of(r.n, {i, j});
    r.v = Subset::ground(r.n) - ij;

    for (const Subset& f : fam) {
        if (!r.good.family.contains(f)) {
            r.f1.push_back(f);
            r.classes[f] = MemberClass::kF1;
        }
    }
    const CertificateAssignment& cg = r.good.assignment;
    for (const Subset& f : r.good.family) {
        const Subset& c = cg.certificate(f);
        const bool in_gij = ij.is_subset_of(f) && (c - ij).size() <= d - 2;
        const bool in_low = c.size() == d - 1 && (f.contains(i) || f.contains(j));
        if (in_gij || in_low) {
            r.f2.push_back(f);
            r.classes[f] = MemberClass::kF2;
            continue;
        }
        r.f3.push_back(f);
        if (f.is_subset_of(r.v)) {
            r.classes[f] = c.size() == d ? MemberClass::kKd : MemberClass::kKd1;
            continue;
        }
        if (c.size() != d) {
            violation("H class", f.to_string() + " meets the anchors but |c_G| = " +
                                     std::to_string(c.size()));
        }
        const int c_anchor = (c & ij).size();
        const int f_anchor = (f & ij).size();
        if (c_anchor == 0) {
            r.classes[f] = MemberClass::kH0Star;
        } else if (c_anchor == 1 && f_anchor == 1) {
            r.classes[f] = MemberClass::kH11;
        } else if (c_anchor == 1 && f_anchor == 2) {
            r.classes[f] = MemberClass::kH12;
        } else {
            violation("H class", f.to_string() + " has |c_G ∩ {i,j}| = " +
                                     std::to_string(c_anchor));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// f

void build_f(PartitionReport& r) {
    const int d = r.d;
    const Subset& v = r.v;
    const CertificateAssignment& cg = r.good.assignment;

    // Index family: C(V, d-1) plus the d-subsets of V in the shadow of F3.
    {
        std::set<Subset> idx;
        for (const Subset& s : k_subsets_of(v, d - 1)) idx.insert(s);
        const UniformFamily f3fam(r.n, d + 1, r.f3);
        for (const Subset& s : shadow(f3fam).members) {
            if (s.is_subset_of(v)) idx.insert(s);
        }
        r.index_family.assign(idx.begin(), idx.end());
    }
    const auto at = [&](const Subset& s, const Subset& owner) -> std::size_t {
        auto pos = r.index_of(s);
        if (!pos) violation("f well-defined", s.to_string() + " (image of " + owner.to_string() +
                                                  ") is not in the index family");
        return *pos;
    };

    // H_{1,1} members grouped by c(H) ∩ V.
    std::map<Subset, std::vector<Subset>> h11_by_trace;
    std::map<Subset, std::vector<Subset>> kd1_by_cert;
    for (const Subset& f : r.f3) {
        const Subset& c = cg.certificate(f);
        switch (r.classes.at(f)) {
            case MemberClass::kH0Star:
            case MemberClass::kKd:
                r.f[f] = unit(at(c, f));
                r.rules[f] = FRule::kCertificate;
                break;
            case MemberClass::kH12:
                r.f[f] = unit(at(f & v, f));
                r.rules[f] = FRule::kTraceOnV;
                break;
            case MemberClass::kH11:
                r.f[f] = halves(at(f & v, f), at(c & v, f));
                r.rules[f] = FRule::kHalfTraceHalfCert;
                h11_by_trace[c & v].push_back(f);
                break;
            case MemberClass::kKd1:
                kd1_by_cert[c].push_back(f);
                break;
            default:
                violation("f", f.to_string() + " in F3 carries a non-F3 label");
        }
    }

    for (const auto& [t, group] : kd1_by_cert) {
        const FiberShape shape = classify_members(t, group);
        const auto& nm = shape.named;
        switch (shape.kind) {
            case FiberKind::kTriangle: {
                // Txy -> Tx, Tyz -> Ty, Tzx -> Tz.
                const int x = nm[0], y = nm[1], z = nm[2];
                const std::pair<Subset, int> plan[] = {
                    {t.with(x).with(y), x}, {t.with(y).with(z), y}, {t.with(z).with(x), z}};
                for (const auto& [member, e] : plan) {
                    r.f[member] = unit(at(t.with(e), member));
                    r.rules[member] = FRule::kTriangle;
                }
                break;
            }
            case FiberKind::kCherry: {
                const int a = nm[0], b = nm[1], c = nm[2];
                const Subset tab = t.with(a).with(b), tac = t.with(a).with(c);
                r.f[tab] = unit(at(t.with(b), tab));
                r.f[tac] = unit(at(t.with(c), tac));
                r.rules[tab] = r.rules[tac] = FRule::kCherry;
                break;
            }
            case FiberKind::kSingleton: {
                const int x = nm[0], y = nm[1];
                const Subset txy = shape.fiber[0];
                const auto it = h11_by_trace.find(t);
                const std::vector<Subset> partners =
                    it == h11_by_trace.end() ? std::vector<Subset>{} : it->second;
                // Each partner is T ∪ {a, ι} with a ∈ {x, y}, ι an anchor.
                const auto partner_element = [&](const Subset& h) {
                    if (!t.is_subset_of(h)) {
                        violation("singleton " + txy.to_string(), h.to_string() + " misses T");
                    }
                    const Subset rest = (h - t) & v;
                    const int a = rest.min_element();
                    if (rest.size() != 1 || (a != x && a != y)) {
                        violation("singleton " + txy.to_string(),
                                  "partner " + h.to_string() + " does not extend T by x or y");
                    }
                    return a;
                };
                if (partners.empty()) {
                    r.f[txy] = unit(at(t, txy));
                    r.rules[txy] = FRule::kSingletonNone;
                } else if (partners.size() == 1) {
                    const int a = partner_element(partners[0]);
                    const int b = (a == x) ? y : x;
                    r.f[txy] = halves(at(t, txy), at(t.with(b), txy));
                    r.rules[txy] = FRule::kSingletonOne;
                } else if (partners.size() == 2) {
                    const int a1 = partner_element(partners[0]);
                    const int a2 = partner_element(partners[1]);
                    if (a1 == a2) {
                        const int b = (a1 == x) ? y : x;
                        r.f[txy] = unit(at(t.with(b), txy));
                        r.rules[txy] = FRule::kSingletonShared;
                    } else {
                        r.f[txy] = halves(at(t.with(x), txy), at(t.with(y), txy));
                        r.rules[txy] = FRule::kSingletonSplit;
                    }
                } else {
                    violation("singleton " + txy.to_string(),
                              std::to_string(partners.size()) + " H_{1,1} partners (max 2)");
                }
                break;
            }
        }
    }

    for (const Subset& f : r.f3) {
        auto it = r.f.find(f);
        if (it == r.f.end()) violation("f well-defined", f.to_string() + " has no image");
        if (it->second.mass() != 2) violation("f well-defined", f.to_string() + " has mass != 1");
        for (const auto& [idx, w] : it->second.entries) {
            if (!r.index_family[idx].is_subset_of(f)) {
                violation("f well-defined", f.to_string() + " maps to non-subset " +
                                                r.index_family[idx].to_string());
            }
        }
    }
}

int verify_column_sums(PartitionReport& r) {
    r.column_sums.assign(r.index_family.size(), 0);
    for (const auto& [member, vec] : r.f) {
        for (const auto& [idx, w] : vec.entries) r.column_sums[idx] += w;
    }
    r.max_column_sum = 0;
    for (std::size_t idx = 0; idx < r.column_sums.size(); ++idx) {
        r.max_column_sum = std::max(r.max_column_sum, r.column_sums[idx]);
        if (r.column_sums[idx] > 2) {
            violation("column sums", "index " + r.index_family[idx].to_string() + " carries " +
                                         std::to_string(r.column_sums[idx]) + " half-units");
        }
    }
    return r.max_column_sum;
}

// ---------------------------------------------------------------------------
// g

void build_injection_g(PartitionReport& r) {
    r.g.clear();
    std::set<std::size_t> u1;
    std::vector<Subset> halves_members;
    std::map<std::size_t, int> u2_use;
    for (const Subset& f : r.f3) {
        const CoefficientVector& vec = r.f.at(f);
        if (vec.entries.size() == 1) {
            if (!u1.insert(vec.entries[0].first).second) {
                violation("g", "two unit images share index " +
                                   r.index_family[vec.entries[0].first].to_string());
            }
            r.g[f] = vec.entries[0].first;
        } else {
            halves_members.push_back(f);
            for (const auto& [idx, w] : vec.entries) ++u2_use[idx];
        }
    }
    std::vector<std::size_t> u2;
    for (const auto& [idx, uses] : u2_use) {
        if (u1.contains(idx)) {
            violation("g", "index " + r.index_family[idx].to_string() + " is in U1 and U2");
        }
        if (uses > 2) {
            violation("g", "index " + r.index_family[idx].to_string() + " appears in " +
                               std::to_string(uses) + " half images");
        }
        u2.push_back(idx);
    }
    if (halves_members.size() > u2.size()) {
        violation("g", std::to_string(halves_members.size()) + " half-image members but only " +
                           std::to_string(u2.size()) + " indices in U2");
    }
    std::sort(halves_members.begin(), halves_members.end());
    for (std::size_t t = 0; t < halves_members.size(); ++t) r.g[halves_members[t]] = u2[t];

    std::set<std::size_t> image;
    for (const auto& [member, idx] : r.g) {
        if (!image.insert(idx).second) violation("g", "not injective at index " + std::to_string(idx));
    }
}

// ---------------------------------------------------------------------------
// audit

BoundAudit audit_bound(PartitionReport& r) {
    const int n = r.n, d = r.d;
    BoundAudit a;
    a.family = r.family.size();
    a.f1 = r.f1.size();
    a.f2 = r.f2.size();
    a.f3 = r.f3.size();
    a.pair_members = r.pairs.members.size();
    a.index_family = r.index_family.size();
    a.cobar_f = complement_shadow(r.family).members.size();
    const auto cobar_g = complement_shadow(r.good.family).members;
    a.cobar_g = cobar_g.size();
    a.cobar_g_in_v = static_cast<std::uint64_t>(std::count_if(
        cobar_g.begin(), cobar_g.end(), [&](const Subset& s) { return s.is_subset_of(r.v); }));
    const auto cobar_f3 = complement_shadow(UniformFamily(n, d + 1, r.f3)).members;
    a.cobar_f3 = cobar_f3.size();
    a.cobar_f3_in_v = static_cast<std::uint64_t>(std::count_if(
        cobar_f3.begin(), cobar_f3.end(), [&](const Subset& s) { return s.is_subset_of(r.v); }));
    a.binom_n1_d = binomial(n - 1, d);
    a.binom_n2_d1 = binomial(n - 2, d - 1);
    a.binom_n2_d = binomial(n - 2, d);

    const auto add = [&](std::string name, std::int64_t lhs, std::int64_t rhs, bool holds) {
        a.asserted.push_back({std::move(name), lhs, rhs, holds});
    };
    add("|F3| <= |S|", as_signed(a.f3), as_signed(a.index_family), a.f3 <= a.index_family);
    const std::int64_t s_formula =
        as_signed(a.binom_n2_d1) + as_signed(a.binom_n2_d) - as_signed(a.cobar_f3_in_v);
    add("|S| = C(n-2,d-1) + C(n-2,d) - |cobar F3 in C(V,d)|", as_signed(a.index_family),
        s_formula, as_signed(a.index_family) == s_formula);
    const std::int64_t chain =
        as_signed(a.f1) + as_signed(a.f2) + as_signed(a.binom_n1_d) - as_signed(a.cobar_f3_in_v);
    add("|F| <= |F1| + |F2| + C(n-1,d) - |cobar F3 in C(V,d)|", as_signed(a.family), chain,
        as_signed(a.family) <= chain);
    a.slack = chain - as_signed(a.family);

    a.tenth_cobar_f = Fraction::of(as_signed(a.cobar_f), 10);
    if (d >= 2) {
        a.pair_threshold = Fraction::of(400 * d * d * as_signed(ipow(n, d - 2)), 1);
    } else {
        a.pair_threshold = Fraction::of(400 * d * d, as_signed(ipow(n, 2 - d)));
    }
    a.corollary_bound = Fraction::of(10 * (as_signed(a.binom_n1_d) - as_signed(a.family)), 9);
    a.v_share_of_cobar_g = Fraction::of(as_signed(a.cobar_g_in_v), as_signed(a.cobar_g));

    for (const auto& ineq : a.asserted) {
        if (!ineq.holds) {
            violation("audit", ineq.name + " fails: " + std::to_string(ineq.lhs) + " vs " +
                                   std::to_string(ineq.rhs));
        }
    }
    r.audit = a;
    return a;
}

PartitionReport run_pipeline(const UniformFamily& fam, int d, const PipelineOptions& opts) {
    PartitionReport r = partition_family(fam, d, opts);
    build_f(r);
    verify_column_sums(r);
    build_injection_g(r);
    audit_bound(r);
    return r;
}

}  // namespace vcx
