#include <algorithm>
#include <set>

#include "vcx/errors.hpp"
#include "vcx/pipeline.hpp"

namespace vcx {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InvariantViolation("verify: " + what); }

void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
}

std::vector<Subset> sorted(std::vector<Subset> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

void verify_report(const PartitionReport& r) {
    const int d = r.d;
    const UniformFamily& fam = r.family;
    const CertificateAssignment& cf = r.assignment;
    const CertificateAssignment& cg = r.good.assignment;

    // c_F and P.
    check_assignment(cf);
    check_pair_collection(r.pairs, cf);

    // G = (F_d ∪ F_{d-1}) \ P, F1 = F \ G.
    std::vector<Subset> g_expect, f1_expect;
    for (const Subset& f : fam) {
        const int s = cf.certificate(f).size();
        const bool paired =
            std::binary_search(r.pairs.members.begin(), r.pairs.members.end(), f);
        if ((s == d || s == d - 1) && !paired) {
            g_expect.push_back(f);
        } else {
            f1_expect.push_back(f);
        }
    }
    expect(std::vector<Subset>(r.good.family.begin(), r.good.family.end()) == g_expect,
           "G differs from (F_d ∪ F_{d-1}) \\ P");
    expect(sorted(r.f1) == f1_expect, "F1 differs from F \\ G");

    // c_G: maximum G-certificates, sizes in [d-1, d], inherited at size d-1.
    check_assignment(cg);
    check_good_subfamily(r.good);
    for (const Subset& f : r.good.family) {
        const Subset& c = cg.certificate(f);
        if (c.size() == d - 1) expect(c == cf.certificate(f), "c_G(" + f.to_string() + ") != c_F");
    }
    for (const auto& [t, members] : cg.fibers()) {
        if (t.size() == d - 1) classify_fiber(t, cg);
    }

    // Anchors are a deterministic function of G.
    const AnchorPair again = select_anchor_pair(r.good);
    expect(again.i == r.anchors.i && again.j == r.anchors.j, "anchor selection not reproducible");
    const int i = r.anchors.i, j = r.anchors.j;
    const Subset ij = Subset::of(r.n, {i, j});
    expect(r.v == Subset::ground(r.n) - ij, "V != [n] \\ {i,j}");

    // Partition exactness.
    std::vector<Subset> all;
    all.insert(all.end(), r.f1.begin(), r.f1.end());
    all.insert(all.end(), r.f2.begin(), r.f2.end());
    all.insert(all.end(), r.f3.begin(), r.f3.end());
    std::sort(all.begin(), all.end());
    expect(std::adjacent_find(all.begin(), all.end()) == all.end(), "F1, F2, F3 overlap");
    expect(all == std::vector<Subset>(fam.begin(), fam.end()), "F1 ∪ F2 ∪ F3 != F");

    std::vector<Subset> f2_expect, f3_expect;
    for (const Subset& f : r.good.family) {
        const Subset& c = cg.certificate(f);
        const bool gij = ij.is_subset_of(f) && (c - ij).size() <= d - 2;
        const bool low = c.size() == d - 1 && (f.contains(i) || f.contains(j));
        (gij || low ? f2_expect : f3_expect).push_back(f);
    }
    expect(sorted(r.f2) == f2_expect, "F2 differs from G(i,j) ∪ G_{d-1}(i) ∪ G_{d-1}(j)");
    expect(sorted(r.f3) == f3_expect, "F3 differs from G \\ F2");

    // Classes.
    expect(r.classes.size() == fam.size(), "not every member has a class");
    for (const Subset& f : r.f1) expect(r.classes.at(f) == MemberClass::kF1, "F1 label");
    for (const Subset& f : r.f2) expect(r.classes.at(f) == MemberClass::kF2, "F2 label");
    std::map<Subset, std::vector<Subset>> kd1_groups;
    for (const Subset& f : r.f3) {
        const Subset& c = cg.certificate(f);
        const MemberClass cls = r.classes.at(f);
        if (f.is_subset_of(r.v)) {
            expect(cls == (c.size() == d ? MemberClass::kKd : MemberClass::kKd1),
                   "K label of " + f.to_string());
            if (cls == MemberClass::kKd1) kd1_groups[c].push_back(f);
            continue;
        }
        expect(c.size() == d, "H member " + f.to_string() + " has |c_G| != d");
        expect((c & ij).size() <= 1, "H member " + f.to_string() + " has both anchors in c_G");
        const int ca = (c & ij).size(), fa = (f & ij).size();
        const MemberClass want = ca == 0             ? MemberClass::kH0Star
                                 : fa == 1           ? MemberClass::kH11
                                                     : MemberClass::kH12;
        expect(cls == want, "H label of " + f.to_string());
    }
    for (const auto& [t, group] : kd1_groups) classify_members(t, group);

    // Index family.
    {
        std::set<Subset> idx;
        for (const Subset& s : k_subsets_of(r.v, d - 1)) idx.insert(s);
        for (const Subset& f : r.f3) {
            for (const Subset& s : k_subsets_of(f, d)) {
                if (s.is_subset_of(r.v)) idx.insert(s);
            }
        }
        expect(std::vector<Subset>(idx.begin(), idx.end()) == r.index_family,
               "index family differs from C(V,d-1) ∪ (C(V,d) \\ cobar F3)");
    }

    // f: well defined, mass one, supports inside the member and inside S_{F,c} on K_{d-1}.
    expect(r.f.size() == r.f3.size(), "f domain != F3");
    std::map<std::size_t, Subset> kd1_owner;
    for (const Subset& f : r.f3) {
        auto it = r.f.find(f);
        expect(it != r.f.end(), "f undefined at " + f.to_string());
        const auto& e = it->second.entries;
        const bool is_unit = e.size() == 1 && e[0].second == 2;
        const bool is_half = e.size() == 2 && e[0].second == 1 && e[1].second == 1 &&
                             e[0].first < e[1].first;
        expect(is_unit || is_half, "f(" + f.to_string() + ") is not u_S or (u_S + u_S')/2");
        const Subset& c = cg.certificate(f);
        std::vector<Subset> hood;
        if (r.classes.at(f) == MemberClass::kKd1) hood = certificate_neighbourhood(f, c);
        for (const auto& [idx, w] : e) {
            expect(idx < r.index_family.size(), "f index out of range");
            const Subset& s = r.index_family[idx];
            expect(s.is_subset_of(f), "f(" + f.to_string() + ") uses non-subset " + s.to_string());
            if (!hood.empty()) {
                expect(std::binary_search(hood.begin(), hood.end(), s),
                       "f(" + f.to_string() + ") leaves S_{F,c}");
                auto [pos, fresh] = kd1_owner.emplace(idx, c);
                expect(fresh || pos->second == c, "K_{d-1} supports with different c overlap");
            }
        }
    }

    // Column sums.
    std::vector<int> sums(r.index_family.size(), 0);
    for (const auto& [f, vec] : r.f) {
        for (const auto& [idx, w] : vec.entries) sums[idx] += w;
    }
    expect(sums == r.column_sums, "stored column sums are stale");
    for (int s : sums) expect(s <= 2, "column sum above one");

    // g.
    expect(r.g.size() == r.f3.size(), "g domain != F3");
    std::set<std::size_t> u1, u2, image;
    for (const Subset& f : r.f3) {
        const auto& e = r.f.at(f).entries;
        if (e.size() == 1) {
            u1.insert(e[0].first);
            expect(r.g.at(f) == e[0].first, "g differs from f on a unit image");
        } else {
            for (const auto& [idx, w] : e) u2.insert(idx);
        }
        expect(image.insert(r.g.at(f)).second, "g not injective");
    }
    for (const Subset& f : r.f3) {
        if (r.f.at(f).entries.size() != 1) {
            expect(u2.contains(r.g.at(f)), "g sends a half-image member outside U2");
        }
    }
    for (std::size_t idx : u1) expect(!u2.contains(idx), "U1 ∩ U2 nonempty");
    expect(r.f3.size() <= r.index_family.size(), "|F3| > |S|");

    // Audit.
    expect(r.audit.family == fam.size() && r.audit.f1 == r.f1.size() &&
               r.audit.f2 == r.f2.size() && r.audit.f3 == r.f3.size() &&
               r.audit.index_family == r.index_family.size(),
           "audit sizes are stale");
    expect(!r.audit.asserted.empty() && r.audit.all_hold(), "audit inequality fails");
    expect(r.audit.family + r.audit.cobar_f3_in_v <=
               r.audit.f1 + r.audit.f2 + r.audit.binom_n1_d,
           "|F| <= |F1| + |F2| + C(n-1,d) - |cobar F3 ∩ C(V,d)| fails");
}

}  // namespace vcx
