#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oracle {

Set to_set(const vcx::Subset& s) {
    Set out;
    for (int e = 1; e <= s.n(); ++e) {
        if (s.contains(e)) out.push_back(e);
    }
    return out;
}

Fam to_fam(const vcx::UniformFamily& fam) {
    Fam out;
    for (const auto& m : fam) out.push_back(to_set(m));
    return out;
}

Set intersect(const Set& a, const Set& b) {
    Set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool subset_of(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::vector<Set> subsets_of(const Set& s) {
    std::vector<Set> out{{}};
    for (int e : s) {
        const std::size_t m = out.size();
        for (std::size_t i = 0; i < m; ++i) {
            Set t = out[i];
            t.push_back(e);
            out.push_back(t);
        }
    }
    return out;
}

std::vector<Set> all_subsets(int n) {
    Set ground;
    for (int e = 1; e <= n; ++e) ground.push_back(e);
    return subsets_of(ground);
}

bool shattered(const Set& s, const Fam& fam) {
    std::set<Set> traces;
    for (const Set& f : fam) traces.insert(intersect(f, s));
    for (const Set& a : subsets_of(s)) {
        if (!traces.contains(a)) return false;
    }
    return true;
}

int vc_dimension(int n, const Fam& fam) {
    if (fam.empty()) return -1;
    int best = -1;
    for (const Set& s : all_subsets(n)) {
        if (static_cast<int>(s.size()) > best && shattered(s, fam)) best = static_cast<int>(s.size());
    }
    return best;
}

std::vector<Set> certificates(const Set& f, const Fam& fam) {
    std::set<Set> traces;
    for (const Set& g : fam) traces.insert(intersect(g, f));
    std::vector<Set> out;
    for (const Set& t : subsets_of(f)) {
        if (t.size() < f.size() && !traces.contains(t)) out.push_back(t);
    }
    return out;
}

int max_certificate_size(const Set& f, const Fam& fam) {
    int best = -1;
    for (const Set& t : certificates(f, fam)) best = std::max(best, static_cast<int>(t.size()));
    return best;
}

std::vector<Set> shadow(const Fam& fam) {
    std::set<Set> out;
    for (const Set& f : fam) {
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Set s;
            for (std::size_t t = 0; t < f.size(); ++t) {
                if (t != skip) s.push_back(f[t]);
            }
            out.insert(s);
        }
    }
    return {out.begin(), out.end()};
}

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

namespace {

/// Enumerates subfamilies of C([n], d+1) by bitmask and keeps the largest one
/// passing `ok`. Per-mask work is a scan over precomputed trace indices.
template <typename Ok>
int enumerate(int n, int d, Ok ok) {
    std::vector<Set> cands;
    for (const Set& s : all_subsets(n)) {
        if (static_cast<int>(s.size()) == d + 1) cands.push_back(s);
    }
    const int m = static_cast<int>(cands.size());
    if (m > 24) throw std::invalid_argument("oracle enumeration too large");
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best) continue;
        Fam fam;
        for (int i = 0; i < m; ++i) {
            if (mask >> i & 1U) fam.push_back(cands[static_cast<std::size_t>(i)]);
        }
        if (ok(fam)) best = size;
    }
    return best;
}

}  // namespace

int extremal_number(int n, int d) {
    std::vector<Set> tests;
    for (const Set& s : all_subsets(n)) {
        if (static_cast<int>(s.size()) == d + 1) tests.push_back(s);
    }
    // VC <= d iff no (d+1)-set is shattered, since shattering is closed
    // under taking subsets.
    return enumerate(n, d, [&](const Fam& fam) {
        for (const Set& s : tests) {
            if (shattered(s, fam)) return false;
        }
        return true;
    });
}

int order_extremal_number(int n, int d, int s) {
    return enumerate(n, d, [&](const Fam& fam) {
        for (const Set& f : fam) {
            bool found = false;
            for (const Set& t : certificates(f, fam)) {
                if (static_cast<int>(t.size()) == s) found = true;
            }
            if (!found) return false;
        }
        return true;
    });
}

}  // namespace oracle
