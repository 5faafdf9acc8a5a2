#include "vcx/cli/report.hpp"

#include <algorithm>
#include <sstream>

#include "vcx/cli/io.hpp"
#include "vcx/combinatorics.hpp"

namespace vcx::cli {

namespace {

Json members_json(std::span<const Subset> members) {
    Json arr = Json::array();
    for (const Subset& m : members) arr.push_back(subset_json(m));
    return arr;
}

std::string frac_text(const Fraction& f) {
    if (f.den == 0) return "undefined";
    if (f.den == 1) return std::to_string(f.num);
    return std::to_string(f.num) + "/" + std::to_string(f.den);
}

std::string coeff_text(const PartitionReport& r, const CoefficientVector& v) {
    std::string out;
    for (const auto& [idx, half] : v.entries) {
        if (!out.empty()) out += " + ";
        out += (half == 2 ? "u" : (half == 1 ? "1/2 u" : std::to_string(half) + "/2 u"));
        out += r.index_family[idx].to_string();
    }
    return out;
}

std::uint64_t conjectured_bound(int n, int d) { return binomial(n - 1, d); }

}  // namespace

Json subset_json(const Subset& s) {
    Json arr = Json::array();
    for (int e : s.elements()) arr.push_back(e);
    return arr;
}

std::string member_key(const Subset& s) { return s.to_line(); }

Json fraction_json(const Fraction& f) {
    if (f.den == 0) return nullptr;
    return Json{{"num", f.num}, {"den", f.den}};
}

Json family_json(const UniformFamily& fam) {
    return Json{{"n", fam.n()}, {"k", fam.k()}, {"size", fam.size()},
                {"members", members_json(fam.members())}};
}

Json vc_json(const UniformFamily& fam) {
    const int vc = vc_dimension(fam);
    Json j{{"n", fam.n()}, {"k", fam.k()}, {"size", fam.size()}, {"vc_dimension", vc}};
    const auto witness = vc >= 0 ? shattered_witness(fam, vc) : std::nullopt;
    j["witness"] = witness ? subset_json(*witness) : Json(nullptr);
    if (vc >= 0) {
        j["sauer_shelah_bound"] = sauer_shelah_bound(fam.n(), vc);
        if (vc < fam.k()) j["frankl_pach_bound"] = binomial(fam.n(), fam.k() - 1);
    }
    return j;
}

Json shadow_json(const UniformFamily& fam, const ShadowSet& shadow) {
    return Json{{"n", fam.n()},
                {"k", fam.k()},
                {"complement", shadow.complement},
                {"size", shadow.members.size()},
                {"total", binomial(fam.n(), fam.k() - 1)},
                {"members", members_json(shadow.members)}};
}

Json certify_json(const CertificateAssignment& assign) {
    const UniformFamily& fam = assign.family();
    Json certs = Json::object();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        certs[member_key(fam[i])] = subset_json(assign.assigned()[i]);
    }
    Json strata = Json::object();
    for (const auto& [s, members] : assign.strata()) strata[std::to_string(s)] = members.size();
    const FiberHistogram hist = fiber_size_histogram(assign);
    Json histogram = Json::object();
    for (const auto& [size, count] : hist.counts) histogram[std::to_string(size)] = count;
    Json shapes = Json::array();
    const int d = assign.d();
    for (const auto& [t, fiber] : assign.fibers()) {
        if (t.size() != d - 1) continue;
        const FiberShape shape = classify_fiber(t, assign);
        Json named = Json::array();
        for (int e : shape.named) named.push_back(e);
        shapes.push_back(Json{{"certificate", subset_json(t)},
                              {"kind", to_string(shape.kind)},
                              {"named", named},
                              {"fiber", members_json(shape.fiber)}});
    }
    return Json{{"n", fam.n()},
                {"d", d},
                {"size", fam.size()},
                {"certificates", certs},
                {"strata", strata},
                {"fiber_histogram", histogram},
                {"max_fiber", hist.max_fiber},
                {"fiber_ceiling", hist.ceiling},
                {"fiber_shapes", shapes}};
}

Json sunflower_json(const UniformFamily& fam, int p, const std::optional<Sunflower>& found) {
    Json j{{"n", fam.n()},
           {"k", fam.k()},
           {"size", fam.size()},
           {"p", p},
           {"threshold", sunflower_threshold(fam.k(), p)},
           {"found", found.has_value()}};
    if (found) {
        j["core"] = subset_json(found->core);
        j["petals"] = members_json(found->petals);
        j["valid"] = validate_sunflower(*found);
    }
    return j;
}

Json pipeline_json(const PartitionReport& r) {
    const BoundAudit& a = r.audit;
    Json anchors{{"i", r.anchors.i},
                 {"j", r.anchors.j},
                 {"cobar_score", r.anchors.cobar_score},
                 {"low_score", r.anchors.low_score}};
    Json sizes{{"n", r.n},
               {"d", r.d},
               {"family", a.family},
               {"f1", a.f1},
               {"f2", a.f2},
               {"f3", a.f3},
               {"pair_members", a.pair_members},
               {"index_family", a.index_family},
               {"cobar_f", a.cobar_f},
               {"cobar_g", a.cobar_g},
               {"cobar_g_in_v", a.cobar_g_in_v},
               {"cobar_f3", a.cobar_f3},
               {"cobar_f3_in_v", a.cobar_f3_in_v},
               {"binom_n1_d", a.binom_n1_d},
               {"binom_n2_d1", a.binom_n2_d1},
               {"binom_n2_d", a.binom_n2_d},
               {"max_column_sum", r.max_column_sum}};
    Json classes = Json::object();
    for (const Subset& m : r.family) classes[member_key(m)] = to_string(r.classes.at(m));
    Json f = Json::object();
    for (const auto& [m, v] : r.f) {
        Json entries = Json::array();
        for (const auto& [idx, half] : v.entries) entries.push_back(Json::array({idx, half}));
        f[member_key(m)] = entries;
    }
    Json g = Json::object();
    for (const auto& [m, idx] : r.g) g[member_key(m)] = idx;
    Json asserted = Json::array();
    for (const AssertedInequality& q : a.asserted) {
        asserted.push_back(Json{{"name", q.name}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"holds", q.holds}});
    }
    Json reported{{"slack", a.slack},
                  {"tenth_cobar_f", fraction_json(a.tenth_cobar_f)},
                  {"f1_plus_f2", a.f1 + a.f2},
                  {"pair_threshold", fraction_json(a.pair_threshold)},
                  {"corollary_bound", fraction_json(a.corollary_bound)},
                  {"v_share_of_cobar_g", fraction_json(a.v_share_of_cobar_g)}};
    return Json{{"anchors", anchors}, {"sizes", sizes},       {"classes", classes}, {"f", f},
                {"g", g},             {"asserted", asserted}, {"reported", reported}};
}

Json search_json(const SearchResult& r) {
    Json j{{"mode", to_string(r.mode)}, {"n", r.n}, {"d", r.d}};
    if (r.mode == SearchMode::kOrder) j["s"] = r.order;
    if (r.mode == SearchMode::kWitness) {
        j["target"] = r.target;
        j["target_reached"] = r.best >= r.target;
        j["target_unreachable"] = r.target_unreachable;
    }
    j["best"] = r.best;
    j["optimal"] = r.optimal;
    j["budget_exhausted"] = r.budget_exhausted;
    Json bracket{{"lower", bracket_lower(r.n, r.d)},
                 {"upper", bracket_upper(r.n, r.d)},
                 {"applies", r.d >= 2 && r.n >= 2 * (r.d + 1)}};
    j["bracket"] = bracket;
    if (r.mode == SearchMode::kOrder) {
        j["conjectured_bound"] = conjectured_bound(r.n, r.d);
        j["counterexample"] = r.best > conjectured_bound(r.n, r.d);
    }
    j["witness"] = members_json(r.witness.members());
    j["nodes"] = r.nodes;
    j["wall_ms"] = r.wall.count();
    return j;
}

std::string vc_table(const UniformFamily& fam) {
    const Json j = vc_json(fam);
    std::ostringstream out;
    out << "n=" << fam.n() << " k=" << fam.k() << " size=" << fam.size() << "\n";
    out << "vc_dimension " << j["vc_dimension"].get<int>() << "\n";
    if (!j["witness"].is_null()) {
        Subset w = Subset::empty(fam.n());
        for (int e : j["witness"]) w = w.with(e);
        out << "witness " << w.to_string() << "\n";
    }
    if (j.contains("sauer_shelah_bound")) out << "sauer_shelah_bound " << j["sauer_shelah_bound"].get<std::uint64_t>() << "\n";
    if (j.contains("frankl_pach_bound")) out << "frankl_pach_bound " << j["frankl_pach_bound"].get<std::uint64_t>() << "\n";
    return out.str();
}

std::string shadow_table(const UniformFamily& fam, const ShadowSet& shadow) {
    std::ostringstream out;
    out << (shadow.complement ? "complement shadow" : "shadow") << " of n=" << fam.n()
        << " k=" << fam.k() << ": " << shadow.members.size() << " of "
        << binomial(fam.n(), fam.k() - 1) << "\n";
    for (const Subset& s : shadow.members) out << "  " << s.to_string() << "\n";
    return out.str();
}

std::string certify_table(const CertificateAssignment& assign) {
    const UniformFamily& fam = assign.family();
    std::ostringstream out;
    out << "n=" << fam.n() << " d=" << assign.d() << " size=" << fam.size() << "\n";
    out << "member -> certificate\n";
    for (std::size_t i = 0; i < fam.size(); ++i) {
        out << "  " << fam[i].to_string() << " -> " << assign.assigned()[i].to_string() << "\n";
    }
    out << "strata:";
    for (const auto& [s, members] : assign.strata()) out << " |F_" << s << "|=" << members.size();
    out << "\n";
    const FiberHistogram hist = fiber_size_histogram(assign);
    out << "fiber sizes:";
    for (const auto& [size, count] : hist.counts) out << " " << size << ":" << count;
    out << " (max " << hist.max_fiber << ", ceiling " << hist.ceiling << ")\n";
    for (const auto& [t, fiber] : assign.fibers()) {
        if (t.size() != assign.d() - 1) continue;
        const FiberShape shape = classify_fiber(t, assign);
        out << "  T=" << t.to_string() << " " << to_string(shape.kind) << " {";
        for (std::size_t i = 0; i < shape.fiber.size(); ++i) {
            out << (i ? ", " : "") << shape.fiber[i].to_string();
        }
        out << "}\n";
    }
    return out.str();
}

std::string sunflower_table(const UniformFamily& fam, int p, const std::optional<Sunflower>& found) {
    std::ostringstream out;
    out << "size=" << fam.size() << " k=" << fam.k() << " p=" << p
        << " threshold=" << sunflower_threshold(fam.k(), p) << "\n";
    if (!found) {
        out << "no sunflower found\n";
        return out.str();
    }
    out << "core " << found->core.to_string() << "\n";
    for (const Subset& petal : found->petals) out << "  petal " << petal.to_string() << "\n";
    out << "valid " << (validate_sunflower(*found) ? "yes" : "no") << "\n";
    return out.str();
}

std::string pipeline_table(const PartitionReport& r) {
    const BoundAudit& a = r.audit;
    std::ostringstream out;
    out << "n=" << r.n << " d=" << r.d << " |F|=" << a.family << "\n";
    out << "pairs: " << r.pairs.pairs.size() << " (" << a.pair_members << " members)\n";
    out << "anchors (" << r.anchors.i << "," << r.anchors.j << ")  V=" << r.v.to_string() << "\n";
    out << "|F1|=" << a.f1 << " |F2|=" << a.f2 << " |F3|=" << a.f3 << "\n";
    out << "index family (" << r.index_family.size() << "):";
    for (const Subset& s : r.index_family) out << " " << s.to_string();
    out << "\n";
    out << "member             class   f\n";
    for (const Subset& m : r.family) {
        std::string name = m.to_string();
        name.resize(std::max<std::size_t>(name.size(), 18), ' ');
        std::string cls = to_string(r.classes.at(m));
        cls.resize(std::max<std::size_t>(cls.size(), 7), ' ');
        out << name << " " << cls;
        if (const auto it = r.f.find(m); it != r.f.end()) {
            out << " " << coeff_text(r, it->second) << "  [" << to_string(r.rules.at(m)) << "]";
            out << "  g=" << r.index_family[r.g.at(m)].to_string();
        }
        out << "\n";
    }
    out << "max column sum " << r.max_column_sum << "/2\n";
    out << "audit:\n";
    for (const AssertedInequality& q : a.asserted) {
        out << "  " << (q.holds ? "ok   " : "FAIL ") << q.name << ": " << q.lhs
            << (q.name.find("<=") == std::string::npos ? " = " : " <= ") << q.rhs << "\n";
    }
    out << "reported:\n";
    out << "  slack " << a.slack << "\n";
    out << "  |F1|+|F2| = " << (a.f1 + a.f2) << " vs |cobar F|/10 = " << frac_text(a.tenth_cobar_f) << "\n";
    out << "  pair threshold " << frac_text(a.pair_threshold) << "\n";
    out << "  corollary bound " << frac_text(a.corollary_bound) << " vs |cobar F| = " << a.cobar_f << "\n";
    out << "  V share of cobar G " << frac_text(a.v_share_of_cobar_g) << "\n";
    return out.str();
}

std::string search_table(const SearchResult& r) {
    std::ostringstream out;
    out << "mode " << to_string(r.mode) << "  n=" << r.n << " d=" << r.d;
    if (r.mode == SearchMode::kOrder) out << " s=" << r.order;
    if (r.mode == SearchMode::kWitness) out << " target=" << r.target;
    out << "\n";
    out << "best " << r.best << (r.optimal ? " (optimal)" : " (not proven optimal)")
        << (r.budget_exhausted ? ", budget exhausted" : "") << "\n";
    out << "bracket [" << bracket_lower(r.n, r.d) << ", " << bracket_upper(r.n, r.d) << "]\n";
    if (r.mode == SearchMode::kOrder) {
        out << "conjectured bound " << conjectured_bound(r.n, r.d)
            << (r.best > conjectured_bound(r.n, r.d) ? "  EXCEEDED: counterexample\n" : "\n");
    }
    out << "nodes " << r.nodes << "  wall " << r.wall.count() << " ms\n";
    for (const Subset& m : r.witness) out << "  " << m.to_string() << "\n";
    return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json strip_volatile(const Json& j) {
    if (j.is_object()) {
        Json out = Json::object();
        for (auto it = j.begin(); it != j.end(); ++it) {
            const bool drop = std::any_of(std::begin(kVolatileKeys), std::end(kVolatileKeys),
                                          [&](const char* key) { return it.key() == key; });
            if (!drop) out[it.key()] = strip_volatile(it.value());
        }
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const Json& v : j) out.push_back(strip_volatile(v));
        return out;
    }
    return j;
}

std::uint64_t result_digest(const Json& j) { return fnv1a64(dump(strip_volatile(j))); }

Json manifest_json(const RunManifest& m) {
    Json seeds = Json::array();
    for (std::uint64_t s : m.seeds) seeds.push_back(s);
    return Json{{"command_line", m.command_line},
                {"input_digest", m.input_digest ? Json(hex64(*m.input_digest)) : Json(nullptr)},
                {"seeds", seeds},
                {"tool_version", m.tool_version},
                {"wall_ms", m.wall_ms},
                {"result_digest", hex64(m.result_digest)}};
}

}  // namespace vcx::cli
