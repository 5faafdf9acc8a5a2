#include "vcx/cli/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "vcx/certificates.hpp"
#include "vcx/cli/io.hpp"
#include "vcx/combinatorics.hpp"
#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"
#include "vcx/pipeline.hpp"
#include "vcx/trace_occupancy.hpp"

namespace vcx::cli {

namespace {

[[noreturn]] void violation(const std::string& msg) { throw InvariantViolation(msg); }

void check_maximal(const UniformFamily& fam, int d) {
    const int k = d + 1;
    TraceOccupancy occ(k, TraceOccupancy::proper_subsets_mask(k));
    for (const Subset& m : fam) occ.add(m.bits());
    for (const Subset& g : k_subsets(fam.n(), k)) {
        if (!fam.contains(g) && occ.can_add(g.bits())) {
            violation("family is not maximal: " + g.to_string() + " can be added");
        }
    }
}

struct Outcome {
    std::optional<SeedStats> stats;
    std::string error;
};

std::string dump_name(const FuzzOptions& o, std::uint64_t seed) {
    return "fail_n" + std::to_string(o.n) + "_d" + std::to_string(o.d) + "_seed" + std::to_string(seed);
}

FuzzFailure dump_failure(const FuzzOptions& o, std::uint64_t seed, const std::string& message) {
    FuzzFailure f{seed, message, {}, {}};
    if (o.dump_dir.empty()) return f;
    UniformFamily fam;
    try {
        fam = fuzz_family(o, seed);
    } catch (const std::exception&) {
        return f;
    }
    std::filesystem::create_directories(o.dump_dir);
    const std::string base = dump_name(o, seed);
    f.family_file = o.dump_dir / (base + ".fam");
    f.manifest_file = o.dump_dir / (base + ".manifest.json");
    const std::string text = format_family(fam);
    write_file(f.family_file, text);
    RunManifest m;
    m.command_line = {"vcx", "pipeline", "--input", f.family_file.string(), "--d", std::to_string(o.d), "--json"};
    m.input_digest = fnv1a64(text);
    m.seeds = {seed};
    Json j = manifest_json(m);
    j["failure"] = message;
    j["generator"] = Json{{"n", o.n}, {"d", o.d}, {"seed", seed},
                          {"keep_num", o.keep_num}, {"keep_den", o.keep_den}};
    write_file(f.manifest_file, dump(j));
    return f;
}

void merge(std::map<std::string, std::uint64_t>& into, const std::map<std::string, std::uint64_t>& from) {
    for (const auto& [k, v] : from) into[k] += v;
}

Json counts_json(const std::map<std::string, std::uint64_t>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

}  // namespace

UniformFamily fuzz_family(const FuzzOptions& opts, std::uint64_t seed) {
    UniformFamily fam = random_maximal_vc_family(FuzzSeed{seed, opts.n, opts.d});
    if (opts.keep_num < opts.keep_den) {
        // Different stream from the shuffle so the two draws are unrelated.
        fam = random_subfamily(fam, seed ^ 0x5bd1e995a5a5a5a5ULL, opts.keep_num, opts.keep_den);
    }
    return fam;
}

SeedStats check_family(const UniformFamily& fam, int d, bool expect_maximal) {
    SeedStats st;
    st.family_size = fam.size();
    const int n = fam.n();
    if (fam.k() != d + 1) violation("family is not (d+1)-uniform");
    const int vc = vc_dimension(fam);
    if (vc > d) violation("vc_dimension " + std::to_string(vc) + " exceeds d");
    if (fam.size() > sauer_shelah_bound(n, d)) violation("Sauer-Shelah bound exceeded");
    if (fam.size() > binomial(n, d)) violation("Frankl-Pach bound C(n,d) exceeded");
    if (expect_maximal) check_maximal(fam, d);

    const CertificateAssignment assign = build_assignment(fam, d);
    check_assignment(assign);
    const FiberHistogram hist = fiber_size_histogram(assign);
    st.max_fiber = hist.max_fiber;
    for (const auto& [t, fiber] : assign.fibers()) {
        if (t.size() == d - 1) ++st.shapes[to_string(classify_fiber(t, assign).kind)];
    }

    if (n >= 2) {
        const PartitionReport report = run_pipeline(fam, d);
        verify_report(report);
        if (!report.audit.all_hold()) violation("audit inequality failed");
        st.max_column_sum = report.max_column_sum;
        st.slack = report.audit.slack;
        for (const auto& [m, rule] : report.rules) ++st.rules[to_string(rule)];
        for (const auto& [m, cls] : report.classes) ++st.classes[to_string(cls)];
    }
    return st;
}

FuzzSummary fuzz_campaign(const FuzzOptions& opts) {
    if (opts.d < 1 || opts.d + 1 > opts.n) throw UsageError("fuzz needs 1 <= d and d+1 <= n");
    if (opts.keep_den == 0 || opts.keep_num > opts.keep_den) throw UsageError("keep ratio must lie in [0, 1]");
    std::vector<Outcome> outcomes(opts.count);
    const bool maximal = opts.keep_num >= opts.keep_den;
    std::atomic<std::uint64_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= opts.count) return;
            const std::uint64_t seed = opts.seed0 + i;
            try {
                const UniformFamily fam = fuzz_family(opts, seed);
                SeedStats st = check_family(fam, opts.d, maximal);
                st.seed = seed;
                outcomes[i].stats = std::move(st);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    FuzzSummary s;
    s.options = opts;
    s.fiber_ceiling = fiber_size_ceiling(opts.d);
    bool first = true;
    for (std::uint64_t i = 0; i < opts.count; ++i) {
        const Outcome& o = outcomes[i];
        if (!o.stats) {
            ++s.failed;
            s.failures.push_back(dump_failure(opts, opts.seed0 + i, o.error));
            continue;
        }
        const SeedStats& st = *o.stats;
        ++s.passed;
        s.max_fiber = std::max(s.max_fiber, st.max_fiber);
        s.max_column_sum = std::max(s.max_column_sum, st.max_column_sum);
        if (!s.tightest_slack || st.slack < *s.tightest_slack) s.tightest_slack = st.slack;
        s.min_family = first ? st.family_size : std::min(s.min_family, st.family_size);
        s.max_family = std::max(s.max_family, st.family_size);
        first = false;
        merge(s.shapes, st.shapes);
        merge(s.rules, st.rules);
        merge(s.classes, st.classes);
    }
    return s;
}

Json fuzz_json(const FuzzSummary& s) {
    Json failures = Json::array();
    for (const FuzzFailure& f : s.failures) {
        failures.push_back(Json{{"seed", f.seed},
                                {"message", f.message},
                                {"family_file", f.family_file.string()},
                                {"manifest_file", f.manifest_file.string()}});
    }
    const FuzzOptions& o = s.options;
    return Json{{"n", o.n},
                {"d", o.d},
                {"count", o.count},
                {"seed0", o.seed0},
                {"keep", Json{{"num", o.keep_num}, {"den", o.keep_den}}},
                {"passed", s.passed},
                {"failed", s.failed},
                {"family_size", Json{{"min", s.min_family}, {"max", s.max_family}}},
                {"max_fiber", s.max_fiber},
                {"fiber_ceiling", s.fiber_ceiling},
                {"max_column_sum", s.max_column_sum},
                {"tightest_slack", s.tightest_slack ? Json(*s.tightest_slack) : Json(nullptr)},
                {"fiber_shapes", counts_json(s.shapes)},
                {"f_rules", counts_json(s.rules)},
                {"classes", counts_json(s.classes)},
                {"failures", failures}};
}

std::string fuzz_table(const FuzzSummary& s) {
    std::ostringstream out;
    const FuzzOptions& o = s.options;
    out << "fuzz n=" << o.n << " d=" << o.d << " seeds " << o.seed0 << ".." << (o.seed0 + o.count)
        << " keep " << o.keep_num << "/" << o.keep_den << "\n";
    out << "passed " << s.passed << "  failed " << s.failed << "\n";
    out << "family size " << s.min_family << ".." << s.max_family << "\n";
    out << "max fiber " << s.max_fiber << " (ceiling " << s.fiber_ceiling << ")\n";
    out << "max column sum " << s.max_column_sum << "/2\n";
    if (s.tightest_slack) out << "tightest slack " << *s.tightest_slack << "\n";
    const auto list = [&](const char* title, const std::map<std::string, std::uint64_t>& m) {
        out << title << ":";
        for (const auto& [k, v] : m) out << " " << k << "=" << v;
        out << "\n";
    };
    list("fiber shapes", s.shapes);
    list("f rules", s.rules);
    list("classes", s.classes);
    for (const FuzzFailure& f : s.failures) {
        out << "FAIL seed " << f.seed << ": " << f.message;
        if (!f.family_file.empty()) out << " -> " << f.family_file.string();
        out << "\n";
    }
    return out.str();
}

}  // namespace vcx::cli
