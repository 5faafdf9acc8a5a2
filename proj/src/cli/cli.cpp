#include "vcx/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include <CLI11.hpp>

#include "vcx/certificates.hpp"
#include "vcx/cli/fuzz.hpp"
#include "vcx/cli/io.hpp"
#include "vcx/cli/report.hpp"
#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"
#include "vcx/pipeline.hpp"
#include "vcx/search.hpp"
#include "vcx/sunflower.hpp"

namespace vcx::cli {

namespace {

struct Globals {
    bool json = false;
    int threads = 1;
    std::uint64_t seed = 0;
    std::string manifest;
};

/// What a subcommand hands back: the JSON result, its table rendering and
/// the exit code.
struct Outcome {
    Json json;
    std::string table;
    int code = kExitOk;
};

struct Loaded {
    UniformFamily fam;
    std::uint64_t digest = 0;
};

Loaded load_input(const std::string& path) {
    const std::string text = read_file(path);
    return {parse_family(text, path), fnv1a64(text)};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"vcx: VC-dimension toolkit for uniform set families"};
    app.name("vcx");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_flag("--json", g.json, "Emit JSON instead of a table");
    app.add_option("--threads", g.threads, "Worker threads for search and fuzz")->check(CLI::Range(1, 256));
    app.add_option("--seed", g.seed, "Seed for random generation (fuzz: first seed)");
    app.add_option("--manifest", g.manifest, "Write a run manifest (JSON) to this path");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a family (.fam)");
    std::string kind;
    int gen_n = 0, gen_d = 0;
    std::optional<int> gen_k;
    std::string gen_out;
    gen->add_option("--kind", kind, "star | complete | random")->required()->check(
        CLI::IsMember({"star", "complete", "random"}));
    gen->add_option("--n", gen_n, "Ground set size")->required();
    gen->add_option("--d", gen_d, "VC bound d; members have d+1 elements")->required();
    gen->add_option("--k", gen_k, "complete only: member size (default d+1)");
    gen->add_option("--out", gen_out, "Output .fam path (default: stdout)");

    // vc
    auto* vc = app.add_subcommand("vc", "VC dimension with a shattered witness");
    std::string vc_in;
    vc->add_option("--input", vc_in, "Family file")->required();

    // shadow
    auto* sh = app.add_subcommand("shadow", "Shadow or complement shadow");
    std::string sh_in;
    bool sh_comp = false;
    sh->add_option("--input", sh_in, "Family file")->required();
    sh->add_flag("--complement", sh_comp, "Report the complement shadow");

    // certify
    auto* cert = app.add_subcommand("certify", "Maximum certificate assignment, strata and fibers");
    std::string cert_in;
    int cert_d = 0;
    cert->add_option("--input", cert_in, "Family file")->required();
    cert->add_option("--d", cert_d, "VC bound d")->required();

    // sunflower
    auto* sun = app.add_subcommand("sunflower", "Extract a p-sunflower");
    std::string sun_in;
    int sun_p = 0;
    sun->add_option("--input", sun_in, "Family file")->required();
    sun->add_option("--p", sun_p, "Number of petals")->required();

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "Partition pipeline with f, g and the bound audit");
    std::string pipe_in;
    int pipe_d = 0;
    bool assume_vc = false;
    pipe->add_option("--input", pipe_in, "Family file")->required();
    pipe->add_option("--d", pipe_d, "VC bound d")->required();
    pipe->add_flag("--assume-vc", assume_vc, "Skip the up-front VC check");

    // search
    auto* search = app.add_subcommand("search", "Exact search for extremal families");
    int s_n = 0, s_d = 0;
    std::string mode = "exact";
    std::optional<int> s_order;
    std::optional<std::uint64_t> s_target;
    std::uint64_t max_nodes = 0;
    double timeout_sec = 0;
    search->add_option("--n", s_n, "Ground set size")->required();
    search->add_option("--d", s_d, "VC bound d")->required();
    search->add_option("--mode", mode, "exact | witness | order-s")->check(
        CLI::IsMember({"exact", "witness", "order-s"}));
    search->add_option("--s", s_order, "Certificate order (order-s mode)");
    search->add_option("--target", s_target, "Witness size (default C(n-1,d)+C(n-4,d-2))");
    search->add_option("--max-nodes", max_nodes, "Node budget (0 = unlimited)");
    search->add_option("--timeout", timeout_sec, "Time budget in seconds (0 = unlimited)")->check(
        CLI::NonNegativeNumber);

    // fuzz
    auto* fuzz = app.add_subcommand("fuzz", "Invariant fuzz campaign over random maximal families");
    int f_n = 0, f_d = 0;
    std::uint64_t f_count = 0;
    std::optional<std::uint64_t> f_seed0;
    std::string keep = "1/1";
    std::string dump_dir = "fuzz-failures";
    fuzz->add_option("--n", f_n, "Ground set size")->required();
    fuzz->add_option("--d", f_d, "VC bound d")->required();
    fuzz->add_option("--count", f_count, "Number of seeds")->required();
    fuzz->add_option("--seed0", f_seed0, "First seed (default: --seed)");
    fuzz->add_option("--keep", keep, "Subsample ratio num/den applied to each maximal family");
    fuzz->add_option("--dump-dir", dump_dir, "Directory for failure artifacts");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.command_line.push_back("vcx");
    manifest.command_line.insert(manifest.command_line.end(), args.begin(), args.end());
    Outcome o;
    try {
        if (*gen) {
            UniformFamily fam;
            if (kind == "star") {
                fam = star_family(gen_n, gen_d);
            } else if (kind == "complete") {
                fam = complete_family(gen_n, gen_k.value_or(gen_d + 1));
            } else {
                fam = random_maximal_vc_family(FuzzSeed{g.seed, gen_n, gen_d});
                manifest.seeds.push_back(g.seed);
            }
            o.json = family_json(fam);
            const std::string text = format_family(fam);
            if (!gen_out.empty()) {
                write_file(gen_out, text);
                o.table = "wrote " + std::to_string(fam.size()) + " members to " + gen_out + "\n";
            } else {
                o.table = text;
            }
        } else if (*vc) {
            const Loaded in = load_input(vc_in);
            manifest.input_digest = in.digest;
            o.json = vc_json(in.fam);
            o.table = vc_table(in.fam);
        } else if (*sh) {
            const Loaded in = load_input(sh_in);
            manifest.input_digest = in.digest;
            const ShadowSet s = sh_comp ? complement_shadow(in.fam) : shadow(in.fam);
            o.json = shadow_json(in.fam, s);
            o.table = shadow_table(in.fam, s);
        } else if (*cert) {
            const Loaded in = load_input(cert_in);
            manifest.input_digest = in.digest;
            const CertificateAssignment a = build_assignment(in.fam, cert_d);
            check_assignment(a);
            o.json = certify_json(a);
            o.table = certify_table(a);
        } else if (*sun) {
            const Loaded in = load_input(sun_in);
            manifest.input_digest = in.digest;
            const auto found = find_sunflower(in.fam, sun_p);
            if (found && !validate_sunflower(*found)) throw InvariantViolation("extracted sunflower is invalid");
            if (!found && in.fam.size() >= sunflower_threshold(in.fam.k(), sun_p)) {
                throw InvariantViolation("no sunflower found at or above the threshold size");
            }
            o.json = sunflower_json(in.fam, sun_p, found);
            o.table = sunflower_table(in.fam, sun_p, found);
        } else if (*pipe) {
            const Loaded in = load_input(pipe_in);
            manifest.input_digest = in.digest;
            PipelineOptions popts;
            popts.assume_vc = assume_vc;
            const PartitionReport r = run_pipeline(in.fam, pipe_d, popts);
            verify_report(r);
            o.json = pipeline_json(r);
            o.table = pipeline_table(r);
            if (!r.audit.all_hold()) o.code = kExitInvariant;
        } else if (*search) {
            SearchBudget b;
            b.max_nodes = max_nodes;
            b.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout_sec * 1000.0));
            b.threads = g.threads;
            SearchResult r;
            if (mode == "exact") {
                r = exact_max(s_n, s_d, b);
            } else if (mode == "witness") {
                r = lower_bound_witness(s_n, s_d, s_target, b);
            } else {
                if (!s_order) throw UsageError("order-s mode needs --s");
                r = certificate_order_max(s_n, s_d, *s_order, b);
            }
            o.json = search_json(r);
            o.table = search_table(r);
            if (mode == "witness" ? r.best < r.target : r.budget_exhausted) o.code = kExitBudget;
            if (o.json.value("counterexample", false)) {
                err << "CONJECTURE COUNTEREXAMPLE: order-" << r.order << " family of size " << r.best
                    << " exceeds C(n-1,d) = " << o.json["conjectured_bound"].get<std::uint64_t>() << "\n";
            }
        } else if (*fuzz) {
            FuzzOptions fo;
            fo.n = f_n;
            fo.d = f_d;
            fo.count = f_count;
            fo.seed0 = f_seed0.value_or(g.seed);
            fo.threads = g.threads;
            fo.dump_dir = dump_dir;
            const auto slash = keep.find('/');
            try {
                fo.keep_num = std::stoull(keep.substr(0, slash));
                fo.keep_den = slash == std::string::npos ? 1 : std::stoull(keep.substr(slash + 1));
            } catch (const std::exception&) {
                throw UsageError("--keep expects num/den");
            }
            manifest.seeds.push_back(fo.seed0);
            const FuzzSummary s = fuzz_campaign(fo);
            o.json = fuzz_json(s);
            o.table = fuzz_table(s);
            if (s.failed > 0) o.code = kExitInvariant;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ShatteredMemberError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    }

    out << (g.json ? dump(o.json) : o.table);
    if (!g.manifest.empty()) {
        manifest.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        manifest.result_digest = result_digest(o.json);
        try {
            write_file(g.manifest, dump(manifest_json(manifest)));
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return o.code;
}

}  // namespace vcx::cli
