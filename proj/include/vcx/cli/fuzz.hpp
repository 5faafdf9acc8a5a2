#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcx/cli/report.hpp"
#include "vcx/family.hpp"

namespace vcx::cli {

struct FuzzOptions {
    int n = 0;
    int d = 0;
    std::uint64_t count = 0;
    std::uint64_t seed0 = 0;
    int threads = 1;
    /// Keep each member of the maximal family with probability num/den
    /// (1/1 = the maximal family itself). Sparser families reach more
    /// certificate shapes.
    std::uint64_t keep_num = 1;
    std::uint64_t keep_den = 1;
    /// Where failing families and their manifests go; empty = no dump.
    std::filesystem::path dump_dir;
};

/// Per-seed statistics gathered while checking one family.
struct SeedStats {
    std::uint64_t seed = 0;
    std::size_t family_size = 0;
    std::size_t max_fiber = 0;
    int max_column_sum = 0;
    std::int64_t slack = 0;
    std::map<std::string, std::uint64_t> shapes;   ///< fiber kinds on F
    std::map<std::string, std::uint64_t> rules;    ///< f rules on F3
    std::map<std::string, std::uint64_t> classes;  ///< member classes
};

struct FuzzFailure {
    std::uint64_t seed = 0;
    std::string message;
    std::filesystem::path family_file;
    std::filesystem::path manifest_file;
};

struct FuzzSummary {
    FuzzOptions options;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::size_t max_fiber = 0;
    std::uint64_t fiber_ceiling = 0;
    int max_column_sum = 0;
    std::optional<std::int64_t> tightest_slack;
    std::size_t min_family = 0;
    std::size_t max_family = 0;
    std::map<std::string, std::uint64_t> shapes;
    std::map<std::string, std::uint64_t> rules;
    std::map<std::string, std::uint64_t> classes;
    std::vector<FuzzFailure> failures;
};

/// The family a campaign checks for `seed`.
UniformFamily fuzz_family(const FuzzOptions& opts, std::uint64_t seed);

/// Checks every module invariant on one family: VC bound, Sauer-Shelah and
/// Frankl-Pach sizes, maximality (when not subsampled), the certificate
/// assignment, fiber histogram and shapes, and the full pipeline with its
/// independent re-verification. Throws on the first violation.
SeedStats check_family(const UniformFamily& fam, int d, bool expect_maximal);

/// Runs seeds seed0 .. seed0+count-1, in parallel across seeds. The summary
/// does not depend on the thread count.
FuzzSummary fuzz_campaign(const FuzzOptions& opts);

Json fuzz_json(const FuzzSummary& s);
std::string fuzz_table(const FuzzSummary& s);

}  // namespace vcx::cli
