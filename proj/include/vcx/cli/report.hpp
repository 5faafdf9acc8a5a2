#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcx/certificates.hpp"
#include "vcx/family.hpp"
#include "vcx/pipeline.hpp"
#include "vcx/search.hpp"
#include "vcx/sunflower.hpp"

namespace vcx::cli {

using Json = nlohmann::ordered_json;

/// Keys holding timing or node counts; excluded from result digests.
inline constexpr const char* kVolatileKeys[] = {"nodes", "wall_ms"};

Json subset_json(const Subset& s);
/// Member key used in JSON objects: the .fam line form, "1 2 3".
std::string member_key(const Subset& s);
/// {"num": .., "den": ..}, or null for an undefined ratio.
Json fraction_json(const Fraction& f);

Json family_json(const UniformFamily& fam);
Json vc_json(const UniformFamily& fam);
Json shadow_json(const UniformFamily& fam, const ShadowSet& shadow);
Json certify_json(const CertificateAssignment& assign);
Json sunflower_json(const UniformFamily& fam, int p, const std::optional<Sunflower>& found);
/// Exactly the keys anchors, sizes, classes, f, g, asserted, reported.
Json pipeline_json(const PartitionReport& report);
Json search_json(const SearchResult& result);

std::string vc_table(const UniformFamily& fam);
std::string shadow_table(const UniformFamily& fam, const ShadowSet& shadow);
std::string certify_table(const CertificateAssignment& assign);
std::string sunflower_table(const UniformFamily& fam, int p, const std::optional<Sunflower>& found);
/// Human-readable audit chain.
std::string pipeline_table(const PartitionReport& report);
std::string search_table(const SearchResult& result);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

/// Copy of j with every kVolatileKeys entry removed at any depth.
Json strip_volatile(const Json& j);

/// FNV-1a of dump(strip_volatile(j)).
std::uint64_t result_digest(const Json& j);

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::vector<std::string> command_line;
    std::optional<std::uint64_t> input_digest;  ///< FNV-1a of the family file bytes
    std::vector<std::uint64_t> seeds;
    std::string tool_version = kToolVersion;
    std::int64_t wall_ms = 0;
    std::uint64_t result_digest = 0;
};

Json manifest_json(const RunManifest& m);

}  // namespace vcx::cli
