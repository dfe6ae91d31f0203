#pragma once
// Scenario execution and reporting: analysis reports written atomically
// into an output directory, a digest manifest for byte-exact verification,
// the diagram probe, and the built-in two-route demonstration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cogsyn/census.hpp"
#include "cogsyn/projection.hpp"
#include "cogsyn/scenario.hpp"

namespace cogsyn {

inline constexpr const char* kToolVersion = "cogsyn 0.1.0";

struct RunOptions {
  std::string out_dir;                 // report directory, created on demand
  std::optional<std::uint64_t> seed;   // replaces episode i's seed with seed+i
  int jobs = 1;                        // episode-level parallelism
  std::optional<int> partition_cells;  // overrides every synergy request
  std::optional<bool> midpoint;        // overrides synergy weighting
  bool emit_gnuplot = false;           // also write plottable .dat files
};

struct ManifestFile {
  std::string path;    // relative to the output directory
  std::string digest;  // fnv-1a of the bytes
};

struct RunManifest {
  std::string scenario_name;
  std::string scenario_digest;  // digest of the scenario document text
  std::string tool_version;
  std::vector<std::uint64_t> seeds;  // effective per-episode seeds
  std::vector<ManifestFile> files;   // sorted by path; manifest.json itself excluded
};

struct RunResult {
  RunManifest manifest;
  std::string out_dir;
  bool undecided = false;  // some analysis hit its search bound
  std::string summary;     // contents of summary.txt
};

// Executes every requested analysis. Each report is written to a temporary
// name and renamed into place; manifest.json is written last.
RunResult run_scenario(const Scenario& sc, const std::string& scenario_text,
                       const RunOptions& opts);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> mismatched;  // files whose digest disagrees
};

// Recomputes every digest a manifest lists. Missing files are an error
// naming all of them; digest disagreements set ok = false.
VerifyResult verify_manifest(const std::string& manifest_path);

struct DiagramOutcome {
  std::string report;
  bool verified = false;   // a natural transformation was found and re-checked
  bool undecided = false;  // search bound hit
  bool all_hold = false;   // every morphism's indirect route beat its direct one
  std::vector<CostCompare> compares;  // per morphism, request order
};

DiagramOutcome run_diagram_request(const EpisodeStore& store, const DiagramRequest& req);

// Built-in fixture: process A reaches the target state only through two
// intermediate hops while process B jumps there directly, so the indirect
// route through B undercuts A's direct cost. With equal_costs the B route
// is repriced to match A's total and the inequality is reported as failing.
EpisodeStore demo_store(bool equal_costs);
DiagramRequest demo_request();
DiagramOutcome demo_diagrams(bool equal_costs);

std::string census_report(const Hypergraph& a, const Hypergraph& b, const CensusOptions& opts);

// fnv-1a digest of a file's bytes; unreadable files are an error.
std::string digest_file(const std::string& path);

}  // namespace cogsyn
