// cogsyn: run scenario files, verify report manifests, print the built-in
// diagram demonstration, and census hom-vs-iso counts for two graph files.
//
// Exit codes: 0 success, 1 analysis undecided at scale (or a verify
// mismatch), 2 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cogsyn/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cogsyn::Error(cogsyn::Errc::bad_input, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string default_out_base() {
  if (const char* env = std::getenv("COGSYN_OUT_DIR"); env && *env) return env;
  return "cogsyn-out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cognitive-synergy scenario runner"};
  app.require_subcommand(1);

  std::string scenario_path, manifest_path, census_a, census_b, out_dir, weights;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1, partition_cells = 0, census_bound = 3;
  bool equal_costs = false, emit_gnuplot = false;

  CLI::App* run = app.add_subcommand("run", "run a scenario file and write its reports");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--seed", seed, "replace episode i's seed with SEED+i")
      ->each([&](const std::string&) { seed_set = true; });
  run->add_option("--jobs", jobs, "episodes built in parallel (result unchanged)");
  run->add_option("--out-dir", out_dir, "report directory (default $COGSYN_OUT_DIR/<name>)");
  run->add_option("--partition-cells", partition_cells, "override synergy partition size");
  run->add_option("--weights", weights, "override synergy weighting: uniform|midpoint")
      ->check(CLI::IsMember({"uniform", "midpoint"}));
  run->add_flag("--emit-gnuplot", emit_gnuplot, "also write plottable .dat files");

  CLI::App* verify = app.add_subcommand("verify", "recompute the digests a manifest lists");
  verify->add_option("manifest", manifest_path, "manifest.json written by run")->required();

  CLI::App* demo = app.add_subcommand("demo-diagrams", "print the built-in diagram probe");
  demo->add_flag("--equal-costs", equal_costs,
                 "reprice the direct-jump route so the inequality fails");

  CLI::App* census = app.add_subcommand("census", "hom-vs-iso census over two graph files");
  census->add_option("graph_a", census_a, "first graph, text form")->required();
  census->add_option("graph_b", census_b, "second graph, text form")->required();
  census->add_option("--size-bound", census_bound, "max atoms per subgraph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      std::string text = read_file(scenario_path);
      cogsyn::Scenario sc = cogsyn::parse_scenario(text);
      cogsyn::RunOptions opts;
      opts.out_dir = out_dir.empty()
                         ? (std::filesystem::path(default_out_base()) / sc.name).string()
                         : out_dir;
      if (seed_set) opts.seed = seed;
      opts.jobs = jobs;
      if (partition_cells > 0) opts.partition_cells = partition_cells;
      if (!weights.empty()) opts.midpoint = (weights == "midpoint");
      opts.emit_gnuplot = emit_gnuplot;
      cogsyn::RunResult res = cogsyn::run_scenario(sc, text, opts);
      std::cout << res.summary;
      std::cout << "reports: " << res.out_dir << " (" << res.manifest.files.size()
                << " files + manifest.json)\n";
      if (res.undecided) {
        std::cout << "result: undecided at scale\n";
        return 1;
      }
      return 0;
    }
    if (verify->parsed()) {
      cogsyn::VerifyResult res = cogsyn::verify_manifest(manifest_path);
      if (res.ok) {
        std::cout << "ok: every digest matches\n";
        return 0;
      }
      for (const auto& f : res.mismatched) std::cout << "MISMATCH: " << f << "\n";
      return 1;
    }
    if (demo->parsed()) {
      cogsyn::DiagramOutcome d = cogsyn::demo_diagrams(equal_costs);
      std::cout << d.report;
      if (d.undecided) return 1;
      return 0;
    }
    if (census->parsed()) {
      cogsyn::Hypergraph a = cogsyn::from_text(read_file(census_a));
      cogsyn::Hypergraph b = cogsyn::from_text(read_file(census_b));
      cogsyn::CensusOptions opts;
      opts.size_bound = census_bound;
      std::cout << cogsyn::census_report(a, b, opts);
      return 0;
    }
  } catch (const cogsyn::Error& e) {
    if (e.code() == cogsyn::Errc::undecided_at_scale) {
      std::cerr << "undecided: " << e.what() << "\n";
      return 1;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
