#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cogsyn/runner.hpp"
#include "doctest.h"

using namespace cogsyn;
namespace fs = std::filesystem;

namespace {

std::string scenarios_dir() {
  if (const char* e = std::getenv("COGSYN_SCENARIOS"); e && *e) return e;
  return "../scenarios";
}

std::string cli_path() {
  if (const char* e = std::getenv("COGSYN_CLI"); e && *e) return e;
  return "./cogsyn";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string scenario_text(const std::string& file) {
  return slurp(fs::path(scenarios_dir()) / file);
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("cogsyn-test-" + tag);
  fs::remove_all(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& capture = {}) {
  std::string cmd = cli_path() + " " + args;
  if (capture.empty())
    cmd += " > /dev/null 2>&1";
  else
    cmd += " > " + capture.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

void expect_field_error(const std::string& json_text, const std::string& field) {
  try {
    parse_scenario(json_text);
    FAIL_CHECK("no error for field ", field);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_input);
    CHECK(std::string(e.what()).find(field) != std::string::npos);
  }
}

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir))
    out[entry.path().filename().string()] = slurp(entry.path());
  return out;
}

}  // namespace

TEST_CASE("scenario parse diagnostics name the offending field") {
  expect_field_error("{", "not valid JSON");
  expect_field_error(R"({"kind":"episodic"})", "name");
  expect_field_error(R"({"name":"x","kind":"weekly"})", "kind");
  expect_field_error(R"({"name":"x","kind":"episodic"})", "patterns");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["a","a"]})", "patterns[1]");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["a b"]})", "patterns[0]");

  std::string base = R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1]})";
  CHECK_NOTHROW(parse_scenario(base));

  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":[]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1]})",
                     "environment.cycle");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":1,"seeds":[1]})",
                     "ticks");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"},
                 {"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1]})",
                     "processes[1].name");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"exogenous","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1]})",
                     "processes[0].name");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w","probability":2}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1]})",
                     "processes[0].probability");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1],
    "goals":[{"id":"g","pattern":"nope"}]})",
                     "goals[0].pattern");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1],
    "stuckness":{"band":["3/4","1/4"]}})",
                     "stuckness.band");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1],
    "analyses":{"synergy":[{"processes":["A","Z"]}]}})",
                     "analyses.synergy[0].processes[1]");
  expect_field_error(R"({"name":"x","kind":"episodic","patterns":["ctx:r"],
    "processes":[{"name":"A","acts_when":"r","establishes":"w"}],
    "environment":{"kind":"cycle","cycle":["r"]},
    "policy":{"kind":"constant","action":"go"},
    "ticks":4,"seeds":[1],
    "analyses":{"synergy":[{"processes":["A"]}]}})",
                     "analyses.synergy[0].processes");

  expect_field_error(R"({"name":"x","kind":"handcrafted","patterns":["p"],"episodes":[]})",
                     "episodes");
  expect_field_error(R"({"name":"x","kind":"handcrafted","patterns":["p"],
    "episodes":[{"situation":"s","states":[{"tick":0,"shows":["q"]}]}]})",
                     "episodes[0].states[0].shows[0]");
  expect_field_error(R"({"name":"x","kind":"handcrafted","patterns":["p"],
    "episodes":[{"situation":"s","states":[{"tick":0},{"tick":0}]}]})",
                     "episodes[0].states[1].tick");
  expect_field_error(R"({"name":"x","kind":"handcrafted","patterns":["p"],
    "episodes":[{"situation":"s","states":[{"tick":0}],
                 "transitions":[{"from":0,"to":3,"cause":"A"}]}]})",
                     "episodes[0].transitions[0].to");
  expect_field_error(R"({"name":"x","kind":"handcrafted","patterns":["p"],
    "episodes":[{"situation":"s","states":[{"tick":0}]}],
    "analyses":{"diagrams":{"process_a":"A","process_b":"B",
      "objects":[{"name":"X","states":["p"]}],
      "morphisms":[{"name":"f","from":"X","to":"X","map":[["p","zzz"]]}]}}})",
                     "map[0][1]");

  CHECK_THROWS_AS(load_scenario_file("/nonexistent/sc.json"), Error);
}

TEST_CASE("bundled complementary-pair scenario parses to the expected shape") {
  Scenario sc = parse_scenario(scenario_text("complementary-pair.json"));
  CHECK(sc.name == "complementary-pair");
  CHECK(sc.episodic);
  CHECK(sc.ticks == 8);
  CHECK(sc.seeds == std::vector<std::uint64_t>{101, 202, 303, 404});
  CHECK(sc.environment.kind == Environment::Kind::Cycle);
  CHECK(sc.environment.cycle == std::vector<std::string>{"red", "blue"});
  CHECK(sc.policy.kind == Policy::Kind::Constant);
  CHECK(sc.policy.constant_action == "wait");
  REQUIRE(sc.processes.size() == 2);
  CHECK(sc.processes[0].name == "A");
  CHECK(sc.processes[0].acts_when == "red");
  CHECK(sc.processes[0].establishes == "win");
  CHECK(sc.processes[0].cost.space == 1);
  CHECK(sc.patterns == std::vector<std::string>{"ctx:red", "ctx:blue", "eff:win"});
  REQUIRE(sc.goals.size() == 1);
  CHECK(sc.goals[0].pattern == "eff:win");
  auto goals = scenario_goals(sc);
  REQUIRE(goals.size() == 1);
  CHECK(goals[0].pattern == node_pattern("eff:win").key);
  CHECK(sc.band.lo == Rational(1, 2));
  CHECK(sc.f_k == 1);
  CHECK(sc.future_ticks == 5);
  CHECK(sc.analyses.metrics);
  REQUIRE(sc.analyses.synergy.size() == 1);
  CHECK(sc.analyses.synergy[0].processes == std::vector<std::string>{"A", "B"});
  CHECK(sc.analyses.synergy[0].cells == 10);
  CHECK(sc.analyses.synergy[0].midpoint);
  REQUIRE(sc.analyses.mine.has_value());
  CHECK(sc.analyses.mine->min_support == 2);
  CHECK(sc.analyses.mine->max_atoms == 2);
  CHECK_FALSE(sc.analyses.diagrams.has_value());
}

TEST_CASE("episodic build_store lays out the alternating red/blue world") {
  Scenario sc = parse_scenario(scenario_text("complementary-pair.json"));
  EpisodeStore store = build_store(sc);
  REQUIRE(store.episodes().size() == 4);
  CHECK(store.intervals.size() == 8);
  CHECK(store.processes() == std::vector<std::string>{"A", "B"});

  std::string p_red = profile_of_patterns({"ctx:red"});
  std::string p_blue_win = profile_of_patterns({"ctx:blue", "eff:win"});
  std::string p_red_win = profile_of_patterns({"ctx:red", "eff:win"});

  for (const auto& ep : store.episodes()) {
    REQUIRE(ep.snapshots.size() == 8);
    REQUIRE(ep.transitions.size() == 7);
    CHECK(ep.snapshots[0].state.profile == p_red);
    for (int t = 1; t < 8; ++t)
      CHECK(ep.snapshots[t].state.profile == (t % 2 ? p_blue_win : p_red_win));
    // tick 0 memory: observation + action only; later ticks add the effect
    CHECK(ep.snapshots[0].memory.node_count() == 2);
    CHECK(ep.snapshots[1].memory.node_count() == 3);
    for (int t = 0; t < 7; ++t) {
      CHECK(ep.transitions[t].cause == (t % 2 ? "B" : "A"));
      CHECK(ep.transitions[t].resource_cost.space == 1);
      CHECK(ep.transitions[t].interval.start == t);
      CHECK(ep.transitions[t].interval.end == t + 1);
    }
  }
  CHECK(store.episodes()[0].seed == 101);
  CHECK(store.episodes()[3].seed == 404);

  // seed override displaces the base, keeping the count
  EpisodeStore over = build_store(sc, 999);
  REQUIRE(over.episodes().size() == 4);
  CHECK(over.episodes()[0].seed == 999);
  CHECK(over.episodes()[3].seed == 1002);

  // the world is policy-deterministic, so parallel construction matches
  EpisodeStore par = build_store(sc, {}, 4);
  REQUIRE(par.episodes().size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(par.episodes()[i].seed == store.episodes()[i].seed);
    for (int t = 0; t < 8; ++t)
      CHECK(par.episodes()[i].snapshots[t].state.profile ==
            store.episodes()[i].snapshots[t].state.profile);
  }
}

TEST_CASE("metric rows recompute through the plain formula stack") {
  Scenario sc = parse_scenario(scenario_text("complementary-pair.json"));
  EpisodeStore store = build_store(sc);
  auto mined = mine_history_patterns(store, *sc.analyses.mine);
  std::vector<CatalogPattern> extra;
  for (const auto& m : mined) extra.push_back(CatalogPattern{m.key, m.body});
  store.annotate(extra);

  auto rows = scenario_metric_rows(store, sc, extra);
  REQUIRE(rows.size() == 56);  // 4 episodes x 7 sample ticks x 2 processes

  // pinned first sample: A acts from the bare red context
  CHECK(rows[0].process == "A");
  CHECK(rows[0].situation == "ep0");
  CHECK(rows[0].tick == 0);
  CHECK(rows[0].conf == Rational(2, 3));
  CHECK(rows[0].stuck == Rational(1, 3));
  CHECK(rows[0].argmax_key == node_pattern("eff:win").key);
  CHECK(rows[1].process == "B");
  CHECK(rows[1].conf == 0);
  CHECK(rows[1].stuck == 1);

  // the pinned 2/3 decomposes as g * c_g * e * c_e through the public stack
  auto goals = scenario_goals(sc);
  std::string win = node_pattern("eff:win").key;
  TickInterval i_s{0, 0};
  auto future = unit_future(0, 5);
  GStat g = g_conditional(store, win, goals, "ep0", i_s, future);
  REQUIRE(g.value.has_value());
  CHECK(*g.value == 1);
  CHECK(g.confidence == Rational(5, 6));  // f(mass 5)
  EStat e = action_efficacy(store, "A", ResourceWindow{}, "ep0", i_s, win, TickInterval{1, 5},
                            RatInterval{Rational(1, 2), Rational(1)});
  REQUIRE(e.value.has_value());
  CHECK(*e.value == 1);
  CHECK(e.trials == 4);
  CHECK(e.confidence == Rational(4, 5));  // f(4 trials)
  CHECK(*g.value * g.confidence * *e.value * e.confidence == rows[0].conf);

  // every row agrees with a direct conf_and_stuckness call
  std::vector<CatalogPattern> candidates = scenario_catalog(sc);
  std::set<std::string> seen;
  for (const auto& c : candidates) seen.insert(c.key);
  for (const auto& c : extra)
    if (seen.insert(c.key).second) candidates.push_back(c);
  StuckParams params;
  params.band = sc.band;
  params.f_k = sc.f_k;
  for (const auto& row : rows) {
    params.future = unit_future(row.tick, sc.future_ticks);
    StuckResult r = conf_and_stuckness(store, row.process, row.situation,
                                       TickInterval{0, row.tick}, candidates, goals, params);
    CHECK(r.conf == row.conf);
    CHECK(r.stuck == row.stuck);
    CHECK(r.argmax_key == row.argmax_key);
    CHECK(row.conf + row.stuck == 1);
  }
}

TEST_CASE("complementary-pair synergy is pinned and matches a straight recount") {
  Scenario sc = parse_scenario(scenario_text("complementary-pair.json"));
  EpisodeStore store = build_store(sc);
  auto mined = mine_history_patterns(store, *sc.analyses.mine);
  std::vector<CatalogPattern> extra;
  for (const auto& m : mined) extra.push_back(CatalogPattern{m.key, m.body});
  store.annotate(extra);
  auto records = scenario_stuck_records(store, sc, extra);
  REQUIRE(records.size() == 28);  // 4 episodes x 7 sample ticks
  for (const auto& rec : records) {
    REQUIRE(rec.stuck.count("A"));
    REQUIRE(rec.stuck.count("B"));
    // at every sample exactly one of the pair is fully stuck
    CHECK(((rec.stuck.at("A") == 1) != (rec.stuck.at("B") == 1)));
  }

  auto partition = equispaced_partition(10);
  auto weights = midpoint_weights(partition);
  SynergyReport rep = cog_syn(store, records, "A", "B", partition, weights);
  CHECK(rep.value == Rational(33, 100));
  CHECK(rep.cells[9].prob == 1);
  CHECK(rep.cells[9].stuck_pairs == 28);
  CHECK(rep.cells[2].prob == Rational(2, 3));
  CHECK(rep.cells[2].stuck_pairs == 12);
  CHECK(rep.cells[3].prob == 1);
  CHECK(rep.cells[3].stuck_pairs == 12);
  CHECK(rep.cells[5].prob == Rational(1, 3));
  CHECK(rep.cells[5].stuck_pairs == 4);
  for (std::size_t i : {0u, 1u, 4u, 6u, 7u, 8u})
    CHECK(rep.cells[i].prob == 0);

  // independent recount: distinct stuck profiles over distinct recorded ones
  std::set<std::string> all_profiles;
  for (const auto& ep : store.episodes())
    for (const auto& s : ep.snapshots) all_profiles.insert(s.state.profile);
  REQUIRE(all_profiles.size() == 3);
  Rational num{0}, den{0};
  for (std::size_t i = 0; i < partition.size(); ++i) {
    std::set<std::string> stuck_profiles;
    for (const auto& rec : records) {
      bool in_a = partition[i].contains(rec.stuck.at("A"));
      bool in_b = partition[i].contains(rec.stuck.at("B"));
      if (in_a == in_b) continue;
      const Snapshot* snap = snapshot_at(store.episode(rec.situation), rec.tick);
      REQUIRE(snap != nullptr);
      stuck_profiles.insert(snap->state.profile);
    }
    Rational prob =
        Rational(static_cast<int>(stuck_profiles.size()), static_cast<int>(all_profiles.size()));
    CHECK(prob == rep.cells[i].prob);
    num += weights[i] * prob;
    den += weights[i];
  }
  CHECK(num / den == rep.value);
}

TEST_CASE("self-vs-self synergy is structurally zero through the runner") {
  Scenario sc = parse_scenario(scenario_text("self-vs-self.json"));
  EpisodeStore store = build_store(sc);
  auto records = scenario_stuck_records(store, sc);
  auto partition = equispaced_partition(10);
  SynergyReport rep = cog_syn(store, records, "A", "A", partition, midpoint_weights(partition));
  CHECK(rep.value == 0);
  for (const auto& c : rep.cells) {
    CHECK(c.prob == 0);
    CHECK(c.stuck_pairs == 0);
  }
}

TEST_CASE("triple rotation synergy is pinned to the top cell") {
  Scenario sc = parse_scenario(scenario_text("triple-rotation.json"));
  CHECK(sc.band.lo == Rational(1, 4));
  EpisodeStore store = build_store(sc);
  auto records = scenario_stuck_records(store, sc);
  REQUIRE(records.size() == 24);  // 3 episodes x 8 sample ticks
  // at every sample the two foreign processes are fully stuck, the acting
  // one is not
  for (const auto& rec : records) {
    int fully = 0;
    for (const auto& [name, s] : rec.stuck) fully += (s == 1);
    CHECK(fully == 2);
  }
  auto partition = equispaced_partition(10);
  SynergyReport rep =
      cog_syn_triple(store, records, "P0", "P1", "P2", partition, midpoint_weights(partition));
  CHECK(rep.value == Rational(19, 100));
  CHECK(rep.cells[9].prob == 1);
  for (std::size_t i = 0; i + 1 < rep.cells.size(); ++i) CHECK(rep.cells[i].prob == 0);
}

TEST_CASE("run_scenario writes the full report tree with a correct manifest") {
  Scenario sc = parse_scenario(scenario_text("complementary-pair.json"));
  std::string text = scenario_text("complementary-pair.json");
  fs::path dir = fresh_dir("run");
  RunOptions opts;
  opts.out_dir = dir.string();
  RunResult res = run_scenario(sc, text, opts);
  CHECK_FALSE(res.undecided);
  CHECK(res.manifest.scenario_name == "complementary-pair");
  CHECK(res.manifest.tool_version == kToolVersion);
  CHECK(res.manifest.seeds == std::vector<std::uint64_t>{101, 202, 303, 404});

  std::set<std::string> expected = {"store.txt", "mined.csv",  "metrics.csv", "synergy-A-B.csv",
                                    "cpt-A.txt", "cpt-B.txt",  "summary.txt"};
  std::set<std::string> listed;
  for (const auto& f : res.manifest.files) listed.insert(f.path);
  CHECK(listed == expected);
  for (const auto& f : res.manifest.files)
    CHECK(digest_file((dir / f.path).string()) == f.digest);
  CHECK(fs::exists(dir / "manifest.json"));
  // manifest entries are sorted by path
  for (std::size_t i = 1; i < res.manifest.files.size(); ++i)
    CHECK(res.manifest.files[i - 1].path < res.manifest.files[i].path);

  std::string metrics = slurp(dir / "metrics.csv");
  CHECK(metrics.find("process,situation,interval,conf,stuck,argmax\n") == 0);
  CHECK(metrics.find("A,ep0,0..0,2/3,1/3," + node_pattern("eff:win").key) != std::string::npos);
  std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("cog-syn A,B [10 cells, midpoint]: 33/100") != std::string::npos);
  CHECK(summary == res.summary);
  std::string mined = slurp(dir / "mined.csv");
  CHECK(mined.find(node_pattern("act:wait").key + ",1,32,") != std::string::npos);

  VerifyResult v = verify_manifest((dir / "manifest.json").string());
  CHECK(v.ok);
  CHECK(v.mismatched.empty());
}

TEST_CASE("verify flags tampering and missing reports") {
  Scenario sc = parse_scenario(scenario_text("bob-diagrams.json"));
  std::string text = scenario_text("bob-diagrams.json");
  fs::path dir = fresh_dir("verify");
  RunOptions opts;
  opts.out_dir = dir.string();
  run_scenario(sc, text, opts);

  VerifyResult ok = verify_manifest((dir / "manifest.json").string());
  CHECK(ok.ok);

  {
    std::ofstream out(dir / "diagrams.txt", std::ios::binary | std::ios::app);
    out << " ";
  }
  VerifyResult bad = verify_manifest((dir / "manifest.json").string());
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.mismatched.size() == 1);
  CHECK(bad.mismatched[0] == "diagrams.txt");

  // an empty directory names every expected file
  fs::path empty = fresh_dir("verify-empty");
  fs::create_directories(empty);
  fs::copy_file(dir / "manifest.json", empty / "manifest.json");
  try {
    verify_manifest((empty / "manifest.json").string());
    FAIL_CHECK("missing files not reported");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("missing report files") != std::string::npos);
    for (const char* f : {"store.txt", "diagrams.txt", "summary.txt", "cpt-A.txt", "cpt-B.txt"})
      CHECK(msg.find(f) != std::string::npos);
  }
  CHECK_THROWS_AS(verify_manifest((empty / "nope.json").string()), Error);
}

TEST_CASE("two runs of a scenario produce byte-identical trees") {
  for (const char* file : {"complementary-pair.json", "bob-diagrams.json"}) {
    Scenario sc = parse_scenario(scenario_text(file));
    std::string text = scenario_text(file);
    fs::path d1 = fresh_dir(std::string("det1-") + sc.name);
    fs::path d2 = fresh_dir(std::string("det2-") + sc.name);
    RunOptions opts;
    opts.out_dir = d1.string();
    run_scenario(sc, text, opts);
    opts.out_dir = d2.string();
    opts.jobs = 3;  // parallel episode construction may not change a byte
    run_scenario(sc, text, opts);
    auto b1 = dir_bytes(d1), b2 = dir_bytes(d2);
    REQUIRE(b1.size() == b2.size());
    for (const auto& [name, bytes] : b1) {
      REQUIRE(b2.count(name));
      CHECK(b2.at(name) == bytes);
    }
  }
}

TEST_CASE("synergy overrides reshape the partition") {
  Scenario sc = parse_scenario(scenario_text("complementary-pair.json"));
  std::string text = scenario_text("complementary-pair.json");
  fs::path dir = fresh_dir("override");
  RunOptions opts;
  opts.out_dir = dir.string();
  opts.partition_cells = 4;
  opts.midpoint = false;
  opts.emit_gnuplot = true;
  RunResult res = run_scenario(sc, text, opts);
  CHECK(res.summary.find("cog-syn A,B [4 cells, uniform]: 3/4") != std::string::npos);
  std::string dat = slurp(dir / "synergy-A-B.dat");
  CHECK(dat.find("# cog-syn A,B = 3/4") == 0);
  bool listed = false;
  for (const auto& f : res.manifest.files) listed |= f.path == "synergy-A-B.dat";
  CHECK(listed);
}

TEST_CASE("bob scenario reproduces the built-in demo byte for byte") {
  Scenario sc = parse_scenario(scenario_text("bob-diagrams.json"));
  EpisodeStore store = build_store(sc);
  REQUIRE(sc.analyses.diagrams.has_value());
  DiagramOutcome from_scenario = run_diagram_request(store, *sc.analyses.diagrams);
  DiagramOutcome from_demo = demo_diagrams(false);
  CHECK(from_scenario.report == from_demo.report);
  CHECK(from_demo.verified);
  CHECK_FALSE(from_demo.undecided);
  CHECK(from_demo.all_hold);
  REQUIRE(from_demo.compares.size() == 1);
  CHECK(from_demo.compares[0].direct == Rational(10));
  CHECK(from_demo.compares[0].indirect == Rational(1));
  CHECK(from_demo.compares[0].holds);
  CHECK(from_demo.compares[0].margin == Rational(9));

  Scenario eq = parse_scenario(scenario_text("bob-diagrams-equal.json"));
  DiagramOutcome eq_scenario = run_diagram_request(build_store(eq), *eq.analyses.diagrams);
  DiagramOutcome eq_demo = demo_diagrams(true);
  CHECK(eq_scenario.report == eq_demo.report);
  CHECK(eq_demo.verified);
  CHECK_FALSE(eq_demo.all_hold);
  REQUIRE(eq_demo.compares.size() == 1);
  CHECK(eq_demo.compares[0].direct == Rational(10));
  CHECK(eq_demo.compares[0].indirect == Rational(10));
  CHECK_FALSE(eq_demo.compares[0].holds);
  CHECK(eq_demo.compares[0].margin == Rational(0));

  // handcrafted store layout
  REQUIRE(store.episodes().size() == 2);
  CHECK(store.episode("viaA").snapshots.size() == 4);
  CHECK(store.episode("viaA").snapshots[0].state.profile == profile_of_patterns({"nice"}));
  CHECK(store.episode("viaB").snapshots[2].state.profile == profile_of_patterns({"helpful"}));
  CHECK(meta_transitions(store).size() == 5);
  CHECK(store.intervals.size() == 4);
}

TEST_CASE("cli binary: run, verify, demo and exit codes") {
  fs::path dir = fresh_dir("cli");
  fs::path cap = fs::temp_directory_path() / "cogsyn-test-cli-out.txt";
  std::string scenario = (fs::path(scenarios_dir()) / "bob-diagrams.json").string();

  CHECK(run_cli("run " + scenario + " --out-dir " + dir.string(), cap) == 0);
  CHECK(slurp(cap).find("diagrams: natural transformation verified; indirect beats direct: yes") !=
        std::string::npos);
  CHECK(run_cli("verify " + (dir / "manifest.json").string(), cap) == 0);
  CHECK(slurp(cap).find("ok") != std::string::npos);

  {
    std::ofstream out(dir / "store.txt", std::ios::binary | std::ios::app);
    out << "x";
  }
  CHECK(run_cli("verify " + (dir / "manifest.json").string(), cap) == 1);
  CHECK(slurp(cap).find("MISMATCH: store.txt") != std::string::npos);

  CHECK(run_cli("demo-diagrams", cap) == 0);
  CHECK(slurp(cap).find("(margin 9)") != std::string::npos);
  CHECK(run_cli("demo-diagrams --equal-costs", cap) == 0);
  CHECK(slurp(cap).find("indirect beats direct: no") != std::string::npos);

  fs::path bad = fs::temp_directory_path() / "cogsyn-test-bad.json";
  {
    std::ofstream out(bad, std::ios::binary | std::ios::trunc);
    out << "{\"name\":\"x\",\"kind\":\"episodic\"}";
  }
  CHECK(run_cli("run " + bad.string() + " --out-dir " + dir.string() + "-bad", cap) == 2);
  CHECK(slurp(cap).find("patterns") != std::string::npos);
  CHECK(run_cli("frobnicate", cap) == 2);

  // census over the written per-process transition graphs
  fs::path cdir = fresh_dir("cli-census");
  std::string comp = (fs::path(scenarios_dir()) / "complementary-pair.json").string();
  CHECK(run_cli("run " + comp + " --out-dir " + cdir.string(), cap) == 0);
  CHECK(run_cli("census " + (cdir / "cpt-A.txt").string() + " " + (cdir / "cpt-B.txt").string(),
                cap) == 0);
  std::string census = slurp(cap);
  CHECK(census.find("hom maps:") != std::string::npos);
  CHECK(census.find("partial: no") != std::string::npos);
}

TEST_CASE("records regroup rows in sample order") {
  std::vector<MetricRow> rows = {
      {"A", "ep0", 0, Rational(1, 2), Rational(1, 2), "k"},
      {"B", "ep0", 0, Rational(1, 4), Rational(3, 4), "k"},
      {"A", "ep0", 1, Rational(1), Rational(0), "k"},
      {"B", "ep0", 1, Rational(0), Rational(1), "k"},
      {"A", "ep1", 0, Rational(1, 3), Rational(2, 3), "k"},
      {"B", "ep1", 0, Rational(1, 3), Rational(2, 3), "k"},
  };
  auto records = records_from_rows(rows);
  REQUIRE(records.size() == 3);
  CHECK(records[0].situation == "ep0");
  CHECK(records[0].tick == 0);
  CHECK(records[0].interval.start == 0);
  CHECK(records[0].interval.end == 0);
  CHECK(records[0].stuck.at("A") == Rational(1, 2));
  CHECK(records[0].stuck.at("B") == Rational(3, 4));
  CHECK(records[1].tick == 1);
  CHECK(records[1].stuck.at("A") == 0);
  CHECK(records[2].situation == "ep1");
  CHECK(records[2].stuck.size() == 2);
}
