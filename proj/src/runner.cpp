#include "cogsyn/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cogsyn/canonical.hpp"
#include "json.hpp"

namespace cogsyn {

namespace fs = std::filesystem;

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_input, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::bad_input, "cannot write '" + tmp.string() + "'");
    out << bytes;
    out.flush();
    if (!out) throw Error(Errc::bad_input, "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string fmt(const Rational& q) { return format_rational(q); }

std::string fmt_opt(const std::optional<Rational>& q) {
  return q ? format_rational(*q) : std::string("gap");
}

std::string fmt_double(const Rational& q) {
  std::ostringstream os;
  os.precision(17);
  os << to_double(q);
  return os.str();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string store_dump(const EpisodeStore& store) {
  std::ostringstream os;
  for (const auto& ep : store.episodes()) {
    os << "episode " << ep.situation << " seed " << ep.seed << "\n";
    for (const auto& snap : ep.snapshots) {
      os << "  state " << snap.state.id << " tick " << snap.state.tick << " profile "
         << snap.state.profile;
      for (const auto& [key, deg] : snap.state.pattern_degrees)
        os << " " << key << "=" << fmt(deg);
      os << "\n";
    }
    for (const auto& t : ep.transitions)
      os << "  transition " << t.from << " -> " << t.to << " cause " << t.cause << " p "
         << fmt(t.probability) << " conf " << fmt(t.confidence) << " cost ("
         << fmt(t.resource_cost.space) << ", " << fmt(t.resource_cost.time) << ") ticks "
         << format_interval(t.interval) << "\n";
  }
  return os.str();
}

std::string metrics_csv(const std::vector<MetricRow>& rows) {
  std::ostringstream os;
  os << "process,situation,interval,conf,stuck,argmax\n";
  for (const auto& r : rows)
    os << r.process << "," << r.situation << "," << format_interval({0, r.tick}) << ","
       << fmt(r.conf) << "," << fmt(r.stuck) << "," << r.argmax_key << "\n";
  return os.str();
}

std::string mined_csv(const std::vector<MinedPattern>& mined) {
  std::ostringstream os;
  os << "key,atoms,support,parent\n";
  for (const auto& m : mined)
    os << m.key << "," << m.body.size() << "," << m.support << "," << m.parent_key << "\n";
  return os.str();
}

std::string synergy_csv(const SynergyReport& rep) {
  std::ostringstream os;
  os << "cell_lo,cell_hi,weight,prob,stuck_pairs\n";
  for (const auto& c : rep.cells)
    os << fmt(c.cell.lo) << "," << fmt(c.cell.hi) << "," << fmt(c.weight) << "," << fmt(c.prob)
       << "," << c.stuck_pairs << "\n";
  return os.str();
}

std::string synergy_dat(const SynergyReport& rep) {
  std::ostringstream os;
  os << "# cog-syn " << join(rep.processes, ",") << " = " << fmt(rep.value) << "\n";
  os << "# cell-midpoint prob weight\n";
  for (const auto& c : rep.cells) {
    Rational mid = (c.cell.lo + c.cell.hi) / 2;
    os << fmt_double(mid) << " " << fmt_double(c.prob) << " " << fmt_double(c.weight) << "\n";
  }
  return os.str();
}

// Summed cheapest `process` routes between the profile endpoints of every
// map pair; nullopt as soon as one endpoint pair has no recorded route.
std::optional<Rational> route_cost(const EpisodeStore& store, const std::string& process,
                                   const std::vector<std::pair<std::string, std::string>>& pairs) {
  Rational total{0};
  for (const auto& [pa, pb] : pairs) {
    if (pa == pb) continue;
    auto c = min_process_path(store, process, pa, pb);
    if (!c) return std::nullopt;
    total += *c;
  }
  return total;
}

json manifest_to_json(const RunManifest& m) {
  json files = json::array();
  for (const auto& f : m.files) files.push_back(json{{"digest", f.digest}, {"path", f.path}});
  return json{{"files", files},
              {"scenario", m.scenario_name},
              {"scenario_digest", m.scenario_digest},
              {"seeds", m.seeds},
              {"tool_version", m.tool_version}};
}

}  // namespace

DiagramOutcome run_diagram_request(const EpisodeStore& store, const DiagramRequest& req) {
  DiagramOutcome out;
  auto meta = meta_transitions(store);

  StateClassifier classes;
  for (const auto& [name, label] : req.classes) classes[profile_of_patterns({name})] = label;

  struct ObjInfo {
    std::map<std::string, std::string> profile_by_name;
    std::map<std::string, AtomId> nodes_a, nodes_b;
  };
  std::map<std::string, ObjInfo> info;
  std::vector<DiagramObject> objects;

  std::ostringstream rep;
  rep << "diagram probe: F_" << req.process_a << " => F_" << req.process_b << "\n";
  for (const auto& os : req.objects) {
    ObjInfo oi;
    std::vector<std::string> profiles;
    std::set<std::string> pset;
    for (const auto& s : os.states) {
      std::string pr = profile_of_patterns({s});
      oi.profile_by_name[s] = pr;
      profiles.push_back(pr);
      pset.insert(pr);
    }
    std::vector<Transition> internal;
    for (const auto& t : meta)
      if (pset.count(t.from) && pset.count(t.to)) internal.push_back(t);
    FunctorProjection fa = functor_project(internal, req.process_a, store);
    FunctorProjection fb = functor_project(internal, req.process_b, store);
    DiagramObject obj;
    obj.name = os.name;
    obj.shape_a = object_shape(profiles, fa, classes, &oi.nodes_a);
    obj.shape_b = object_shape(profiles, fb, classes, &oi.nodes_b);
    rep << "object " << os.name << ": states " << join(os.states, " ") << "\n";
    rep << "  F_" << req.process_a << "(" << os.name << "): " << obj.shape_a.node_count()
        << " states, " << obj.shape_a.link_count() << " steps"
        << (fa.has_gap ? " (gaps)" : "") << "\n";
    rep << "  F_" << req.process_b << "(" << os.name << "): " << obj.shape_b.node_count()
        << " states, " << obj.shape_b.link_count() << " steps"
        << (fb.has_gap ? " (gaps)" : "") << "\n";
    objects.push_back(std::move(obj));
    info[os.name] = std::move(oi);
  }

  std::vector<DiagramMorphism> morphisms;
  for (const auto& ms : req.morphisms) {
    DiagramMorphism m;
    m.name = ms.name;
    m.from = ms.from;
    m.to = ms.to;
    auto& fi = info.at(ms.from);
    auto& ti = info.at(ms.to);
    for (const auto& [a, b] : ms.map) {
      m.map_a[fi.nodes_a.at(fi.profile_by_name.at(a))] = ti.nodes_a.at(ti.profile_by_name.at(b));
      m.map_b[fi.nodes_b.at(fi.profile_by_name.at(a))] = ti.nodes_b.at(ti.profile_by_name.at(b));
    }
    morphisms.push_back(std::move(m));
  }

  NatTransResult nat = nat_trans_search(objects, morphisms);
  out.undecided = nat.undecided;
  out.verified = nat.verified;
  std::map<std::string, Rational> eta_cost;
  if (nat.verified) {
    rep << "natural transformation F_" << req.process_a << " => F_" << req.process_b
        << ": found, re-verified\n";
    for (const auto& c : nat.components) {
      eta_cost[c.object] = c.cost;
      rep << "  eta[" << c.object << "] merge cost " << fmt(c.cost) << "\n";
    }
  } else if (nat.undecided) {
    rep << "natural transformation: undecided, search bound hit\n";
  } else {
    rep << "natural transformation: none (first failure: " << nat.failed_morphism << ")\n";
  }

  bool every_holds = true;
  for (const auto& ms : req.morphisms) {
    rep << "morphism " << ms.name << ": " << ms.from << " -> " << ms.to << "\n";
    rep << "  square corners: F_" << req.process_a << "(" << ms.from << "), F_" << req.process_a
        << "(" << ms.to << "), F_" << req.process_b << "(" << ms.from << "), F_" << req.process_b
        << "(" << ms.to << ")\n";

    std::vector<std::pair<std::string, std::string>> endpoint_profiles;
    for (const auto& [a, b] : ms.map)
      endpoint_profiles.emplace_back(info.at(ms.from).profile_by_name.at(a),
                                     info.at(ms.to).profile_by_name.at(b));
    std::optional<Rational> fa_f = route_cost(store, req.process_a, endpoint_profiles);
    std::optional<Rational> fb_f = route_cost(store, req.process_b, endpoint_profiles);
    rep << "  direct   F_" << req.process_a << "(" << ms.name << ") cost: " << fmt_opt(fa_f)
        << "\n";
    rep << "  across   F_" << req.process_b << "(" << ms.name << ") cost: " << fmt_opt(fb_f)
        << "\n";
    if (!nat.verified) {
      rep << "  comparison skipped: no verified natural transformation\n";
      every_holds = false;
      continue;
    }
    CostCompare cc = commutation_cost_compare(eta_cost.at(ms.from), fb_f, eta_cost.at(ms.to),
                                              fa_f);
    out.compares.push_back(cc);
    rep << "  indirect eta[" << ms.from << "] + F_" << req.process_b << "(" << ms.name
        << ") + eta[" << ms.to << "] = " << fmt(eta_cost.at(ms.from)) << " + " << fmt_opt(fb_f)
        << " + " << fmt(eta_cost.at(ms.to)) << " = " << fmt_opt(cc.indirect) << "\n";
    rep << "  indirect beats direct: " << (cc.holds ? "yes" : "no");
    if (cc.margin) rep << " (margin " << fmt(*cc.margin) << ")";
    rep << "\n";
    if (!cc.holds) every_holds = false;
  }
  out.all_hold = nat.verified && !out.compares.empty() && every_holds;
  out.report = rep.str();
  return out;
}

EpisodeStore demo_store(bool equal_costs) {
  auto snap = [](int idx, const std::string& shown) {
    Snapshot s;
    s.state.id = "s" + std::to_string(idx);
    s.state.tick = idx;
    s.state.pattern_degrees[node_pattern(shown).key] = 1;
    s.state.profile = state_profile_key(s.state);
    return s;
  };
  auto tr = [](int from, int to, const std::string& cause, const Rational& space,
               const Rational& time) {
    Transition t;
    t.from = "s" + std::to_string(from);
    t.to = "s" + std::to_string(to);
    t.cause = cause;
    t.resource_cost = {space, time};
    t.interval = {from, to};
    return t;
  };

  EpisodeStore store;
  Episode a;
  a.situation = "viaA";
  a.snapshots = {snap(0, "nice"), snap(1, "i1"), snap(2, "i2"), snap(3, "helpful")};
  a.transitions = {tr(0, 1, "A", 2, 2), tr(1, 2, "A", 1, 2), tr(2, 3, "A", 2, 1)};
  store.add(std::move(a));

  Episode b;
  b.situation = "viaB";
  b.snapshots = {snap(0, "nice"), snap(1, "e1"), snap(2, "helpful")};
  if (equal_costs)
    b.transitions = {tr(0, 1, "B", 2, 3), tr(1, 2, "B", 3, 2)};
  else
    b.transitions = {tr(0, 1, "B", 0, Rational(1, 2)), tr(1, 2, "B", 0, Rational(1, 2))};
  store.add(std::move(b));

  for (int t = 0; t <= 3; ++t) store.intervals.push_back({t, t});
  return store;
}

DiagramRequest demo_request() {
  DiagramRequest req;
  req.process_a = "A";
  req.process_b = "B";
  req.objects = {DiagramObjectSpec{"X", {"nice"}}, DiagramObjectSpec{"Y", {"helpful"}}};
  DiagramMorphismSpec f;
  f.name = "f";
  f.from = "X";
  f.to = "Y";
  f.map = {{"nice", "helpful"}};
  req.morphisms = {f};
  req.classes = {{"nice", "bob"}, {"helpful", "bob"}};
  return req;
}

DiagramOutcome demo_diagrams(bool equal_costs) {
  EpisodeStore store = demo_store(equal_costs);
  return run_diagram_request(store, demo_request());
}

std::string census_report(const Hypergraph& a, const Hypergraph& b, const CensusOptions& opts) {
  CensusRecord r = hom_iso_census(a, b, opts);
  std::ostringstream os;
  os << "subgraphs: " << r.subgraphs_a << " x " << r.subgraphs_b << " (size bound "
     << opts.size_bound << ")\n";
  os << "pairs examined: " << r.pairs << "\n";
  os << "hom maps: " << r.n_hom << "\n";
  os << "iso maps: " << r.n_iso << "\n";
  os << "hom/iso ratio: ";
  if (auto q = r.ratio())
    os << fmt(*q) << "\n";
  else
    os << "undefined (no isomorphisms)\n";
  os << "partial: " << (r.partial ? "yes" : "no") << "\n";
  return os.str();
}

std::string digest_file(const std::string& path) { return fnv1a64_hex(read_file(path)); }

RunResult run_scenario(const Scenario& sc, const std::string& scenario_text,
                       const RunOptions& opts) {
  if (opts.out_dir.empty()) throw Error(Errc::bad_input, "output directory not set");
  if (opts.jobs < 1) throw Error(Errc::bad_input, "jobs must be at least 1");
  fs::create_directories(opts.out_dir);

  RunResult res;
  res.out_dir = opts.out_dir;
  RunManifest& man = res.manifest;
  man.scenario_name = sc.name;
  man.scenario_digest = fnv1a64_hex(scenario_text);
  man.tool_version = kToolVersion;

  EpisodeStore store = build_store(sc, opts.seed, opts.jobs);
  if (sc.episodic)
    for (const auto& ep : store.episodes()) man.seeds.push_back(ep.seed);

  auto catalog = scenario_catalog(sc);
  std::vector<std::pair<std::string, std::string>> outputs;  // (name, bytes), write order
  auto emit = [&](const std::string& name, std::string bytes) {
    outputs.emplace_back(name, std::move(bytes));
  };

  emit("store.txt", store_dump(store));

  std::vector<CatalogPattern> mined_catalog;
  std::size_t mined_count = 0;
  if (sc.analyses.mine) {
    auto mined = mine_history_patterns(store, *sc.analyses.mine);
    mined_count = mined.size();
    for (const auto& m : mined) mined_catalog.push_back(CatalogPattern{m.key, m.body});
    store.annotate(mined_catalog);
    emit("mined.csv", mined_csv(mined));
  }

  bool need_rows = sc.analyses.metrics || !sc.analyses.synergy.empty();
  std::vector<MetricRow> rows;
  if (need_rows) rows = scenario_metric_rows(store, sc, mined_catalog);
  if (sc.analyses.metrics) emit("metrics.csv", metrics_csv(rows));

  std::vector<std::string> summary_lines;
  if (!sc.analyses.synergy.empty()) {
    auto records = records_from_rows(rows);
    for (const auto& rq : sc.analyses.synergy) {
      int cells = opts.partition_cells.value_or(rq.cells);
      bool midpoint = opts.midpoint.value_or(rq.midpoint);
      auto partition = equispaced_partition(cells);
      auto weights = midpoint ? midpoint_weights(partition) : uniform_weights(partition.size());
      SynergyReport rep =
          rq.processes.size() == 2
              ? cog_syn(store, records, rq.processes[0], rq.processes[1], partition, weights)
              : cog_syn_triple(store, records, rq.processes[0], rq.processes[1], rq.processes[2],
                               partition, weights);
      std::string base = "synergy-" + join(rq.processes, "-");
      emit(base + ".csv", synergy_csv(rep));
      if (opts.emit_gnuplot) emit(base + ".dat", synergy_dat(rep));
      summary_lines.push_back("cog-syn " + join(rq.processes, ",") + " [" +
                              std::to_string(cells) + " cells, " +
                              (midpoint ? "midpoint" : "uniform") +
                              "]: " + fmt(rep.value));
    }
  }

  if (!store.intervals.empty()) {
    TickInterval window{store.intervals.front().start, store.intervals.back().end};
    for (const auto& pname : store.processes()) {
      CPTGraph cg = extract_cpt(store, pname, {}, window);
      emit("cpt-" + pname + ".txt", to_text(cg.graph));
    }
  }

  if (sc.analyses.diagrams) {
    DiagramOutcome d = run_diagram_request(store, *sc.analyses.diagrams);
    emit("diagrams.txt", d.report);
    res.undecided = res.undecided || d.undecided;
    std::string verdict = d.verified ? "natural transformation verified"
                          : d.undecided ? "undecided at scale"
                                        : "no natural transformation";
    summary_lines.push_back("diagrams: " + verdict +
                            "; indirect beats direct: " + (d.all_hold ? "yes" : "no"));
  }

  std::ostringstream sum;
  sum << "scenario: " << sc.name << "\n";
  sum << "digest: " << man.scenario_digest << "\n";
  sum << "tool: " << man.tool_version << "\n";
  sum << "kind: " << (sc.episodic ? "episodic" : "handcrafted") << "\n";
  sum << "episodes: " << store.episodes().size() << "\n";
  if (sc.episodic) {
    sum << "ticks: " << sc.ticks << "\n";
    sum << "seeds:";
    for (auto s : man.seeds) sum << " " << s;
    sum << "\n";
  }
  sum << "processes: " << join(store.processes(), " ") << "\n";
  sum << "catalog: " << catalog.size() << " patterns\n";
  if (sc.analyses.mine) sum << "mined: " << mined_count << " patterns\n";
  if (sc.analyses.metrics) sum << "metric rows: " << rows.size() << "\n";
  for (const auto& line : summary_lines) sum << line << "\n";
  res.summary = sum.str();
  emit("summary.txt", res.summary);

  for (const auto& [name, bytes] : outputs) {
    write_atomic(fs::path(opts.out_dir) / name, bytes);
    man.files.push_back(ManifestFile{name, fnv1a64_hex(bytes)});
  }
  std::sort(man.files.begin(), man.files.end(),
            [](const ManifestFile& x, const ManifestFile& y) { return x.path < y.path; });
  write_atomic(fs::path(opts.out_dir) / "manifest.json", manifest_to_json(man).dump(2) + "\n");
  return res;
}

VerifyResult verify_manifest(const std::string& manifest_path) {
  std::string text = read_file(manifest_path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::bad_input,
                "manifest '" + manifest_path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("files") || !doc["files"].is_array())
    throw Error(Errc::bad_input, "manifest '" + manifest_path + "' has no file list");

  fs::path dir = fs::path(manifest_path).parent_path();
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& f : doc["files"]) {
    if (!f.is_object() || !f.contains("path") || !f.contains("digest") ||
        !f["path"].is_string() || !f["digest"].is_string())
      throw Error(Errc::bad_input, "manifest file entry without path/digest");
    entries.emplace_back(f["path"].get<std::string>(), f["digest"].get<std::string>());
  }

  std::vector<std::string> missing;
  for (const auto& [p, d] : entries)
    if (!fs::exists(dir / p)) missing.push_back(p);
  if (!missing.empty())
    throw Error(Errc::bad_input, "missing report files: " + join(missing, " "));

  VerifyResult res;
  for (const auto& [p, d] : entries)
    if (digest_file((dir / p).string()) != d) {
      res.ok = false;
      res.mismatched.push_back(p);
    }
  return res;
}

}  // namespace cogsyn
