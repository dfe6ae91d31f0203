#include "cogsyn/hypergraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cogsyn {

namespace {
const std::string kEmpty;

void check_type_name_serializable(const std::string& t) {
  if (t.empty()) throw Error(Errc::bad_input, "empty label type name");
  for (char c : t) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')' || c == '[' ||
        c == ']' || c == ',')
      throw Error(Errc::bad_input, "label type name '" + t + "' contains a delimiter character");
  }
  if (t == "-") throw Error(Errc::bad_input, "label type name '-' is reserved");
}
}  // namespace

AtomId Hypergraph::add_node(std::optional<Label> label) {
  return add_atom(AtomKind::Node, {}, std::move(label));
}

AtomId Hypergraph::add_link(std::vector<AtomId> targets, std::optional<Label> label) {
  return add_atom(AtomKind::Link, std::move(targets), std::move(label));
}

AtomId Hypergraph::add_atom(AtomKind kind, std::vector<AtomId> targets,
                            std::optional<Label> label) {
  AtomId id = next_id_;
  add_atom_with_id(id, kind, std::move(targets), std::move(label));
  return id;
}

void Hypergraph::add_atom_with_id(AtomId id, AtomKind kind, std::vector<AtomId> targets,
                                  std::optional<Label> label) {
  if (index_.count(id)) throw Error(Errc::bad_input, "atom id " + std::to_string(id) + " taken");
  if (kind == AtomKind::Node) {
    if (!targets.empty()) throw Error(Errc::bad_input, "node with targets");
  } else {
    if (targets.empty()) throw Error(Errc::bad_input, "link arity must be >= 1");
    for (AtomId t : targets)
      if (!has(t))
        throw Error(Errc::dangling_target, "link targets missing atom id " + std::to_string(t));
  }
  if (label) check_type_name_serializable(label->type_name);
  Atom a;
  a.id = id;
  a.kind = kind;
  a.targets = std::move(targets);
  a.label = std::move(label);
  index_[id] = atoms_.size();
  atoms_.push_back(std::move(a));
  if (id >= next_id_) next_id_ = id + 1;
}

bool Hypergraph::remove_atom(AtomId id) {
  if (!has(id)) return false;
  std::set<AtomId> doomed{id};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Atom& a : atoms_) {
      if (a.kind != AtomKind::Link || doomed.count(a.id)) continue;
      for (AtomId t : a.targets) {
        if (doomed.count(t)) {
          doomed.insert(a.id);
          grew = true;
          break;
        }
      }
    }
  }
  std::vector<Atom> kept;
  kept.reserve(atoms_.size() - doomed.size());
  for (auto& a : atoms_)
    if (!doomed.count(a.id)) kept.push_back(std::move(a));
  atoms_ = std::move(kept);
  reindex();
  return true;
}

void Hypergraph::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < atoms_.size(); ++i) index_[atoms_[i].id] = i;
}

const Atom& Hypergraph::atom(AtomId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(Errc::unknown_atom, "no atom with id " + std::to_string(id));
  return atoms_[it->second];
}

std::size_t Hypergraph::node_count() const {
  std::size_t n = 0;
  for (const auto& a : atoms_)
    if (a.kind == AtomKind::Node) ++n;
  return n;
}

std::size_t Hypergraph::link_count() const { return atoms_.size() - node_count(); }

std::vector<AtomId> Hypergraph::node_ids() const {
  std::vector<AtomId> out;
  for (const auto& a : atoms_)
    if (a.kind == AtomKind::Node) out.push_back(a.id);
  return out;
}

std::vector<AtomId> Hypergraph::link_ids() const {
  std::vector<AtomId> out;
  for (const auto& a : atoms_)
    if (a.kind == AtomKind::Link) out.push_back(a.id);
  return out;
}

std::vector<AtomId> Hypergraph::incident_links(AtomId id) const {
  std::vector<AtomId> out;
  for (const auto& a : atoms_) {
    if (a.kind != AtomKind::Link) continue;
    if (std::find(a.targets.begin(), a.targets.end(), id) != a.targets.end())
      out.push_back(a.id);
  }
  return out;
}

const std::string& Hypergraph::label_type(AtomId id) const {
  const Atom& a = atom(id);
  return a.label ? a.label->type_name : kEmpty;
}

void Hypergraph::set_label(AtomId id, std::optional<Label> label) {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(Errc::unknown_atom, "no atom with id " + std::to_string(id));
  if (label) check_type_name_serializable(label->type_name);
  atoms_[it->second].label = std::move(label);
}

bool Hypergraph::closed() const {
  for (const auto& a : atoms_)
    for (AtomId t : a.targets)
      if (!has(t)) return false;
  return true;
}

std::string to_text(const Hypergraph& g) {
  std::vector<const Atom*> ordered;
  ordered.reserve(g.size());
  for (const auto& a : g.atoms()) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const Atom* x, const Atom* y) { return x->id < y->id; });
  std::ostringstream out;
  for (const Atom* a : ordered) {
    out << a->id << (a->kind == AtomKind::Node ? " NODE " : " LINK ");
    out << (a->label ? a->label->type_name : std::string("-"));
    if (a->kind == AtomKind::Link) {
      out << " (";
      for (std::size_t i = 0; i < a->targets.size(); ++i) {
        if (i) out << ",";
        out << a->targets[i];
      }
      out << ")";
    }
    out << " [";
    if (a->label) {
      for (std::size_t i = 0; i < a->label->weights.size(); ++i) {
        if (i) out << ",";
        out << format_rational(a->label->weights[i]);
      }
    }
    out << "]\n";
  }
  return out.str();
}

namespace {
struct ParsedLine {
  AtomId id;
  AtomKind kind;
  std::vector<AtomId> targets;
  std::optional<Label> label;
};

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::vector<std::string> split_commas(const std::string& body, int lineno) {
  std::vector<std::string> parts;
  if (body.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(body.substr(start));
      break;
    }
    parts.push_back(body.substr(start, comma - start));
    start = comma + 1;
  }
  for (const auto& p : parts)
    if (p.empty())
      throw Error(Errc::bad_input, "line " + std::to_string(lineno) + ": empty list element");
  return parts;
}
}  // namespace

Hypergraph from_text(const std::string& text) {
  std::vector<ParsedLine> lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_ws(line);
    if (toks.size() < 3)
      throw Error(Errc::bad_input, "line " + std::to_string(lineno) + ": expected id KIND type");
    ParsedLine p;
    try {
      p.id = std::stoull(toks[0]);
    } catch (const std::exception&) {
      throw Error(Errc::bad_input, "line " + std::to_string(lineno) + ": bad id '" + toks[0] + "'");
    }
    std::size_t next = 3;
    if (toks[1] == "NODE") {
      p.kind = AtomKind::Node;
    } else if (toks[1] == "LINK") {
      p.kind = AtomKind::Link;
      if (toks.size() < 4 || toks[3].front() != '(' || toks[3].back() != ')')
        throw Error(Errc::bad_input,
                    "line " + std::to_string(lineno) + ": LINK needs a (targets) list");
      for (const auto& t : split_commas(toks[3].substr(1, toks[3].size() - 2), lineno)) {
        try {
          p.targets.push_back(std::stoull(t));
        } catch (const std::exception&) {
          throw Error(Errc::bad_input,
                      "line " + std::to_string(lineno) + ": bad target id '" + t + "'");
        }
      }
      next = 4;
    } else {
      throw Error(Errc::bad_input,
                  "line " + std::to_string(lineno) + ": unknown kind '" + toks[1] + "'");
    }
    if (toks[2] != "-") {
      Label lab;
      lab.type_name = toks[2];
      if (toks.size() > next) {
        const std::string& w = toks[next];
        if (w.front() != '[' || w.back() != ']')
          throw Error(Errc::bad_input,
                      "line " + std::to_string(lineno) + ": expected [weights] list");
        for (const auto& ws : split_commas(w.substr(1, w.size() - 2), lineno))
          lab.weights.push_back(parse_rational(ws));
      }
      p.label = std::move(lab);
    }
    lines.push_back(std::move(p));
  }
  // Two passes so links may reference atoms declared later in the file.
  Hypergraph g;
  std::set<AtomId> ids;
  for (const auto& p : lines)
    if (!ids.insert(p.id).second)
      throw Error(Errc::bad_input, "duplicate atom id " + std::to_string(p.id));
  for (const auto& p : lines)
    for (AtomId t : p.targets)
      if (!ids.count(t))
        throw Error(Errc::dangling_target, "link " + std::to_string(p.id) +
                                               " targets missing atom id " + std::to_string(t));
  // Insert nodes first, then links in dependency order (links may target links).
  std::set<AtomId> placed;
  for (const auto& p : lines)
    if (p.kind == AtomKind::Node) {
      g.add_atom_with_id(p.id, p.kind, {}, p.label);
      placed.insert(p.id);
    }
  std::vector<const ParsedLine*> pending;
  for (const auto& p : lines)
    if (p.kind == AtomKind::Link) pending.push_back(&p);
  while (!pending.empty()) {
    std::vector<const ParsedLine*> still;
    for (const ParsedLine* p : pending) {
      bool ready = true;
      for (AtomId t : p->targets)
        if (!placed.count(t)) ready = false;
      if (ready) {
        g.add_atom_with_id(p->id, p->kind, p->targets, p->label);
        placed.insert(p->id);
      } else {
        still.push_back(p);
      }
    }
    if (still.size() == pending.size())
      throw Error(Errc::bad_input, "cyclic link targets in input");
    pending = std::move(still);
  }
  return g;
}

}  // namespace cogsyn
