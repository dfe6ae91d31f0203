#pragma once
// Labeled hypergraph memory: atoms are nodes or links; links have an ordered
// target sequence (arity >= 1) and may target nodes or other links. Labels
// carry a type name plus rational weights; matching and isomorphism care only
// about the type name, weights are payload.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cogsyn/error.hpp"
#include "cogsyn/rational.hpp"

namespace cogsyn {

using AtomId = std::uint64_t;

enum class AtomKind { Node, Link };

struct Label {
  std::string type_name;
  std::vector<Rational> weights;
};

struct Atom {
  AtomId id = 0;
  AtomKind kind = AtomKind::Node;
  std::vector<AtomId> targets;  // empty for nodes
  std::optional<Label> label;
};

class Hypergraph {
 public:
  std::string name;

  AtomId add_node(std::optional<Label> label = std::nullopt);
  AtomId add_link(std::vector<AtomId> targets, std::optional<Label> label = std::nullopt);
  AtomId add_atom(AtomKind kind, std::vector<AtomId> targets, std::optional<Label> label);
  // Inserts preserving a caller-chosen id; id must be fresh. Used by ops that
  // rebuild graphs while keeping source ids stable.
  void add_atom_with_id(AtomId id, AtomKind kind, std::vector<AtomId> targets,
                        std::optional<Label> label);

  // Removes the atom and, transitively, every link that targets a removed
  // atom (closure invariant). Unknown id is an idempotent no-op -> false.
  bool remove_atom(AtomId id);

  bool has(AtomId id) const { return index_.count(id) != 0; }
  const Atom& atom(AtomId id) const;
  const std::vector<Atom>& atoms() const { return atoms_; }  // insertion order

  std::size_t size() const { return atoms_.size(); }
  std::size_t node_count() const;
  std::size_t link_count() const;
  std::vector<AtomId> node_ids() const;
  std::vector<AtomId> link_ids() const;

  // Links whose target list mentions id (directly).
  std::vector<AtomId> incident_links(AtomId id) const;

  // Label type name or "" when unlabeled.
  const std::string& label_type(AtomId id) const;

  AtomId fresh_id() const { return next_id_; }
  void set_label(AtomId id, std::optional<Label> label);

  // True when every link's targets exist; the container maintains this, the
  // checker exists for tests.
  bool closed() const;

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<AtomId, std::size_t> index_;
  AtomId next_id_ = 0;
  void reindex();
};

// Line-oriented text form, one atom per line, ordered by id:
//   <id> NODE <type|-> [w1,w2,...]
//   <id> LINK <type|-> (<t1>,<t2>,...) [w1,w2,...]
// Weights print as reduced rationals. "-" marks an unlabeled atom.
std::string to_text(const Hypergraph& g);
Hypergraph from_text(const std::string& text);

}  // namespace cogsyn
