#pragma once
// Domain error with a stable machine-readable code, thrown on contract violations.

#include <stdexcept>
#include <string>

namespace cogsyn {

enum class Errc {
  dangling_target,
  unknown_atom,
  merge_non_node,
  bad_partition,
  unbounded_negation,
  too_large,
  exponent_too_large,
  ambiguous_signature,
  undecided_at_scale,
  no_goals,
  insufficient_budget,
  activation_depth,
  no_component,
  bad_input,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::dangling_target: return "dangling-target";
    case Errc::unknown_atom: return "unknown-atom";
    case Errc::merge_non_node: return "merge-non-node";
    case Errc::bad_partition: return "bad-partition";
    case Errc::unbounded_negation: return "unbounded-negation";
    case Errc::too_large: return "too-large";
    case Errc::exponent_too_large: return "exponent-too-large";
    case Errc::ambiguous_signature: return "ambiguous-signature";
    case Errc::undecided_at_scale: return "undecided-at-scale";
    case Errc::no_goals: return "no-goals";
    case Errc::insufficient_budget: return "insufficient-budget";
    case Errc::activation_depth: return "activation-depth";
    case Errc::no_component: return "no-component";
    case Errc::bad_input: return "bad-input";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace cogsyn
