#ifndef GRACELAB_ERRORS_HPP
#define GRACELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gracelab {

enum class errc {
  odd_cycle,
  disconnected,
  not_a_tree,
  not_a_caterpillar,
  not_a_lobster,
  cap_exceeded,
  partial_labelling,
  not_set_ordered_graceful,
  not_set_ordered_odd_graceful,
  spec_invariant_violated,
  mode_mismatch,
  construction_failed,
  parse_error,
  range_error,
  duplicate_edge,
  bound_too_small,
  parallel_edges,
  self_loop,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::odd_cycle: return "OddCycle";
    case errc::disconnected: return "Disconnected";
    case errc::not_a_tree: return "NotATree";
    case errc::not_a_caterpillar: return "NotACaterpillar";
    case errc::not_a_lobster: return "NotALobster";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::partial_labelling: return "PartialLabelling";
    case errc::not_set_ordered_graceful: return "NotSetOrderedGraceful";
    case errc::not_set_ordered_odd_graceful: return "NotSetOrderedOddGraceful";
    case errc::spec_invariant_violated: return "SpecInvariantViolated";
    case errc::mode_mismatch: return "ModeMismatch";
    case errc::construction_failed: return "ConstructionFailed";
    case errc::parse_error: return "ParseError";
    case errc::range_error: return "RangeError";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::bound_too_small: return "BoundTooSmall";
    case errc::parallel_edges: return "ParallelEdges";
    case errc::self_loop: return "SelfLoop";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace gracelab

#endif  // GRACELAB_ERRORS_HPP
