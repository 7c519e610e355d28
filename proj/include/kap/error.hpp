#pragma once

#include <stdexcept>
#include <string>

namespace kap {

enum class Errc {
  degenerate_triple,
  pole_evaluation,
  division_by_zero,
  unstable_vertex,
  not_a_tree,
  missing_labels,
  unknown_label,
  too_few_leaves,
  infeasible_shape,
  not_an_internal_edge,
  not_interior,
  not_in_image,
  no_separation,
  separation_failure,
  not_on_variety,
  profile_mismatch,
  not_exceptional,
  parse_error,
  io_error,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Internal invariant check. These fire only on implementation bugs.
#define KAP_CHECK(cond, msg)                                     \
  do {                                                           \
    if (!(cond)) ::kap::fail(::kap::Errc::internal, (msg));      \
  } while (0)

}  // namespace kap
