#include "kap/rational.hpp"

#include <ostream>

namespace kap {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::degenerate_triple: return "DegenerateTriple";
    case Errc::pole_evaluation: return "PoleEvaluation";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::unstable_vertex: return "UnstableVertex";
    case Errc::not_a_tree: return "NotATree";
    case Errc::missing_labels: return "MissingLabels";
    case Errc::unknown_label: return "UnknownLabel";
    case Errc::too_few_leaves: return "TooFewLeaves";
    case Errc::infeasible_shape: return "InfeasibleShape";
    case Errc::not_an_internal_edge: return "NotAnInternalEdge";
    case Errc::not_interior: return "NotInterior";
    case Errc::not_in_image: return "NotInImage";
    case Errc::no_separation: return "NoSeparation";
    case Errc::separation_failure: return "SeparationFailure";
    case Errc::not_on_variety: return "NotOnVariety";
    case Errc::profile_mismatch: return "ProfileMismatch";
    case Errc::not_exceptional: return "NotExceptional";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
    case Errc::internal: return "InternalError";
  }
  return "Error";
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::optional<Rat> Rat::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  auto is_int = [](std::string_view t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  try {
    if (slash == std::string_view::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rat(mpq_class(std::string(s)));
    }
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpq_class q(std::string(num) + "/" + std::string(den));
    if (q.get_den() == 0) return std::nullopt;
    return Rat(q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace kap
