#include "mrnmf/report.hpp"

namespace mrnmf {

std::string_view to_string(Termination t) {
  return t == Termination::converged ? "converged" : "max_iterations";
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::init:
      return "init";
    case Phase::graph_refresh:
      return "graph_refresh";
    case Phase::factor_update:
      return "factor_update";
    case Phase::weight_update:
      return "weight_update";
  }
  return "unknown";
}

}  // namespace mrnmf
