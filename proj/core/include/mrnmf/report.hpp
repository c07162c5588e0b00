#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mrnmf {

enum class Termination { converged, max_iterations };

std::string_view to_string(Termination t);

/// Which block of an alternating scheme produced a sample in the phase trace.
enum class Phase { init, graph_refresh, factor_update, weight_update };

std::string_view to_string(Phase p);

struct PhaseSample {
  std::size_t outer = 0;
  Phase phase = Phase::init;
  double objective = 0.0;
};

/// Per-run record. `objective_trace` holds the initial objective followed by
/// one value per completed (outer) iteration, so its length is
/// `iterations + 1`. Alternating solvers also fill `phase_trace` with the
/// objective after every block update.
struct SolveReport {
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
  Termination termination = Termination::max_iterations;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<PhaseSample> phase_trace;
  std::vector<std::string> warnings;

  double final_objective() const {
    return objective_trace.empty() ? 0.0 : objective_trace.back();
  }
};

/// Relative objective change used by every convergence test.
inline double relative_change(double previous, double current) {
  const double diff = current > previous ? current - previous : previous - current;
  return diff / (1.0 + previous);
}

}  // namespace mrnmf
