#include "mrnmf/simplex_qp.hpp"

#include "mrnmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace mrnmf {

SimplexWeights::SimplexWeights(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0) throw ParameterError("simplex weights: empty vector");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_(i)) || values_(i) < 0.0) {
      throw DomainError("simplex weights: entry " + std::to_string(i) + " is " +
                        std::to_string(values_(i)));
    }
  }
  const double sum = values_.sum();
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw DomainError("simplex weights: entries sum to " + std::to_string(sum));
  }
}

SimplexWeights::SimplexWeights(std::initializer_list<double> values)
    : SimplexWeights(Eigen::Map<const Eigen::VectorXd>(
          values.begin(), static_cast<Eigen::Index>(values.size()))) {}

SimplexWeights SimplexWeights::uniform(std::size_t size) {
  if (size == 0) throw ParameterError("simplex weights: empty vector");
  return SimplexWeights(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(size),
                                                  1.0 / static_cast<double>(size)));
}

SimplexWeights SimplexWeights::one_hot(std::size_t size, std::size_t index) {
  if (index >= size) throw ParameterError("one_hot: index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return SimplexWeights(std::move(v));
}

double DiagQP::objective(const Eigen::VectorXd& v) const {
  return (q.array() * v.array().square()).sum() + lin.dot(v);
}

namespace {

void validate(const DiagQP& p) {
  if (p.q.size() == 0) throw ParameterError("simplex QP: no coordinates");
  if (p.q.size() != p.lin.size()) {
    throw ParameterError("simplex QP: q has " + std::to_string(p.q.size()) +
                         " entries, linear term has " + std::to_string(p.lin.size()));
  }
  for (Eigen::Index c = 0; c < p.q.size(); ++c) {
    if (!std::isfinite(p.q(c)) || p.q(c) < 0.0) {
      throw ParameterError("simplex QP: q[" + std::to_string(c) + "] = " +
                           std::to_string(p.q(c)) + " must be finite and >= 0");
    }
    if (!std::isfinite(p.lin(c))) {
      throw ParameterError("simplex QP: linear term[" + std::to_string(c) + "] is not finite");
    }
  }
}

}  // namespace

QpSolution solve_qp(const DiagQP& problem) {
  validate(problem);
  const Eigen::Index l = problem.q.size();

  // The argmin is invariant to a positive rescaling of the objective.
  const double scale = std::max(problem.q.maxCoeff(), problem.lin.cwiseAbs().maxCoeff());
  const double inv_scale = scale > 0.0 ? 1.0 / scale : 1.0;
  const Eigen::VectorXd q = problem.q * inv_scale;
  const Eigen::VectorXd lin = problem.lin * inv_scale;

  std::vector<Eigen::Index> curved;  // q_c > 0
  Eigen::Index flat_best = -1;       // q_c == 0 with the smallest linear cost
  for (Eigen::Index c = 0; c < l; ++c) {
    const double half_inv = 0.5 / q(c);
    if (q(c) > 0.0 && std::isfinite(half_inv)) {
      curved.push_back(c);
    } else if (flat_best < 0 || lin(c) < lin(flat_best)) {
      flat_best = c;
    }
  }

  Eigen::VectorXd v = Eigen::VectorXd::Zero(l);
  if (curved.empty()) {
    v(flat_best) = 1.0;
    return {SimplexWeights(std::move(v)), problem.lin(flat_best)};
  }

  // Water filling: S(lambda) = sum_c max(0, (lambda - lin_c) / (2 q_c)) is
  // piecewise linear with breakpoints at lin_c. Walk the breakpoints in
  // increasing order until the active segment contains S = 1.
  std::stable_sort(curved.begin(), curved.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return lin(a) < lin(b); });
  double slope = 0.0;
  double offset = 0.0;
  double lambda = 0.0;
  for (std::size_t j = 0; j < curved.size(); ++j) {
    const Eigen::Index c = curved[j];
    slope += 0.5 / q(c);
    offset += 0.5 * lin(c) / q(c);
    lambda = (1.0 + offset) / slope;
    if (j + 1 == curved.size() || lambda <= lin(curved[j + 1])) break;
  }

  if (flat_best >= 0 && lin(flat_best) < lambda) {
    // A free coordinate undercuts the curved ones: it pins the multiplier and
    // absorbs whatever mass the curved coordinates leave.
    lambda = lin(flat_best);
    double used = 0.0;
    for (const Eigen::Index c : curved) {
      v(c) = std::max(0.0, 0.5 * (lambda - lin(c)) / q(c));
      used += v(c);
    }
    v(flat_best) = std::max(0.0, 1.0 - used);
  } else {
    Eigen::Index active = 0;
    for (const Eigen::Index c : curved) {
      v(c) = std::max(0.0, 0.5 * (lambda - lin(c)) / q(c));
      active += v(c) > 0.0 ? 1 : 0;
    }
    // A lone active coordinate carries the full mass exactly.
    if (active == 1) v = (v.array() > 0.0).cast<double>().matrix();
  }
  return {SimplexWeights(std::move(v)), lambda * scale};
}

SimplexWeights grid_oracle(const DiagQP& problem, double step) {
  validate(problem);
  const Eigen::Index l = problem.q.size();
  if (l > 4) throw ParameterError("grid_oracle: at most 4 coordinates supported");
  if (!(step > 0.0 && step <= 1.0)) throw ParameterError("grid_oracle: step must be in (0, 1]");

  const auto ticks = static_cast<long>(std::floor(1.0 / step + 1e-9));
  Eigen::VectorXd best = Eigen::VectorXd::Zero(l);
  best(l - 1) = 1.0;
  double best_value = problem.objective(best);
  Eigen::VectorXd v(l);
  std::vector<long> counts(static_cast<std::size_t>(l - 1), 0);

  // Enumerate the first l-1 coordinates on the lattice; the last one takes
  // the remaining mass.
  std::function<void(Eigen::Index, long)> visit = [&](Eigen::Index c, long remaining) {
    if (c == l - 1) {
      double used = 0.0;
      for (Eigen::Index i = 0; i + 1 < l; ++i) {
        v(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) * step;
        used += v(i);
      }
      v(l - 1) = std::max(0.0, 1.0 - used);
      const double value = problem.objective(v);
      if (value < best_value) {
        best_value = value;
        best = v;
      }
      return;
    }
    for (long a = 0; a <= remaining; ++a) {
      counts[static_cast<std::size_t>(c)] = a;
      visit(c + 1, remaining - a);
    }
  };
  visit(0, ticks);
  return SimplexWeights(std::move(best));
}

double kkt_residual(const DiagQP& problem, const Eigen::VectorXd& v) {
  validate(problem);
  if (v.size() != problem.q.size()) throw DimensionError("kkt_residual: size mismatch");
  const Eigen::VectorXd grad = 2.0 * problem.q.cwiseProduct(v) + problem.lin;
  // With lambda = min_c grad_c dual feasibility holds by construction; what
  // remains is complementary slackness on the support.
  const double lambda = grad.minCoeff();
  double residual = 0.0;
  for (Eigen::Index c = 0; c < v.size(); ++c) {
    residual = std::max(residual, std::abs(v(c) * (grad(c) - lambda)));
  }
  return residual;
}

SimplexWeights project_to_simplex(const Eigen::VectorXd& y) {
  if (y.size() == 0) throw ParameterError("project_to_simplex: empty vector");
  std::vector<double> sorted(y.data(), y.data() + y.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  return SimplexWeights((y.array() - theta).max(0.0).matrix());
}

}  // namespace mrnmf
