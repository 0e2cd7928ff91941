#include "tweetpol/linear_svc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tweetpol/error.hpp"
#include "tweetpol/kernels.hpp"
#include "tweetpol/rng.hpp"

namespace tweetpol {

namespace {

double signed_label(Label y) { return y == 1 ? 1.0 : -1.0; }

double weight_dot(std::span<const double> w, const SparseVector& x) {
  return kernels::gather_dot(x.values(), x.indices(), w);
}

void validate(std::span<const SparseVector> x, std::span<const Label> y, const TrainConfig& config) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(x.size()) + " vectors but " +
                                               std::to_string(y.size()) + " labels");
  }
  if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  }
  if (config.epochs < 1) throw Error(ErrorCode::InvalidArgument, "epochs must be >= 1");
  if (x.size() > 0xFFFFFFFFULL) throw Error(ErrorCode::InvalidArgument, "too many examples");
  bool seen[2] = {false, false};
  for (Label label : y) {
    if (label != 0 && label != 1) {
      throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1");
    }
    seen[label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw Error(ErrorCode::SingleClassData, "training data needs both classes");
  }
  const auto dim = x.front().dim();
  bool any_nonzero = false;
  for (const auto& v : x) {
    if (v.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "vectors of dimension " + std::to_string(dim) +
                                                    " and " + std::to_string(v.dim()));
    }
    any_nonzero = any_nonzero || !v.empty();
  }
  if (!any_nonzero) throw Error(ErrorCode::DegenerateInput, "all feature vectors are zero");
}

// Dual of (1/2)|w|^2 + C sum xi_i with C = 1/(lambda n):
//   max sum a_i - (1/2)|sum a_i y_i x_i|^2,  0 <= a_i <= C,  sum a_i y_i = 0.
// Each step moves a pair (i, j) along the constraint surface:
//   a_i += y_i d,  a_j -= y_j d,  w += d (x_i - x_j)
// with d the clipped unconstrained maximizer.
//
// Only pairs of support vectors or margin violators can move, so every epoch
// first rebuilds that active set (alpha > 0, or on or inside the margin under the
// best bias for the current w) and then pairs members of it with each other.
// Points that start violating re-enter at the next epoch.
std::vector<double> solve_dual(std::span<const SparseVector> x, std::span<const Label> y,
                               const TrainConfig& config) {
  const std::size_t n = x.size();
  const double c = 1.0 / (config.lambda * static_cast<double>(n));
  std::vector<double> w(x.front().dim(), 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = x[i].squared_norm();

  Pcg32 rng(config.seed);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> margins(n);
  std::vector<std::size_t> active;
  // At large C one point slipping under the margin moves the primal objective a
  // lot, so the last iterate can be worse than an earlier one. Keep the best.
  std::vector<double> best_w = w;
  double best_obj = kInf;
  for (std::uint32_t epoch = 0;; ++epoch) {
    for (std::size_t k = 0; k < n; ++k) margins[k] = weight_dot(w, x[k]);
    const double b = optimal_bias(margins, y);
    double hinge = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      hinge += std::max(0.0, 1.0 - signed_label(y[k]) * (margins[k] + b));
    }
    const double obj = 0.5 * config.lambda * kernels::sum_squares(w) + hinge / static_cast<double>(n);
    if (obj < best_obj) {
      best_obj = obj;
      best_w = w;
    }
    if (epoch == config.epochs) break;
    active.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (alpha[k] > 0.0 || signed_label(y[k]) * (margins[k] + b) <= 1.0) active.push_back(k);
    }
    if (active.size() < 2) break;
    fisher_yates(active, rng);

    const auto m = static_cast<std::uint32_t>(active.size());
    for (std::uint32_t a = 0; a < m; ++a) {
      const std::size_t i = active[a];
      std::uint32_t pick = rng.bounded(m - 1);
      if (pick >= a) ++pick;
      const std::size_t j = active[pick];
      const double q = sq[i] + sq[j] - 2.0 * sparse_dot(x[i], x[j]);
      if (!(q > 1e-14 * (sq[i] + sq[j]))) continue;
      const double yi = signed_label(y[i]);
      const double yj = signed_label(y[j]);
      double d = ((yi - yj) - (weight_dot(w, x[i]) - weight_dot(w, x[j]))) / q;

      // y_i d in [-a_i, C - a_i]
      double lo = -kInf;
      double hi = kInf;
      if (yi > 0) {
        lo = std::max(lo, -alpha[i]);
        hi = std::min(hi, c - alpha[i]);
      } else {
        lo = std::max(lo, alpha[i] - c);
        hi = std::min(hi, alpha[i]);
      }
      // -y_j d in [-a_j, C - a_j]
      if (yj > 0) {
        lo = std::max(lo, alpha[j] - c);
        hi = std::min(hi, alpha[j]);
      } else {
        lo = std::max(lo, -alpha[j]);
        hi = std::min(hi, c - alpha[j]);
      }
      d = std::clamp(d, lo, hi);
      if (d == 0.0) continue;
      alpha[i] = std::clamp(alpha[i] + yi * d, 0.0, c);
      alpha[j] = std::clamp(alpha[j] - yj * d, 0.0, c);
      kernels::scatter_axpy(d, x[i].values(), x[i].indices(), w);
      kernels::scatter_axpy(-d, x[j].values(), x[j].indices(), w);
    }
  }
  return best_w;
}

// Pegasos with w = scale * v so the shrink is O(1) per step. The running sum
// of post-step iterates is kept as scale_sum * v - correction (see below), so
// averaging also costs O(nnz) per step.
LinearModel solve_pegasos(std::span<const SparseVector> x, std::span<const Label> y,
                          const TrainConfig& config) {
  const std::size_t dim = x.front().dim();
  std::vector<double> v(dim, 0.0);
  // sum_t w_t = scale_sum * v - correction, where each update delta (in v units)
  // adds scale_sum_before * delta to correction.
  std::vector<double> correction(config.average_weights ? dim : 0, 0.0);
  double scale = 1.0;
  double scale_sum = 0.0;
  double bias = 0.0;
  double bias_sum = 0.0;
  std::uint64_t t = 0;

  Pcg32 rng(config.seed);
  for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = shuffled_indices(x.size(), rng);
    for (const std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (config.lambda * static_cast<double>(t));
      const double yi = signed_label(y[i]);
      const double margin = yi * (scale * weight_dot(v, x[i]) + bias);

      scale *= 1.0 - eta * config.lambda;
      if (scale == 0.0) {
        // only at t == 1, where v is still zero
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
      }
      const double scale_sum_before = scale_sum;
      scale_sum += scale;
      if (margin < 1.0) {
        const double step = eta * yi / scale;
        kernels::scatter_axpy(step, x[i].values(), x[i].indices(), v);
        if (config.average_weights) {
          kernels::scatter_axpy(step * scale_sum_before, x[i].values(), x[i].indices(), correction);
        }
        bias += eta * yi;
      }
      bias_sum += bias;
    }
  }

  LinearModel model;
  model.config = config;
  model.weights.resize(dim);
  if (config.average_weights) {
    const auto steps = static_cast<double>(t);
    for (std::size_t k = 0; k < dim; ++k) {
      model.weights[k] = (scale_sum * v[k] - correction[k]) / steps;
    }
    model.bias = bias_sum / steps;
  } else {
    for (std::size_t k = 0; k < dim; ++k) model.weights[k] = scale * v[k];
    model.bias = bias;
  }
  return model;
}

double mean_hinge(std::span<const double> margins, std::span<const Label> y, double bias) {
  double sum = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    sum += std::max(0.0, 1.0 - signed_label(y[i]) * (margins[i] + bias));
  }
  return sum / static_cast<double>(margins.size());
}

}  // namespace

Solver parse_solver(std::string_view name) {
  if (name == "dual-cd") return Solver::DualCoordinate;
  if (name == "pegasos") return Solver::Pegasos;
  throw Error(ErrorCode::InvalidArgument, "unknown solver '" + std::string(name) + "'");
}

std::string_view to_string(Solver solver) noexcept {
  return solver == Solver::Pegasos ? "pegasos" : "dual-cd";
}

double optimal_bias(std::span<const double> margins, std::span<const Label> y) {
  // Breakpoint of example i is y_i - m_i. Left of all breakpoints the slope is
  // -(#positives); every breakpoint adds exactly 1, so the slope is zero
  // between the P-th and (P+1)-th smallest breakpoints.
  std::vector<double> breakpoints(margins.size());
  std::size_t positives = 0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    breakpoints[i] = signed_label(y[i]) - margins[i];
    positives += y[i] == 1 ? 1 : 0;
  }
  if (positives == 0 || positives == margins.size()) {
    throw Error(ErrorCode::SingleClassData, "bias needs both classes");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  return 0.5 * (breakpoints[positives - 1] + breakpoints[positives]);
}

LinearModel train(std::span<const SparseVector> x, std::span<const Label> y,
                  const TrainConfig& config) {
  validate(x, y, config);

  LinearModel model;
  if (config.solver == Solver::Pegasos) {
    model = solve_pegasos(x, y, config);
  } else {
    model.weights = solve_dual(x, y, config);
    std::vector<double> margins(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) margins[i] = weight_dot(model.weights, x[i]);
    model.bias = optimal_bias(margins, y);
  }
  model.config = config;

  const std::vector<double> zeros(x.size(), 0.0);
  const double zero_bias = optimal_bias(zeros, y);
  const double zero_objective = mean_hinge(zeros, y, zero_bias);
  if (!(objective(model, x, y, config.lambda) <= zero_objective)) {
    std::fill(model.weights.begin(), model.weights.end(), 0.0);
    model.bias = zero_bias;
  }
  return model;
}

double decision(const LinearModel& model, const SparseVector& x) {
  if (x.dim() != model.weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector dimension " + std::to_string(x.dim()) +
                                                  ", model dimension " +
                                                  std::to_string(model.weights.size()));
  }
  return weight_dot(model.weights, x) + model.bias;
}

Label predict(const LinearModel& model, const SparseVector& x) {
  return decision(model, x) > 0.0 ? model.label_pos : model.label_neg;
}

double objective(const LinearModel& model, std::span<const SparseVector> x,
                 std::span<const Label> y, double lambda) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::LengthMismatch, "objective needs matching, non-empty x and y");
  }
  std::vector<double> margins(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) margins[i] = decision(model, x[i]) - model.bias;
  return 0.5 * lambda * kernels::sum_squares(model.weights) + mean_hinge(margins, y, model.bias);
}

}  // namespace tweetpol
