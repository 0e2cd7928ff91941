#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tweetpol/corpus_io.hpp"
#include "tweetpol/sparse.hpp"

namespace tweetpol {

enum class Solver {
  // Randomized pairwise dual coordinate ascent; keeps the bias unregularized
  // through the dual equality constraint. Converges to the exact optimum.
  DualCoordinate,
  // Stochastic subgradient, step 1/(lambda t), optional iterate averaging.
  Pegasos,
};

Solver parse_solver(std::string_view name);
std::string_view to_string(Solver solver) noexcept;

struct TrainConfig {
  double lambda = 1e-4;
  std::uint32_t epochs = 10;
  std::uint64_t seed = 42;
  bool average_weights = true;  // Pegasos only
  Solver solver = Solver::DualCoordinate;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Separating hyperplane w.x + b for labels {0, 1}.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  Label label_neg = 0;
  Label label_pos = 1;
  TrainConfig config;
};

/// Minimizes (lambda/2)|w|^2 + mean_i max(0, 1 - y_i (w.x_i + b)), y_i in {-1, +1}.
/// Deterministic in (x, y, config). If the solver's result is worse than the
/// zero-weight model with its best bias, the latter is returned.
LinearModel train(std::span<const SparseVector> x, std::span<const Label> y,
                  const TrainConfig& config);

/// w.x + b. Throws DimensionMismatch if x.dim() differs from the weight length.
double decision(const LinearModel& model, const SparseVector& x);

/// 1 when decision > 0, otherwise 0.
Label predict(const LinearModel& model, const SparseVector& x);

double objective(const LinearModel& model, std::span<const SparseVector> x,
                 std::span<const Label> y, double lambda);

/// Exact minimizer over b of mean_i max(0, 1 - y_i (margins_i + b)); the
/// midpoint of the optimal interval when it is not a single point.
double optimal_bias(std::span<const double> margins, std::span<const Label> y);

}  // namespace tweetpol
