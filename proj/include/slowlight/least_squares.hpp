#pragma once

#include <Eigen/Dense>
#include <functional>

namespace slowlight {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn =
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct LeastSquaresOptions {
  int max_iterations = 100;
  double step_tolerance = 1e-10;  // relative parameter step
  double initial_damping = 1e-3;
};

struct LeastSquaresResult {
  Eigen::VectorXd parameters;
  double cost = 0.0;  // sum of squared residuals
  int iterations = 0;
  bool converged = false;
};

// Damped (Levenberg-Marquardt) least squares. If no Jacobian is supplied it
// is formed by central differences. Damping multiplies the diagonal of the
// normal matrix; increased on rejected steps, relaxed on accepted ones.
LeastSquaresResult fit_damped(const ResidualFn& residuals,
                              Eigen::VectorXd initial,
                              const JacobianFn& jacobian = nullptr,
                              const LeastSquaresOptions& opts = {});

}  // namespace slowlight
