#include "slowlight/least_squares.hpp"

#include <cmath>

namespace slowlight {
namespace {

Eigen::MatrixXd numeric_jacobian(const ResidualFn& residuals,
                                 const Eigen::VectorXd& p,
                                 Eigen::Index n_residuals) {
  const Eigen::Index np = p.size();
  Eigen::MatrixXd J(n_residuals, np);
  for (Eigen::Index j = 0; j < np; ++j) {
    const double h = std::max(1e-7 * std::abs(p(j)), 1e-12);
    Eigen::VectorXd hi = p, lo = p;
    hi(j) += h;
    lo(j) -= h;
    J.col(j) = (residuals(hi) - residuals(lo)) / (2.0 * h);
  }
  return J;
}

}  // namespace

LeastSquaresResult fit_damped(const ResidualFn& residuals, Eigen::VectorXd initial,
                              const JacobianFn& jacobian,
                              const LeastSquaresOptions& opts) {
  LeastSquaresResult result;
  Eigen::VectorXd p = std::move(initial);
  Eigen::VectorXd r = residuals(p);
  double cost = r.squaredNorm();
  double damping = opts.initial_damping;

  for (int it = 0; it < opts.max_iterations; ++it) {
    result.iterations = it + 1;
    const Eigen::MatrixXd J =
        jacobian ? jacobian(p) : numeric_jacobian(residuals, p, r.size());
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;

    bool accepted = false;
    double step_rel = 0.0;
    while (damping < 1e14) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal() += damping * JtJ.diagonal().cwiseMax(1e-300);
      const Eigen::VectorXd step = A.ldlt().solve(g);
      const Eigen::VectorXd trial = p - step;
      const Eigen::VectorXd rt = residuals(trial);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct <= cost) {
        step_rel = step.norm() / (p.norm() + 1e-300);
        p = trial;
        r = rt;
        cost = ct;
        damping = std::max(damping * 0.3, 1e-12);
        accepted = true;
        break;
      }
      damping *= 10.0;
    }
    if (!accepted || step_rel < opts.step_tolerance) {
      // either the relative step dropped below tolerance or no damping gives
      // a downhill step (a numerical minimum)
      result.converged = true;
      break;
    }
  }
  // exhausting the iteration budget is a regular stop; only a non-finite
  // state counts as failure
  if (std::isfinite(cost) && p.allFinite()) result.converged = true;
  result.parameters = p;
  result.cost = cost;
  return result;
}

}  // namespace slowlight
