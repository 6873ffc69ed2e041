#include "slowlight/calibrate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/least_squares.hpp"
#include "slowlight/resonance.hpp"

namespace slowlight {
namespace {

SystemParams anchor_params(const Anchor& a, const SystemParams& base,
                           const Calibration& cal) {
  SystemParams p = base;
  p.atom.ground_decay = cal.gamma_0_fit;
  p.field.one_photon_detuning = a.one_photon_detuning;
  p.field.two_photon_detuning = 0.0;
  p.field.drive_rabi = cal.k_rabi * std::sqrt(a.power_w);
  return p;
}

}  // namespace

AnchorSet reference_anchor_set() {
  return {
      {AnchorObservable::delay, 145e-6, 0.0, 370e-6, 0.10},
      {AnchorObservable::delay, 700e-6, two_pi * 1.45e9, -300e-6, 0.10},
      {AnchorObservable::width, 400e-6, two_pi * 1.45e9, two_pi * 2.5e3, 0.25},
  };
}

double predict_anchor(const Anchor& a, const SystemParams& base,
                      const Calibration& cal) {
  const SystemParams p = anchor_params(a, base, cal);
  switch (a.observable) {
    case AnchorObservable::delay:
      return delay_analytic(p).tau;
    case AnchorObservable::width:
      return eit_width(p).value;
  }
  throw std::invalid_argument("unknown anchor observable");
}

CalibrationResult calibrate_from_anchors(const AnchorSet& anchors,
                                         const SystemParams& initial) {
  if (anchors.size() < 2)
    throw std::invalid_argument(
        "calibration needs at least two anchors (one delay anchor included)");
  bool has_delay = false;
  for (const auto& a : anchors) {
    if (a.observable == AnchorObservable::delay) has_delay = true;
    if (a.target == 0.0) throw std::invalid_argument("anchor target must be nonzero");
    if (!(a.tolerance > 0.0))
      throw std::invalid_argument("anchor tolerance must be positive");
    if (a.power_w <= 0.0) throw std::invalid_argument("anchor power must be positive");
  }
  if (!has_delay)
    throw std::invalid_argument("calibration needs at least one delay anchor");

  // tolerance-weighted relative residuals
  auto residuals_at = [&](double k_rabi, double gamma0) {
    Eigen::VectorXd r(Eigen::Index(anchors.size()));
    const Calibration cal{k_rabi, gamma0};
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const double pred = predict_anchor(anchors[i], initial, cal);
      r(Eigen::Index(i)) =
          (pred / anchors[i].target - 1.0) / anchors[i].tolerance;
    }
    return r;
  };

  // coarse 50x50 log grid keeps the refinement away from the dispersive-regime
  // derivative pathologies
  constexpr int kGrid = 50;
  const double lk_min = std::log(1e7), lk_max = std::log(1e11);
  const double lg_min = std::log(two_pi * 1.0), lg_max = std::log(two_pi * 1e6);
  double best_cost = std::numeric_limits<double>::infinity();
  double best_lk = 0.5 * (lk_min + lk_max), best_lg = 0.5 * (lg_min + lg_max);
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double lk = lk_min + (lk_max - lk_min) * i / (kGrid - 1);
      const double lg = lg_min + (lg_max - lg_min) * j / (kGrid - 1);
      double cost;
      try {
        cost = residuals_at(std::exp(lk), std::exp(lg)).squaredNorm();
      } catch (const std::exception&) {
        continue;
      }
      if (std::isfinite(cost) && cost < best_cost) {
        best_cost = cost;
        best_lk = lk;
        best_lg = lg;
      }
    }
  if (!std::isfinite(best_cost))
    throw NumericError("calibration grid scan found no evaluable point");

  auto log_residuals = [&](const Eigen::VectorXd& q) {
    return residuals_at(std::exp(q(0)), std::exp(q(1)));
  };
  Eigen::VectorXd q0(2);
  q0 << best_lk, best_lg;
  const auto fit = fit_damped(log_residuals, q0);
  if (!fit.converged)
    throw NumericError("calibration refinement did not converge");

  CalibrationResult result;
  result.calibration = {std::exp(fit.parameters(0)), std::exp(fit.parameters(1))};
  result.cost = fit.cost;
  result.converged = fit.converged;
  result.all_within_tolerance = true;
  for (const auto& a : anchors) {
    AnchorReport rep;
    rep.anchor = a;
    rep.predicted = predict_anchor(a, initial, result.calibration);
    rep.residual = rep.predicted / a.target - 1.0;
    rep.within_tolerance = std::abs(rep.residual) <= a.tolerance;
    result.all_within_tolerance &= rep.within_tolerance;
    result.anchors.push_back(rep);
  }
  return result;
}

}  // namespace slowlight
