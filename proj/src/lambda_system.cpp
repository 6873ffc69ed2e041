#include "slowlight/lambda_system.hpp"

#include <cmath>
#include <sstream>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"

namespace slowlight {
namespace {

constexpr int kA = 0;  // excited
constexpr int kB = 1;  // probe ground
constexpr int kC = 2;  // drive ground

constexpr int idx(int i, int j) { return 3 * i + j; }

}  // namespace

Matrix9cd liouvillian(const SystemParams& p, double probe_rabi) {
  using cd = std::complex<double>;
  const double delta1 = p.field.one_photon_detuning;
  const double delta2 = p.field.two_photon_detuning;
  const double probe_detuning = delta1 + delta2;

  Eigen::Matrix3cd H = Eigen::Matrix3cd::Zero();
  H(kA, kA) = -probe_detuning;
  H(kC, kC) = -delta2;
  H(kA, kB) = -probe_rabi;
  H(kB, kA) = -probe_rabi;
  H(kA, kC) = -p.field.drive_rabi;
  H(kC, kA) = -p.field.drive_rabi;

  Matrix9cd L = Matrix9cd::Zero();
  // coherent part, vec(rho) row-major: d/dt rho_ij = -i (H rho - rho H)_ij
  const cd minus_i(0.0, -1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        L(idx(i, j), idx(k, j)) += minus_i * H(i, k);
        L(idx(i, j), idx(i, k)) -= minus_i * H(k, j);
      }

  const double gr = p.atom.radiative_rate;
  const double g = p.atom.optical_decay;
  const double g0 = p.atom.ground_decay;

  // excited decay, branching 1/2 : 1/2
  L(idx(kA, kA), idx(kA, kA)) += -gr;
  L(idx(kB, kB), idx(kA, kA)) += gr / 2;
  L(idx(kC, kC), idx(kA, kA)) += gr / 2;
  // ground populations relax toward an equal mixture at g0
  L(idx(kB, kB), idx(kB, kB)) += -g0 / 2;
  L(idx(kB, kB), idx(kC, kC)) += g0 / 2;
  L(idx(kC, kC), idx(kC, kC)) += -g0 / 2;
  L(idx(kC, kC), idx(kB, kB)) += g0 / 2;
  // optical coherences decay at g, ground coherence at g0
  for (int gnd : {kB, kC}) {
    L(idx(kA, gnd), idx(kA, gnd)) += -g;
    L(idx(gnd, kA), idx(gnd, kA)) += -g;
  }
  L(idx(kB, kC), idx(kB, kC)) += -g0;
  L(idx(kC, kB), idx(kC, kB)) += -g0;
  return L;
}

DensityMatrix steady_state(const SystemParams& p, double probe_rabi) {
  const Matrix9cd L = liouvillian(p, probe_rabi);

  Matrix9cd A = L;
  Vector9cd b = Vector9cd::Zero();
  A.row(idx(kA, kA)).setZero();
  for (int m = 0; m < 3; ++m) A(idx(kA, kA), idx(m, m)) = 1.0;
  b(idx(kA, kA)) = 1.0;

  Eigen::FullPivLU<Matrix9cd> lu(A);
  if (!lu.isInvertible()) {
    const double pivot_ratio =
        std::abs(lu.matrixLU()(8, 8)) / std::abs(lu.matrixLU()(0, 0));
    std::ostringstream msg;
    msg << "steady state is not unique (rank " << lu.rank()
        << " of 9, pivot ratio " << pivot_ratio
        << "); need a drive, a probe, or ground-state relaxation";
    throw NumericError(msg.str());
  }
  const Vector9cd v = lu.solve(b);

  DensityMatrix rho;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho(i, j) = v(idx(i, j));
  return rho;
}

double physicality_defect(const DensityMatrix& rho) {
  double defect = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
  defect = std::max(defect, std::abs(rho.trace() - std::complex<double>(1.0)));
  for (int m = 0; m < 3; ++m) {
    defect = std::max(defect, std::abs(rho(m, m).imag()));
    defect = std::max(defect, std::max(0.0, -rho(m, m).real()));
    defect = std::max(defect, std::max(0.0, rho(m, m).real() - 1.0));
  }
  return defect;
}

std::complex<double> weak_probe_coherence(const SystemParams& p, double delta) {
  using cd = std::complex<double>;
  const double g = p.atom.optical_decay;
  const double g0 = p.atom.ground_decay;
  const double W = p.field.drive_rabi * p.field.drive_rabi;
  const cd Gcb(g0, -delta);
  const cd Gab(g, -(p.field.one_photon_detuning + delta));
  return cd(0.0, 1.0) * Gcb / (Gab * Gcb + W);
}

double susceptibility_prefactor(const SystemParams& p) {
  const double lam = p.atom.wavelength;
  return (3.0 / (8.0 * pi * pi)) * p.cell.density * lam * lam * lam *
         p.atom.radiative_rate;
}

SusceptibilityPoint susceptibility(const SystemParams& p, double delta) {
  return {delta, susceptibility_prefactor(p) * weak_probe_coherence(p, delta)};
}

double optical_frequency(const SystemParams& p) {
  return two_pi * c_light / p.atom.wavelength;
}

double absorption_coefficient(const SystemParams& p, std::complex<double> chi) {
  return optical_frequency(p) / c_light * chi.imag();
}

double refractive_index(std::complex<double> chi) { return 1.0 + chi.real() / 2.0; }

}  // namespace slowlight
