#pragma once

#include <optional>
#include <vector>

#include "nusf/types.hpp"

namespace nusf::entropy {

/// Complete projective spin measurements used for the classical correlation.
/// paper(): exactly the sigma_z and sigma_x eigenbases.
/// bloch_grid(n): measurement axes on a hemisphere grid, n azimuthal times
/// max(2, n/2) polar points; always contains the z and x axes.
struct MeasurementSet {
  enum class Mode { Paper, BlochGrid };
  Mode mode = Mode::Paper;
  int resolution = 64;

  static MeasurementSet paper() { return {}; }
  static MeasurementSet bloch_grid(int resolution);

  /// Rank-1 projector pairs, each summing to the 2x2 identity.
  std::vector<std::pair<Mat2, Mat2>> projectors() const;
};

/// Every entropic quantity evaluated at one tau. Entropies in bits.
struct EntropyReport {
  double tau = 0.0;
  std::array<double, 4> lam{};    // full density matrix spectrum (descending)
  std::array<double, 4> lam_r{};  // spectrum of rho_R nu
  std::array<double, 4> lam_q{};  // spectrum of rho_Q nu
  std::array<double, 2> lam_nu{};
  std::array<double, 2> lam_sigma{};
  double s_full = 0, s_nu = 0, s_sigma = 0, s_rnu = 0, s_qnu = 0;
  double s_sigma_given_nu = 0, s_r_given_nu = 0, s_q_given_nu = 0;
  double i_sigma_nu = 0, i_sigmaz_nu = 0, i_sigmax_nu = 0;
  double j_classical = 0;
  double d_discord = 0;  // raw value; clamped() for the non-negative report
  double eur_lhs = 0, eur_rhs = 0, d_eur = 0;

  double d_discord_clamped() const { return d_discord > 0 ? d_discord : 0.0; }
};

/// Partial trace over spin; flavour-basis input required.
Mat2 reduce_flavour(const DensityMatrix4& rho);
/// Partial trace over flavour, (R, L) ordering.
Mat2 reduce_spin(const DensityMatrix4& rho);

/// Dephasing in the sigma_z spin basis (the R measurement register).
DensityMatrix4 project_R(const DensityMatrix4& rho);
/// Dephasing in the sigma_x spin basis (the Q measurement register).
DensityMatrix4 project_Q(const DensityMatrix4& rho);

/// Von Neumann entropy in bits, eigenvalues below 1e-14 clamped to zero.
/// Throws std::domain_error when the trace deviates from 1 beyond 1e-8.
double vn_entropy(const Eigen::MatrixXcd& m);
/// Entropy of an eigenvalue list (same clamping), no trace check.
double entropy_bits(std::span<const double> eigenvalues);
/// Binary entropy h(x) in bits.
double binary_entropy(double x);

/// Closed-form spectra (two-level pair formulas applied per spin/x block).
std::array<double, 2> closed_form_lam_nu(const DensityMatrix4& rho);
std::array<double, 2> closed_form_lam_sigma(const DensityMatrix4& rho);
std::array<double, 4> closed_form_lam_r(const DensityMatrix4& rho);
std::array<double, 4> closed_form_lam_q(const DensityMatrix4& rho);

struct ConditionalEntropies {
  double sigma_given_nu, r_given_nu, q_given_nu;
};
ConditionalEntropies conditional_entropies(const DensityMatrix4& rho);

struct MutualInformations {
  double sigma_nu, sigmaz_nu, sigmax_nu;
};
MutualInformations mutual_informations(const DensityMatrix4& rho);

/// J = max over the measurement set of I(X, nu) for the post-measurement
/// state. Paper mode reduces to max(I(sigma_z,nu), I(sigma_x,nu)).
double classical_correlation(const DensityMatrix4& rho, const MeasurementSet& ms);

/// D = I(sigma, nu) - J (raw, may be tiny-negative numerically).
double discord(const DensityMatrix4& rho, const MeasurementSet& ms);

struct EurTerms {
  double lhs, rhs, d_eur;
};
/// lhs = S(R|nu) + S(Q|nu); rhs = 1 + S(sigma|nu) + max(0, D - J).
/// The 1 bit is -2 log2 c(R,Q) for the sigma_z / sigma_x pair.
EurTerms eur_terms(const DensityMatrix4& rho, const MeasurementSet& ms);

/// The full pipeline at one tau.
EntropyReport analyze(const DensityMatrix4& rho, double tau,
                      const MeasurementSet& ms = MeasurementSet::paper());

/// Sequential-measurement variant: the Q-side quantities are computed from a
/// separately evolved state (the channel applied to the R-projected initial
/// state) instead of rho itself.
EntropyReport analyze_sequential(const DensityMatrix4& rho, const DensityMatrix4& rho_for_q,
                                 double tau, const MeasurementSet& ms = MeasurementSet::paper());

/// Closed-form t = 0 report for a diagonal mixture, used as the oracle
/// against the general pipeline at tau = 0.
EntropyReport initial_report(const std::array<double, 4>& a);

}  // namespace nusf::entropy
