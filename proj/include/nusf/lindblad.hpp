#pragma once

#include <span>
#include <vector>

#include "nusf/core.hpp"

namespace nusf::lindblad {

using Vec3c = Eigen::Vector3cd;

/// Single-axis stochastic-field dissipator. The coupling axis is the unit
/// vector (sin beta, 0, cos beta); its normalisation is absorbed into w^2.
/// w2 == 0 switches the dissipative terms off (unitary limit, used in tests).
struct DissipatorSpec {
  double beta = constants::pi / 4;
  double w2 = 1.0;

  Eigen::Vector3d axis() const { return {std::sin(beta), 0.0, std::cos(beta)}; }
  bool enabled() const { return w2 > 0.0; }
  void validate() const;
};

/// One 2x2 minor of the B-basis density matrix as Pauli coefficients.
/// Diagonal quadrants (a == b) have real r0 and r3; the off-diagonal
/// quadrant carries complex coefficients plus the e^{i eps omega_N tau}
/// phase applied during propagation.
struct QuadrantState {
  int a = 1, b = 1;  // quadrant indices in {1,2}
  Complex r0{};
  Vec3c r = Vec3c::Zero();

  int epsilon() const { return (a == b) ? 0 : (a < b ? 1 : -1); }
  Mat2 minor_matrix() const;
};

/// Generator of the quadrant Bloch dynamics dr/dtau = M r plus its
/// eigen-decomposition and the Lagrange-form integration constants.
/// M combines the omega_B rotation with the dissipative projector onto the
/// plane orthogonal to the coupling axis:
///   M = [[-c^2, w_B, s c], [-w_B, -1, 0], [s c, 0, -s^2]].
/// The (2,2) rate is the full unit rate; see README on the corrected
/// sigma_y damping (complete positivity requires it).
class PropagatorM {
 public:
  PropagatorM(double omega_b_bar, double beta, bool dissipation = true);

  const Eigen::Matrix3d& matrix() const { return m_; }
  const Vec3c& eigenvalues() const { return nu_; }
  bool degenerate() const { return degenerate_; }

  /// Integration constants C_ik for initial data r0: column k holds C_k built
  /// from the moment vectors B0 = r(0), B1 = M r(0), B2 = M^2 r(0).
  /// sum_k C_ik == r_i(0).
  Eigen::Matrix3cd constants(const Vec3c& r0) const;

  /// r(tau) = sum_k C_k e^{nu_k tau}; falls back to a scaling-and-squaring
  /// matrix exponential when the eigenvalues are (numerically) degenerate.
  Vec3c propagate(const Vec3c& r0, double tau) const;

 private:
  Eigen::Matrix3d m_;
  Vec3c nu_;
  bool degenerate_ = false;
};

PropagatorM build_M(double omega_b_bar, double beta);

/// Splits a B-basis density matrix into its four quadrants, order
/// (11), (12), (21), (22). r_i = Tr(q sigma_i)/2, r0 = Tr(q)/2.
std::array<QuadrantState, 4> decompose_quadrants(const DensityMatrix4& rho_b);

/// Inverse of decompose_quadrants.
DensityMatrix4 recompose_quadrants(const std::array<QuadrantState, 4>& q);

/// Propagates one quadrant: r0 is constant, r(tau) = exp(M tau) r(0), and the
/// off-diagonal quadrants pick up e^{i eps omega_n_bar tau}.
QuadrantState propagate_quadrant(const QuadrantState& q, const PropagatorM& m, double tau,
                                 double omega_n_bar);

/// Exact trajectory of a flavour-basis state through the dissipative channel.
/// tau_grid must be non-decreasing and start at 0.
std::vector<DensityMatrix4> evolve(const DensityMatrix4& rho0, const DimensionlessParams& p,
                                   const DissipatorSpec& d, std::span<const double> tau_grid);

/// Independent cross-check: fixed-step RK4 integration of the full
/// 16-component master equation in the B eigenbasis, with the dissipator in
/// the V-conjugation form, V = blockdiag(v, v), v = axis . sigma.
std::vector<DensityMatrix4> evolve_oracle(const DensityMatrix4& rho0, const DimensionlessParams& p,
                                          const DissipatorSpec& d, std::span<const double> tau_grid,
                                          double step = 1e-3);

/// The similarity transform used by the evolution pipeline:
/// rho_evolution = X rho_flavour X^T. It is t_big_b * t_f^T composed with an
/// intra-doublet swap so that each Hamiltonian doublet is ordered lower level
/// first; in that ordering the quadrant rotation matches M exactly.
Mat4d evolution_transform(const DimensionlessParams& p);

/// Hamiltonian levels in the evolution basis (lower level first per doublet).
std::array<double, 4> evolution_levels(const DimensionlessParams& p);

}  // namespace nusf::lindblad
