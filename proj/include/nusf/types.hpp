#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace nusf {

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4d = Eigen::Matrix4d;
using Complex = std::complex<double>;

/// Basis a 4x4 operator or density matrix is expressed in.
/// Flavour: (e,R), (e,L), (mu,R), (mu,L) — the canonical ordering, chosen so
/// that diag(1,0,0,0) is the pure right-handed electron neutrino.
/// Mass: (1,R), (1,L), (2,R), (2,L).
/// BEigen: eigenbasis of the equal-moments effective Hamiltonian.
enum class BasisTag { Flavour, Mass, BEigen };

inline const char* to_string(BasisTag b) {
  switch (b) {
    case BasisTag::Flavour: return "flavour";
    case BasisTag::Mass: return "mass";
    case BasisTag::BEigen: return "b-eigen";
  }
  return "?";
}

enum class Flavour { e = 0, mu = 1 };
enum class Helicity { R = 0, L = 1 };  // R carries spin label "1", L label "0"

/// Canonical flavour-basis index of a (flavour, helicity) state.
inline int basis_index(Flavour f, Helicity h) {
  return 2 * static_cast<int>(f) + static_cast<int>(h);
}

/// 4x4 Hermitian unit-trace density matrix with its basis tag.
struct DensityMatrix4 {
  Mat4 mat = Mat4::Zero();
  BasisTag basis = BasisTag::Flavour;

  static DensityMatrix4 pure(Flavour f, Helicity h) {
    DensityMatrix4 rho;
    rho.mat(basis_index(f, h), basis_index(f, h)) = 1.0;
    return rho;
  }

  /// Diagonal flavour-basis mixture with weights a1..a4 mapped as
  /// a1->(e,L), a2->(mu,L), a3->(e,R), a4->(mu,R).
  static DensityMatrix4 diagonal_mixture(const std::array<double, 4>& a);

  double trace_error() const { return std::abs(mat.trace().real() - 1.0) + std::abs(mat.trace().imag()); }
  double hermiticity_residual() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const {
    return Eigen::SelfAdjointEigenSolver<Mat4>(mat, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  }
  /// Throws std::domain_error when Hermiticity/trace/positivity are violated
  /// beyond the stated tolerances.
  void validate(double herm_tol = 1e-12, double trace_tol = 1e-10, double psd_tol = 1e-8) const;
};

/// Physical inputs in the units of the paper's scenario section:
/// eV-based natural units, magnetic field in Gauss, moments in Bohr
/// magnetons, densities in cm^-3, correlation length in parsec.
struct PhysicalParams {
  double delta_m2 = 7.37e-5;   // eV^2
  double e_nu = 1e20;          // eV
  double theta_nu = 0.57964;   // rad; sin^2(theta) = 0.297
  double b_perp = 2.93e-6;     // Gauss
  double b_par = 0.0;          // Gauss
  double mu11 = 2.6e-12;       // in mu_B
  double mu22 = 2.6e-12;
  double mu12 = 2.6e-12;
  double gamma1 = 1e21;
  double gamma2 = 1e21;
  double n_e = 1.0;            // cm^-3 (net electron density)
  double n_n = 1.0;            // cm^-3
  double g_f = 1.1663787e-23;  // eV^-2
  double eta = 1.0;            // <h^2>/B^2
  double l0_pc = 50.0;         // pc
  double mu_b = 5.79e-9;       // eV/Gauss

  double gamma12() const { return 2.0 / (1.0 / gamma1 + 1.0 / gamma2); }
  bool equal_moments(double tol = 1e-12) const {
    return std::abs(mu11 - mu22) <= tol && std::abs(mu11 - mu12) <= tol;
  }
  void validate() const;
};

/// Reduced parameters of the dimensionless formulation: frequencies in units
/// of 2w^2 and time tau = 2 w^2 t.
struct DimensionlessParams {
  double omega_v_bar = 5.0;                    // vacuum oscillation frequency
  double omega_b_bar = 1.0;                    // magnetic level splitting (2 mu B)
  double beta = 0.7853981633974483;            // dissipation angle
  double theta_nu = 0.7853981633974483;        // mixing angle (flavour<->mass)
  bool equal_moments = true;

  /// omega_N = sqrt(4 omega_v^2 + omega_b^2); see eigenfrequencies().
  double omega_n_bar() const;
  void validate() const;
};

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double parsec_in_inverse_ev = 1.5637e23;  // 1 pc in eV^-1
inline constexpr double cm3_in_ev3 = 7.6837e-15;           // 1 cm^-3 in eV^3
}  // namespace constants

}  // namespace nusf
