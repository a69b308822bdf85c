#include "nusf/core.hpp"

#include <cmath>

namespace nusf {

DensityMatrix4 DensityMatrix4::diagonal_mixture(const std::array<double, 4>& a) {
  double sum = 0.0;
  for (double w : a) {
    if (w < -1e-12) throw std::domain_error("mixture weight below zero");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::domain_error("mixture weights must sum to 1");
  DensityMatrix4 rho;
  rho.mat(basis_index(Flavour::e, Helicity::L), basis_index(Flavour::e, Helicity::L)) = a[0];
  rho.mat(basis_index(Flavour::mu, Helicity::L), basis_index(Flavour::mu, Helicity::L)) = a[1];
  rho.mat(basis_index(Flavour::e, Helicity::R), basis_index(Flavour::e, Helicity::R)) = a[2];
  rho.mat(basis_index(Flavour::mu, Helicity::R), basis_index(Flavour::mu, Helicity::R)) = a[3];
  return rho;
}

void DensityMatrix4::validate(double herm_tol, double trace_tol, double psd_tol) const {
  if (hermiticity_residual() > herm_tol)
    throw std::domain_error("density matrix not Hermitian within tolerance");
  if (trace_error() > trace_tol)
    throw std::domain_error("density matrix trace differs from 1");
  if (min_eigenvalue() < -psd_tol)
    throw std::domain_error("density matrix has a negative eigenvalue beyond tolerance");
}

void PhysicalParams::validate() const {
  if (e_nu <= 0) throw std::domain_error("E_nu must be positive");
  if (b_perp < 0 || b_par < 0) throw std::domain_error("magnetic field components must be >= 0");
  if (gamma1 <= 1 || gamma2 <= 1) throw std::domain_error("Lorentz factors must exceed 1");
  if (theta_nu < 0 || theta_nu >= constants::pi / 2)
    throw std::domain_error("theta_nu outside [0, pi/2)");
  if (n_e < 0 || n_n < 0) throw std::domain_error("densities must be >= 0");
  if (eta < 0 || l0_pc < 0) throw std::domain_error("eta and L0 must be >= 0");
}

double DimensionlessParams::omega_n_bar() const {
  return std::sqrt(4.0 * omega_v_bar * omega_v_bar + omega_b_bar * omega_b_bar);
}

void DimensionlessParams::validate() const {
  if (omega_b_bar < 0) throw std::domain_error("omega_b_bar must be >= 0");
  if (beta < 0 || beta > constants::pi / 2) throw std::domain_error("beta outside [0, pi/2]");
  if (theta_nu < 0 || theta_nu >= constants::pi / 2)
    throw std::domain_error("theta_nu outside [0, pi/2)");
}

}  // namespace nusf

namespace nusf::core {

Mat4d build_vacuum_hamiltonian(const PhysicalParams& p) {
  if (p.e_nu <= 0) throw std::domain_error("E_nu must be positive");
  const double omega = p.delta_m2 / (4.0 * p.e_nu);
  const double c2 = std::cos(2.0 * p.theta_nu);
  const double s2 = std::sin(2.0 * p.theta_nu);
  Mat4d h;
  h << -c2, 0, s2, 0,
        0, -c2, 0, s2,
        s2, 0, c2, 0,
        0, s2, 0, c2;
  return omega * h;
}

Mat4d build_matter_hamiltonian(const PhysicalParams& p) {
  if (p.n_e < 0 || p.n_n < 0) throw std::domain_error("densities must be >= 0");
  const double scale = p.g_f / std::sqrt(2.0) * constants::cm3_in_ev3;
  const double v_e = scale * (p.n_e - p.n_n / 2.0);
  const double v_mu = scale * (-p.n_n / 2.0);
  Mat4d h = Mat4d::Zero();
  h(1, 1) = v_e;   // (e,L)
  h(3, 3) = v_mu;  // (mu,L)
  return h;
}

FlavourMoments flavour_moments(const PhysicalParams& p) {
  const double c = std::cos(p.theta_nu), s = std::sin(p.theta_nu);
  const double c2 = std::cos(2.0 * p.theta_nu), s2 = std::sin(2.0 * p.theta_nu);
  FlavourMoments m;
  m.mu_ee = p.mu11 * c * c + p.mu22 * s * s + p.mu12 * s2;
  m.mu_emu = p.mu12 * c2 + 0.5 * (p.mu22 - p.mu11) * s2;
  m.mu_mumu = p.mu11 * s * s + p.mu22 * c * c - p.mu12 * s2;
  const double g12 = p.gamma12();
  m.mug_ee = -(p.mu11 / p.gamma1 * c * c + p.mu22 / p.gamma2 * s * s + p.mu12 / g12 * s2);
  m.mug_emu = -(p.mu12 / g12 * c2 + 0.5 * (p.mu22 / p.gamma2 - p.mu11 / p.gamma1) * s2);
  m.mug_mumu = -(p.mu11 / p.gamma1 * s * s + p.mu22 / p.gamma2 * c * c - p.mu12 / g12 * s2);
  return m;
}

Mat4d build_magnetic_hamiltonian(const PhysicalParams& p, bool drop_longitudinal) {
  const FlavourMoments m = flavour_moments(p);
  const double bt = p.mu_b * p.b_perp;
  const double bl = drop_longitudinal ? 0.0 : p.mu_b * p.b_par;
  Mat4d h;
  h << -m.mug_ee * bl, m.mu_ee * bt, -m.mug_emu * bl, m.mu_emu * bt,
       m.mu_ee * bt, -m.mug_ee * bl, m.mu_emu * bt, -m.mug_emu * bl,
       -m.mug_emu * bl, m.mu_emu * bt, -m.mug_mumu * bl, m.mu_mumu * bt,
       m.mu_emu * bt, -m.mug_emu * bl, m.mu_mumu * bt, -m.mug_mumu * bl;
  return h;
}

Mat4d build_effective_mass_hamiltonian(const PhysicalParams& p) {
  const double omega = p.delta_m2 / (4.0 * p.e_nu);
  const double b11 = p.mu11 * p.mu_b * p.b_perp;
  const double b22 = p.mu22 * p.mu_b * p.b_perp;
  const double b12 = p.mu12 * p.mu_b * p.b_perp;
  Mat4d h;
  h << -omega, b11, 0, b12,
       b11, -omega, b12, 0,
       0, b12, omega, b22,
       b12, 0, b22, omega;
  return h;
}

namespace {

double half_atan_branch(double num, double den) {
  if (num == 0.0 && den == 0.0)
    throw std::domain_error("magnetic angle degenerate: numerator and denominator both zero");
  double theta = 0.5 * std::atan2(num, den);
  if (theta < 0) theta += constants::pi / 2;
  return theta;
}

}  // namespace

double magnetic_angle(const PhysicalParams& p) {
  const double b = p.mu_b * p.b_perp;
  const double omega = p.delta_m2 / (4.0 * p.e_nu);
  return half_atan_branch(p.mu12 * b, omega - 0.5 * (p.mu11 - p.mu22) * b);
}

double magnetic_angle(const DimensionlessParams& p) {
  return half_atan_branch(0.5 * p.omega_b_bar, p.omega_v_bar);
}

EigenFrequencies eigenfrequencies(const DimensionlessParams& p) {
  EigenFrequencies f;
  f.omega_b = p.omega_b_bar;
  f.omega_n = p.omega_n_bar();
  f.kappa = {(-f.omega_n + f.omega_b) / 2.0, (-f.omega_n - f.omega_b) / 2.0,
             (f.omega_n + f.omega_b) / 2.0, (f.omega_n - f.omega_b) / 2.0};
  return f;
}

Transforms transforms(double theta_b, double theta_nu) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Transforms t;
  t.t_s << 1, 1, 0, 0,
           1, -1, 0, 0,
           0, 0, 1, 1,
           0, 0, 1, -1;
  t.t_s *= inv_sqrt2;

  const double cb = std::cos(theta_b), sb = std::sin(theta_b);
  t.t_b << cb, 0, -sb, 0,
           0, cb, 0, sb,
           sb, 0, cb, 0,
           0, -sb, 0, cb;

  t.t_big_b = t.t_b * t.t_s;

  const double cn = std::cos(theta_nu), sn = std::sin(theta_nu);
  t.t_f << cn, 0, sn, 0,
           0, cn, 0, sn,
           -sn, 0, cn, 0,
           0, -sn, 0, cn;
  return t;
}

Transforms transforms(const DimensionlessParams& p) {
  return transforms(magnetic_angle(p), p.theta_nu);
}

namespace {

// flavour -> target similarity matrix X so that rho_target = X rho_f X^T
Mat4d flavour_to(BasisTag target, const Transforms& t) {
  switch (target) {
    case BasisTag::Flavour: return Mat4d::Identity();
    case BasisTag::Mass: return t.t_f.transpose();
    case BasisTag::BEigen: return t.t_big_b * t.t_f.transpose();
  }
  throw std::invalid_argument("unknown basis tag");
}

}  // namespace

DensityMatrix4 change_basis(const DensityMatrix4& rho, BasisTag to, double theta_b, double theta_nu) {
  const Transforms t = transforms(theta_b, theta_nu);
  const Mat4d from = flavour_to(rho.basis, t);
  const Mat4d dest = flavour_to(to, t);
  // rho_f = from^T rho from; rho_to = dest rho_f dest^T
  const Mat4d x = dest * from.transpose();
  DensityMatrix4 out;
  out.mat = x * rho.mat * x.transpose();
  out.basis = to;
  return out;
}

DensityMatrix4 change_basis(const DensityMatrix4& rho, BasisTag to, const DimensionlessParams& p) {
  return change_basis(rho, to, magnetic_angle(p), p.theta_nu);
}

}  // namespace nusf::core
