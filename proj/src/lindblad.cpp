#include "nusf/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace nusf::lindblad {

namespace {

const Mat2 kSigma[3] = {
    (Mat2() << 0, 1, 1, 0).finished(),
    (Mat2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
    (Mat2() << 1, 0, 0, -1).finished(),
};

Mat2 pauli_expand(Complex r0, const Vec3c& r) {
  Mat2 q = r0 * Mat2::Identity();
  for (int i = 0; i < 3; ++i) q += r[i] * kSigma[i];
  return q;
}

}  // namespace

void DissipatorSpec::validate() const {
  if (beta < 0 || beta > constants::pi / 2) throw std::domain_error("beta outside [0, pi/2]");
  if (w2 < 0) throw std::domain_error("w2 must be >= 0");
}

Mat2 QuadrantState::minor_matrix() const { return pauli_expand(r0, r); }

PropagatorM::PropagatorM(double omega_b_bar, double beta, bool dissipation) {
  if (beta < 0 || beta > constants::pi / 2) throw std::domain_error("beta outside [0, pi/2]");
  const double c = std::cos(beta), s = std::sin(beta);
  m_ << 0, omega_b_bar, 0,
        -omega_b_bar, 0, 0,
        0, 0, 0;
  if (dissipation) {
    // damping = -(I - n n^T) for the unit coupling axis n = (s, 0, c)
    Eigen::Matrix3d damp;
    damp << -c * c, 0, s * c,
            0, -1, 0,
            s * c, 0, -s * s;
    m_ += damp;
  }
  Eigen::EigenSolver<Eigen::Matrix3d> es(m_);
  nu_ = es.eigenvalues();
  const double scale = std::max(1.0, nu_.cwiseAbs().maxCoeff());
  for (int i = 0; i < 3 && !degenerate_; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(nu_[i] - nu_[j]) < 1e-9 * scale) {
        degenerate_ = true;
        break;
      }
}

PropagatorM build_M(double omega_b_bar, double beta) {
  if (omega_b_bar < 0) throw std::domain_error("omega_b_bar must be >= 0");
  return {omega_b_bar, beta};
}

Eigen::Matrix3cd PropagatorM::constants(const Vec3c& r0) const {
  if (degenerate_) throw std::domain_error("Lagrange constants undefined for degenerate eigenvalues");
  const Vec3c b0 = r0;
  const Vec3c b1 = m_ * r0;
  const Vec3c b2 = m_ * b1;
  Eigen::Matrix3cd c;
  for (int k = 0; k < 3; ++k) {
    const int j = (k + 1) % 3, l = (k + 2) % 3;
    const Complex den = (nu_[k] - nu_[j]) * (nu_[k] - nu_[l]);
    c.col(k) = (b0 * (nu_[j] * nu_[l]) - b1 * (nu_[j] + nu_[l]) + b2) / den;
  }
  return c;
}

Vec3c PropagatorM::propagate(const Vec3c& r0, double tau) const {
  if (degenerate_) {
    const Eigen::Matrix3d e = (m_ * tau).exp();
    return e * r0;
  }
  const Eigen::Matrix3cd c = constants(r0);
  Vec3c r = Vec3c::Zero();
  for (int k = 0; k < 3; ++k) r += c.col(k) * std::exp(nu_[k] * tau);
  return r;
}

std::array<QuadrantState, 4> decompose_quadrants(const DensityMatrix4& rho_b) {
  if (rho_b.basis != BasisTag::BEigen)
    throw std::invalid_argument("quadrant decomposition requires the B eigenbasis");
  std::array<QuadrantState, 4> out;
  int idx = 0;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      const Mat2 q = rho_b.mat.block<2, 2>(2 * (a - 1), 2 * (b - 1));
      QuadrantState s;
      s.a = a;
      s.b = b;
      s.r0 = 0.5 * q.trace();
      for (int i = 0; i < 3; ++i) s.r[i] = 0.5 * (q * kSigma[i]).trace();
      out[idx++] = s;
    }
  return out;
}

DensityMatrix4 recompose_quadrants(const std::array<QuadrantState, 4>& q) {
  DensityMatrix4 rho;
  rho.basis = BasisTag::BEigen;
  for (const auto& s : q)
    rho.mat.block<2, 2>(2 * (s.a - 1), 2 * (s.b - 1)) = s.minor_matrix();
  return rho;
}

QuadrantState propagate_quadrant(const QuadrantState& q, const PropagatorM& m, double tau,
                                 double omega_n_bar) {
  if (tau < 0) throw std::domain_error("tau must be >= 0");
  QuadrantState out = q;
  out.r = m.propagate(q.r, tau);
  if (const int eps = q.epsilon(); eps != 0) {
    const Complex phase = std::exp(Complex(0, eps * omega_n_bar * tau));
    out.r0 *= phase;
    out.r *= phase;
  }
  return out;
}

Mat4d evolution_transform(const DimensionlessParams& p) {
  const core::Transforms t = core::transforms(p);
  Mat4d swap;
  swap << 0, 1, 0, 0,
          1, 0, 0, 0,
          0, 0, 0, 1,
          0, 0, 1, 0;
  return swap * t.t_big_b * t.t_f.transpose();
}

std::array<double, 4> evolution_levels(const DimensionlessParams& p) {
  const double wn = p.omega_n_bar(), wb = p.omega_b_bar;
  return {(-wn - wb) / 2.0, (-wn + wb) / 2.0, (wn - wb) / 2.0, (wn + wb) / 2.0};
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("tau grid is empty");
  if (std::abs(grid[0]) > 1e-15) throw std::invalid_argument("tau grid must start at 0");
  for (size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("tau grid must be strictly increasing");
}

DensityMatrix4 flavour_state(const Mat4& mat_e, const Mat4d& x) {
  DensityMatrix4 rho;
  rho.mat = x.transpose() * mat_e * x;
  rho.basis = BasisTag::Flavour;
  return rho;
}

}  // namespace

std::vector<DensityMatrix4> evolve(const DensityMatrix4& rho0, const DimensionlessParams& p,
                                   const DissipatorSpec& d, std::span<const double> tau_grid) {
  if (rho0.basis != BasisTag::Flavour)
    throw std::invalid_argument("evolve expects a flavour-basis initial state");
  check_grid(tau_grid);
  d.validate();

  const Mat4d x = evolution_transform(p);
  const Mat4 re0 = x * rho0.mat * x.transpose();
  const double wn = p.omega_n_bar();
  const PropagatorM m(p.omega_b_bar, d.beta, d.enabled());

  // quadrants of the initial state in the evolution basis
  QuadrantState q11, q22, q12;
  auto fill = [&](QuadrantState& q, int a, int b) {
    const Mat2 blk = re0.block<2, 2>(2 * (a - 1), 2 * (b - 1));
    q.a = a;
    q.b = b;
    q.r0 = 0.5 * blk.trace();
    for (int i = 0; i < 3; ++i) q.r[i] = 0.5 * (blk * kSigma[i]).trace();
  };
  fill(q11, 1, 1);
  fill(q22, 2, 2);
  fill(q12, 1, 2);

  std::vector<DensityMatrix4> out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    Mat4 re = Mat4::Zero();
    const QuadrantState p11 = propagate_quadrant(q11, m, tau, wn);
    const QuadrantState p22 = propagate_quadrant(q22, m, tau, wn);
    const QuadrantState p12 = propagate_quadrant(q12, m, tau, wn);
    // diagonal quadrants stay Hermitian: drop the numerical imaginary dust
    re.block<2, 2>(0, 0) = pauli_expand(p11.r0.real(), p11.r.unaryExpr([](Complex v) {
      return Complex(v.real(), 0.0);
    }));
    re.block<2, 2>(2, 2) = pauli_expand(p22.r0.real(), p22.r.unaryExpr([](Complex v) {
      return Complex(v.real(), 0.0);
    }));
    // careful: r1, r2 of a Hermitian minor are real but sigma_y rebuilds the
    // imaginary parts of the off-diagonal entries
    re.block<2, 2>(0, 2) = p12.minor_matrix();
    re.block<2, 2>(2, 0) = re.block<2, 2>(0, 2).adjoint();
    out.push_back(flavour_state(re, x));
  }
  return out;
}

namespace {

struct OracleRhs {
  Mat4 h = Mat4::Zero();
  Mat4 v = Mat4::Zero();
  bool dissipation = true;

  Mat4 operator()(const Mat4& rho) const {
    const Complex img(0, 1);
    Mat4 d = -img * (h * rho - rho * h);
    if (dissipation) d += -0.5 * (rho - v * rho * v);
    return d;
  }
};

}  // namespace

std::vector<DensityMatrix4> evolve_oracle(const DensityMatrix4& rho0, const DimensionlessParams& p,
                                          const DissipatorSpec& d, std::span<const double> tau_grid,
                                          double step) {
  if (rho0.basis != BasisTag::Flavour)
    throw std::invalid_argument("evolve_oracle expects a flavour-basis initial state");
  check_grid(tau_grid);
  if (step <= 0) throw std::domain_error("step must be positive");
  for (size_t i = 1; i < tau_grid.size(); ++i)
    if (const double gap = tau_grid[i] - tau_grid[i - 1]; gap > 0 && step > gap + 1e-15)
      throw std::domain_error("step exceeds the tau grid spacing");

  const Mat4d x = evolution_transform(p);
  OracleRhs rhs;
  const auto lv = evolution_levels(p);
  for (int i = 0; i < 4; ++i) rhs.h(i, i) = lv[i];
  const Eigen::Vector3d n = d.axis();
  Mat2 v2 = Mat2::Zero();
  for (int i = 0; i < 3; ++i) v2 += n[i] * kSigma[i];
  rhs.v.block<2, 2>(0, 0) = v2;
  rhs.v.block<2, 2>(2, 2) = v2;
  rhs.dissipation = d.enabled();

  Mat4 rho = x * rho0.mat * x.transpose();
  std::vector<DensityMatrix4> out;
  out.reserve(tau_grid.size());
  double t = 0.0;
  for (double target : tau_grid) {
    const double gap = target - t;
    if (gap > 1e-15) {
      const int n_steps = std::max(1, static_cast<int>(std::llround(gap / step)));
      const double h = gap / n_steps;
      for (int k = 0; k < n_steps; ++k) {
        const Mat4 k1 = rhs(rho);
        const Mat4 k2 = rhs(rho + 0.5 * h * k1);
        const Mat4 k3 = rhs(rho + 0.5 * h * k2);
        const Mat4 k4 = rhs(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t = target;
    }
    out.push_back(flavour_state(rho, x));
  }
  return out;
}

}  // namespace nusf::lindblad
