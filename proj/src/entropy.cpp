#include "nusf/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace nusf::entropy {

namespace {

constexpr double kEigClamp = 1e-14;

double xlog2x(double x) { return (x < kEigClamp) ? 0.0 : x * std::log2(x); }

void require_flavour(const DensityMatrix4& rho, const char* op) {
  if (rho.basis != BasisTag::Flavour)
    throw std::invalid_argument(std::string(op) + " requires a flavour-basis density matrix");
}

// eigenvalues of a 2x2 Hermitian block [[a, z], [conj(z), d]]
std::array<double, 2> two_level_pair(double a, double d, Complex z) {
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(z));
  return {(a + d + disc) / 2.0, (a + d - disc) / 2.0};
}

std::array<double, 4> sorted_desc(std::array<double, 4> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// matrix element rho^{(nu nu')}_{sigma sigma'}: spin label 1 = R (offset 0),
// 0 = L (offset 1) in the canonical ordering
Complex elem(const Mat4& m, int nu, int nup, int s, int sp) {
  return m(2 * nu + (s ? 0 : 1), 2 * nup + (sp ? 0 : 1));
}

// the sigma_x-block coefficients rho^{(nu nu')}_{±±}
Complex pm_block(const Mat4& m, int nu, int nup, int sign) {
  return 0.5 * (elem(m, nu, nup, 1, 1) + elem(m, nu, nup, 0, 0) +
                double(sign) * (elem(m, nu, nup, 1, 0) + elem(m, nu, nup, 0, 1)));
}

std::array<double, 4> full_spectrum(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> lam;
  for (int i = 0; i < 4; ++i) lam[i] = es.eigenvalues()[i];
  return sorted_desc(lam);
}

}  // namespace

MeasurementSet MeasurementSet::bloch_grid(int resolution) {
  if (resolution < 2) throw std::invalid_argument("bloch grid resolution must be >= 2");
  MeasurementSet ms;
  ms.mode = Mode::BlochGrid;
  ms.resolution = resolution;
  return ms;
}

std::vector<std::pair<Mat2, Mat2>> MeasurementSet::projectors() const {
  std::vector<std::pair<Mat2, Mat2>> out;
  auto pair_for_axis = [](double nx, double ny, double nz) {
    Mat2 ns;
    ns << nz, Complex(nx, -ny), Complex(nx, ny), -nz;
    const Mat2 pp = 0.5 * (Mat2::Identity() + ns);
    const Mat2 pm = 0.5 * (Mat2::Identity() - ns);
    return std::make_pair(pp, pm);
  };
  if (mode == Mode::Paper) {
    out.push_back(pair_for_axis(0, 0, 1));  // sigma_z: |1>, |0>
    out.push_back(pair_for_axis(1, 0, 0));  // sigma_x: |±>
    return out;
  }
  // antipodal axes give the same pair, so a hemisphere suffices;
  // polar grid over [0, pi/2] keeps both the z and x axes on the grid
  const int n_azimuth = resolution;
  const int n_polar = std::max(2, resolution / 2);
  for (int j = 0; j < n_polar; ++j) {
    const double theta = j * (constants::pi / 2) / (n_polar - 1);
    const int n_phi = (j == 0) ? 1 : n_azimuth;  // pole: single axis
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * constants::pi * k / n_azimuth;
      out.push_back(pair_for_axis(std::sin(theta) * std::cos(phi),
                                  std::sin(theta) * std::sin(phi), std::cos(theta)));
    }
  }
  return out;
}

Mat2 reduce_flavour(const DensityMatrix4& rho) {
  require_flavour(rho, "reduce_flavour");
  const Mat4& m = rho.mat;
  Mat2 r;
  r << m(0, 0) + m(1, 1), m(0, 2) + m(1, 3),
       m(2, 0) + m(3, 1), m(2, 2) + m(3, 3);
  return r;
}

Mat2 reduce_spin(const DensityMatrix4& rho) {
  require_flavour(rho, "reduce_spin");
  const Mat4& m = rho.mat;
  Mat2 r;
  r << m(0, 0) + m(2, 2), m(0, 1) + m(2, 3),
       m(1, 0) + m(3, 2), m(1, 1) + m(3, 3);
  return r;
}

DensityMatrix4 project_R(const DensityMatrix4& rho) {
  require_flavour(rho, "project_R");
  DensityMatrix4 out = rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if ((i % 2) != (j % 2)) out.mat(i, j) = 0.0;  // helicity-flipping entries
  return out;
}

DensityMatrix4 project_Q(const DensityMatrix4& rho) {
  require_flavour(rho, "project_Q");
  DensityMatrix4 out;
  out.basis = BasisTag::Flavour;
  for (int nu = 0; nu < 2; ++nu)
    for (int nup = 0; nup < 2; ++nup) {
      const Complex bp = pm_block(rho.mat, nu, nup, +1);
      const Complex bm = pm_block(rho.mat, nu, nup, -1);
      // |+><+| and |-><-| in the (R, L) ordering
      out.mat(2 * nu, 2 * nup) = 0.5 * (bp + bm);
      out.mat(2 * nu + 1, 2 * nup + 1) = 0.5 * (bp + bm);
      out.mat(2 * nu, 2 * nup + 1) = 0.5 * (bp - bm);
      out.mat(2 * nu + 1, 2 * nup) = 0.5 * (bp - bm);
    }
  return out;
}

double vn_entropy(const Eigen::MatrixXcd& m) {
  if (std::abs(m.trace().real() - 1.0) > 1e-8 || std::abs(m.trace().imag()) > 1e-8)
    throw std::domain_error("vn_entropy: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) s -= xlog2x(es.eigenvalues()[i]);
  return s;
}

double entropy_bits(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double lam : eigenvalues) s -= xlog2x(lam);
  return s;
}

double binary_entropy(double x) { return -xlog2x(x) - xlog2x(1.0 - x); }

std::array<double, 2> closed_form_lam_nu(const DensityMatrix4& rho) {
  const Mat2 r = reduce_flavour(rho);
  return two_level_pair(r(0, 0).real(), r(1, 1).real(), r(0, 1));
}

std::array<double, 2> closed_form_lam_sigma(const DensityMatrix4& rho) {
  const Mat2 r = reduce_spin(rho);
  return two_level_pair(r(0, 0).real(), r(1, 1).real(), r(0, 1));
}

std::array<double, 4> closed_form_lam_r(const DensityMatrix4& rho) {
  require_flavour(rho, "closed_form_lam_r");
  const Mat4& m = rho.mat;
  const auto hi = two_level_pair(m(0, 0).real(), m(2, 2).real(), m(0, 2));  // spin 1 block
  const auto lo = two_level_pair(m(1, 1).real(), m(3, 3).real(), m(1, 3));  // spin 0 block
  return sorted_desc({hi[0], hi[1], lo[0], lo[1]});
}

std::array<double, 4> closed_form_lam_q(const DensityMatrix4& rho) {
  require_flavour(rho, "closed_form_lam_q");
  const Mat4& m = rho.mat;
  const auto plus = two_level_pair(pm_block(m, 0, 0, +1).real(), pm_block(m, 1, 1, +1).real(),
                                   pm_block(m, 0, 1, +1));
  const auto minus = two_level_pair(pm_block(m, 0, 0, -1).real(), pm_block(m, 1, 1, -1).real(),
                                    pm_block(m, 0, 1, -1));
  return sorted_desc({plus[0], plus[1], minus[0], minus[1]});
}

ConditionalEntropies conditional_entropies(const DensityMatrix4& rho) {
  require_flavour(rho, "conditional_entropies");
  const double s_nu = entropy_bits(closed_form_lam_nu(rho));
  const double s_full = entropy_bits(full_spectrum(rho.mat));
  return {s_full - s_nu, entropy_bits(closed_form_lam_r(rho)) - s_nu,
          entropy_bits(closed_form_lam_q(rho)) - s_nu};
}

namespace {

// spin operator lifted to the full space: flavour is the major index, so
// I_nu (x) op is block-diagonal
Mat4 lift_spin(const Mat2& op) {
  Mat4 full = Mat4::Zero();
  full.block<2, 2>(0, 0) = op;
  full.block<2, 2>(2, 2) = op;
  return full;
}

// generic I(X, nu) for one projective spin measurement on rho
double measurement_information(const DensityMatrix4& rho, const Mat2& pp, const Mat2& pm,
                               double s_nu) {
  const Mat4 proj_p = lift_spin(pp);
  const Mat4 proj_m = lift_spin(pm);
  const Mat4 post = proj_p * rho.mat * proj_p + proj_m * rho.mat * proj_m;
  const double p_plus = (proj_p * rho.mat).trace().real();
  const std::array<double, 2> outcome{p_plus, 1.0 - p_plus};
  return entropy_bits(outcome) + s_nu - entropy_bits(full_spectrum(post));
}

}  // namespace

MutualInformations mutual_informations(const DensityMatrix4& rho) {
  require_flavour(rho, "mutual_informations");
  const Mat4& m = rho.mat;
  const double s_nu = entropy_bits(closed_form_lam_nu(rho));
  const double s_sigma = entropy_bits(closed_form_lam_sigma(rho));
  const double s_full = entropy_bits(full_spectrum(m));

  const double p_z = (m(0, 0) + m(2, 2)).real();
  const double s_sigma_z = binary_entropy(p_z);
  const double p_x = (pm_block(m, 0, 0, +1) + pm_block(m, 1, 1, +1)).real();
  const double s_sigma_x = binary_entropy(p_x);

  MutualInformations mi;
  mi.sigma_nu = s_sigma + s_nu - s_full;
  mi.sigmaz_nu = s_sigma_z - (entropy_bits(closed_form_lam_r(rho)) - s_nu);
  mi.sigmax_nu = s_sigma_x - (entropy_bits(closed_form_lam_q(rho)) - s_nu);
  return mi;
}

double classical_correlation(const DensityMatrix4& rho, const MeasurementSet& ms) {
  if (ms.mode == MeasurementSet::Mode::Paper) {
    const MutualInformations mi = mutual_informations(rho);
    return std::max(mi.sigmaz_nu, mi.sigmax_nu);
  }
  const auto pairs = ms.projectors();
  if (pairs.empty()) throw std::invalid_argument("empty measurement set");
  const double s_nu = entropy_bits(closed_form_lam_nu(rho));
  double best = -1e300;
  for (const auto& [pp, pm] : pairs)
    best = std::max(best, measurement_information(rho, pp, pm, s_nu));
  return best;
}

double discord(const DensityMatrix4& rho, const MeasurementSet& ms) {
  const MutualInformations mi = mutual_informations(rho);
  return mi.sigma_nu - classical_correlation(rho, ms);
}

EurTerms eur_terms(const DensityMatrix4& rho, const MeasurementSet& ms) {
  const ConditionalEntropies ce = conditional_entropies(rho);
  const double j = classical_correlation(rho, ms);
  const double d = mutual_informations(rho).sigma_nu - j;
  EurTerms t;
  t.lhs = ce.r_given_nu + ce.q_given_nu;
  t.rhs = 1.0 + ce.sigma_given_nu + std::max(0.0, d - j);
  t.d_eur = t.lhs - t.rhs;
  return t;
}

namespace {

EntropyReport analyze_impl(const DensityMatrix4& rho, const DensityMatrix4& rho_q, double tau,
                           const MeasurementSet& ms) {
  require_flavour(rho, "analyze");
  require_flavour(rho_q, "analyze");
  EntropyReport r;
  r.tau = tau;
  r.lam = full_spectrum(rho.mat);
  r.lam_r = closed_form_lam_r(rho);
  r.lam_q = closed_form_lam_q(rho_q);
  r.lam_nu = closed_form_lam_nu(rho);
  r.lam_sigma = closed_form_lam_sigma(rho);

  r.s_full = entropy_bits(r.lam);
  r.s_nu = entropy_bits(r.lam_nu);
  r.s_sigma = entropy_bits(r.lam_sigma);
  r.s_rnu = entropy_bits(r.lam_r);
  r.s_qnu = entropy_bits(r.lam_q);

  r.s_sigma_given_nu = r.s_full - r.s_nu;
  r.s_r_given_nu = r.s_rnu - r.s_nu;
  const double s_nu_q = entropy_bits(closed_form_lam_nu(rho_q));
  r.s_q_given_nu = r.s_qnu - s_nu_q;

  const Mat4& m = rho.mat;
  r.i_sigma_nu = r.s_sigma + r.s_nu - r.s_full;
  r.i_sigmaz_nu = binary_entropy((m(0, 0) + m(2, 2)).real()) - r.s_r_given_nu;
  const Mat4& mq = rho_q.mat;
  r.i_sigmax_nu =
      binary_entropy((pm_block(mq, 0, 0, +1) + pm_block(mq, 1, 1, +1)).real()) - r.s_q_given_nu;

  if (ms.mode == MeasurementSet::Mode::Paper) {
    r.j_classical = std::max(r.i_sigmaz_nu, r.i_sigmax_nu);
  } else {
    r.j_classical = classical_correlation(rho, ms);
  }
  r.d_discord = r.i_sigma_nu - r.j_classical;
  r.eur_lhs = r.s_r_given_nu + r.s_q_given_nu;
  r.eur_rhs = 1.0 + r.s_sigma_given_nu + std::max(0.0, r.d_discord - r.j_classical);
  r.d_eur = r.eur_lhs - r.eur_rhs;
  return r;
}

}  // namespace

EntropyReport analyze(const DensityMatrix4& rho, double tau, const MeasurementSet& ms) {
  return analyze_impl(rho, rho, tau, ms);
}

EntropyReport analyze_sequential(const DensityMatrix4& rho, const DensityMatrix4& rho_for_q,
                                 double tau, const MeasurementSet& ms) {
  return analyze_impl(rho, rho_for_q, tau, ms);
}

EntropyReport initial_report(const std::array<double, 4>& a) {
  double sum = 0.0;
  for (double w : a) {
    if (w < -1e-12) throw std::domain_error("mixture weight below zero");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::domain_error("mixture weights must sum to 1");

  // lambda ordering of the initial diagonal state: (a3, a1, a4, a2)
  const std::array<double, 4> lam{a[2], a[0], a[3], a[1]};
  const double p_nu = lam[0] + lam[1];
  const double p_sigma = lam[0] + lam[2];
  const double s0 = entropy_bits(lam);

  EntropyReport r;
  r.tau = 0.0;
  r.lam = sorted_desc(lam);
  r.lam_r = r.lam;
  r.lam_q = sorted_desc({p_nu / 2, p_nu / 2, (1.0 - p_nu) / 2, (1.0 - p_nu) / 2});
  r.lam_nu = {std::max(p_nu, 1 - p_nu), std::min(p_nu, 1 - p_nu)};
  r.lam_sigma = {std::max(p_sigma, 1 - p_sigma), std::min(p_sigma, 1 - p_sigma)};
  r.s_full = s0;
  r.s_nu = binary_entropy(p_nu);
  r.s_sigma = binary_entropy(p_sigma);
  r.s_rnu = s0;
  r.s_qnu = 1.0 + binary_entropy(p_nu);
  r.s_sigma_given_nu = s0 - r.s_nu;
  r.s_r_given_nu = s0 - r.s_nu;
  r.s_q_given_nu = 1.0;
  r.i_sigma_nu = r.s_sigma + r.s_nu - s0;
  r.i_sigmaz_nu = r.i_sigma_nu;
  r.i_sigmax_nu = 0.0;
  r.j_classical = r.i_sigmaz_nu;
  r.d_discord = 0.0;
  r.eur_lhs = r.s_r_given_nu + 1.0;
  r.eur_rhs = 1.0 + r.s_sigma_given_nu;
  r.d_eur = 0.0;
  return r;
}

}  // namespace nusf::entropy
