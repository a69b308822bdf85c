#pragma once

#include "nusf/types.hpp"

namespace nusf::core {

/// Vacuum Hamiltonian in the flavour basis, units eV:
/// omega * [[-c2,0,s2,0],[0,-c2,0,s2],[s2,0,c2,0],[0,s2,0,c2]]
/// with omega = delta_m2 / (4 E_nu).
Mat4d build_vacuum_hamiltonian(const PhysicalParams& p);

/// Matter interaction Hamiltonian, flavour basis, eV. Acts only on the
/// left-handed rows. Built for completeness; the propagator does not use it.
Mat4d build_matter_hamiltonian(const PhysicalParams& p);

/// Magnetic moments rotated from the mass to the flavour representation,
/// plus the gamma-suppressed longitudinal combinations. mug_* carries the
/// sign convention of the longitudinal entries: -(mu/gamma)_ll' equals the
/// positive moment combination.
struct FlavourMoments {
  double mu_ee, mu_emu, mu_mumu;     // in mu_B
  double mug_ee, mug_emu, mug_mumu;  // (mu/gamma)_ll' in mu_B
};
FlavourMoments flavour_moments(const PhysicalParams& p);

/// Magnetic interaction Hamiltonian in the flavour basis, eV.
/// drop_longitudinal zeroes the (mu/gamma) B_par entries; that is the
/// configuration used in the evolution (ultrarelativistic limit).
Mat4d build_magnetic_hamiltonian(const PhysicalParams& p, bool drop_longitudinal = false);

/// Effective Hamiltonian (vacuum + transverse magnetic) in the mass basis, eV.
Mat4d build_effective_mass_hamiltonian(const PhysicalParams& p);

/// Magnetic rotation angle theta_B = 1/2 arctan[mu12 B / (omega - (mu11-mu22)B/2)],
/// branch normalised to [0, pi/2). Throws std::domain_error when both the
/// numerator and denominator vanish.
double magnetic_angle(const PhysicalParams& p);
double magnetic_angle(const DimensionlessParams& p);

/// Energy levels of the equal-moments effective Hamiltonian in dimensionless
/// units. kappa is ordered E1,E2,E3,E4 with E_{1,2} = (-omega_n ± omega_b)/2
/// and E_{3,4} = (omega_n ± omega_b)/2.
struct EigenFrequencies {
  double omega_b;
  double omega_n;
  std::array<double, 4> kappa;
};
EigenFrequencies eigenfrequencies(const DimensionlessParams& p);

/// The two-step diagonalisation chain and the flavour<->mass rotation.
/// All four are real orthogonal; t_big_b = t_b * t_s diagonalises the
/// equal-moments mass-basis Hamiltonian with diagonal (E1,E2,E3,E4).
struct Transforms {
  Mat4d t_s;      // symmetric/antisymmetric spin combinations
  Mat4d t_b;      // theta_B rotation completing the diagonalisation
  Mat4d t_big_b;  // t_b * t_s
  Mat4d t_f;      // mass -> flavour operator map: O^f = t_f O^m t_f^T
};
Transforms transforms(double theta_b, double theta_nu);
Transforms transforms(const DimensionlessParams& p);

/// Basis change of a density matrix between Flavour/Mass/BEigen.
/// Density matrices transform like operators, so flavour -> mass applies
/// t_f^T (.) t_f and mass -> BEigen applies t_big_b (.) t_big_b^T.
DensityMatrix4 change_basis(const DensityMatrix4& rho, BasisTag to, const DimensionlessParams& p);
DensityMatrix4 change_basis(const DensityMatrix4& rho, BasisTag to, double theta_b, double theta_nu);

}  // namespace nusf::core
