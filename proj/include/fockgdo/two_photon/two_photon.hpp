#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fockgdo/core/check.hpp"
#include "fockgdo/core/fock_state.hpp"
#include "fockgdo/core/operator_expr.hpp"
#include "fockgdo/ladder/ladder.hpp"

/// su(1,1) on the even (j=0) and odd (j=1) Fock sectors. Sector index n
/// stands for the full-space level 2n+j.
namespace fockgdo::two_photon {

inline constexpr double kTailTolerance = 1e-12;

struct Su11Rep {
  int parity_j = 0;
  double bargmann_k = 0.25;
  OperatorExpr K_plus;
  OperatorExpr K_minus;
  OperatorExpr K_zero;
  OperatorExpr sector_number_op;
};

/// Sector operators: K+ ||n> = sqrt((n+1)(n+j+1/2)) ||n+1>,
/// K- ||n> = sqrt(n(n+j-1/2)) ||n-1>, K0 = n + j/2 + 1/4, N_j = K0 - k.
Su11Rep su11_sector(int j, std::size_t sector_dim);

/// a^dagger^2/2, a^2/2 and N/2 + 1/4 on the full truncated space.
struct FullSpaceSu11 {
  OperatorExpr K_plus;
  OperatorExpr K_minus;
  OperatorExpr K_zero;
};
FullSpaceSu11 su11_full(std::size_t dim);

/// Number of sector levels 2n+j below dim.
std::size_t sector_dim(std::size_t full_dim, int j);

/// A state expressed on the sector basis of S_j, plus what is needed to map it back.
struct SectorState {
  FockState state;
  int j = 0;
  std::size_t full_dim = 0;
};

/// amplitudes[n] = full amplitude at 2n+j. Requires parity even or odd.
SectorState sector_embed(const FockState& s);
FockState sector_unembed(const SectorState& s);

/// (cosh r)^{-1/2} sum sqrt((2n)!) (e^{i theta} tanh r / 2)^n / n! |2n>.
FockState squeezed_vacuum(double r, double theta, std::size_t dim);
/// (cosh r)^{-3/2} sum sqrt((2n+1)!) (e^{i theta} tanh r / 2)^n / n! |2n+1>.
FockState squeezed_first_excited(double r, double theta, std::size_t dim);
/// cosh|alpha|^2 (even) or sinh|alpha|^2 (odd) normalized superpositions of alpha^k/sqrt(k!).
FockState even_odd_coherent(cplx alpha, Parity parity, std::size_t dim);

/// Ladder forms of a sector state with coefficients C_j(n). Both have eigenvalue 0.
struct TwoPhotonForms {
  /// N_j - g(N_j) K+, g(n) = sqrt(n) C(n) / (C(n-1) sqrt(n -/+ 1/2)).
  OperatorExpr creation_form;
  /// C(N_j+1) sqrt(N_j + j + 1/2) (N_j+1) / C(N_j) - sqrt(N_j+1) K-.
  OperatorExpr annihilation_form;
  /// g(N_j) K+, the raising generator.
  OperatorExpr raising;
};
TwoPhotonForms two_photon_ladder(std::span<const cplx> sector_coeffs, int j);

/// (N_j, raising^dagger, raising) on the sector, F(n) = n^2 |C(n)/C(n-1)|^2.
ladder::GdoTriple two_photon_gdo(std::span<const cplx> sector_coeffs, int j);
double two_photon_structure_closed_form(std::span<const cplx> sector_coeffs, long n);

/// su(1,1) commutators and Casimir K0^2 - (K+K- + K-K+)/2 = k(k-1) on interior indices.
std::vector<Check> verify_su11(const Su11Rep& rep, double tol = 1e-12);
/// Full-space a^dagger^2/2, a^2/2, N/2+1/4 restricted to S_j against the sector actions.
Check verify_embedding(int j, std::size_t full_dim, double tol = 1e-12);

/// exp(X) v as the series sum_k X^k v / k!, for X a pure raising or pure
/// lowering band operator (nilpotent on the truncation). leak collects the
/// mass the series pushes beyond dim.
Applied apply_exponential_series(const OperatorExpr& x, const FockState& v);

/// S(xi)|seed> for seed 0 (vacuum) or 1 (first excited), built three ways:
/// dense exponential of xi K+ - xi^* K-, the disentangled product, and the
/// closed-form expansion. Reports pairwise infidelities.
std::vector<Check> verify_disentangling(double r, double theta, std::size_t dim, int seed = 0,
                                        double infidelity_tol = 1e-8, double leak_tol = 1e-10);

}  // namespace fockgdo::two_photon
