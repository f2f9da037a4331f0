#pragma once

#include <complex>
#include <cstddef>
#include <optional>

#include "fockgdo/core/fock_state.hpp"
#include "fockgdo/core/operator_expr.hpp"

/// Constructors for the one-photon states. Each returns a normalized
/// FockState on an explicit truncation. Infinite-support states check the
/// analytic tail beyond dim against kTailTolerance and throw
/// TruncationError instead of guessing a truncation.
///
/// norm_constant is the factor applied to the family's unnormalized
/// sequence (documented per constructor) to reach unit norm.
namespace fockgdo::states {

inline constexpr double kTailTolerance = 1e-12;
inline constexpr double kIntermediateTailTolerance = 1e-10;

/// Parameter bundle used by the family registry and the CLI. Constructors
/// below take their arguments explicitly; this struct only carries them.
struct StateParams {
  std::optional<double> eta;
  std::optional<int> M;
  std::optional<double> L;
  std::optional<double> gamma;
  std::optional<double> theta;
  std::optional<double> theta0;
  std::optional<int> m;
  std::optional<cplx> Y;
  std::optional<cplx> alpha;
  std::optional<double> r;
  std::optional<Parity> parity;
};

/// theta_m = theta0 + 2 pi m / (s + 1), m in [0, s].
struct PhaseGrid {
  double theta0 = 0.0;
  int s = 0;
  int m = 0;

  double theta() const;
};

/// x (x-1) ... (x-n+1) / n!, evaluated as the literal product for real x.
double generalized_binomial(double x, int n);

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!). Unnormalized sequence: alpha^n / sqrt(n!).
FockState coherent(cplx alpha, std::size_t dim);

/// [C(M,n) eta^n (1-eta)^(M-n)]^(1/2), n <= M.
FockState binomial(double eta, int M, std::size_t dim);

/// [C(L eta, n) C(L (1-eta), M-n) / C(L, M)]^(1/2), generalized binomials as literal products.
FockState hypergeometric(double L, double eta, int M, std::size_t dim);

/// Polya state: running products of [eta + (k-1) gamma], [1-eta + (k-1) gamma], [1 + (k-1) gamma].
FockState polya(double eta, double gamma, int M, std::size_t dim);

/// C(M,n)^(-1/2) e^{i n theta}, renormalized numerically. norm_constant = (sum_n 1/C(M,n))^(-1/2).
FockState reciprocal_binomial(double theta, int M, std::size_t dim);

/// (M+1)^(-1/2) e^{i n theta_m}. Requires grid.s == M.
FockState pegg_barnett_phase(const PhaseGrid& grid, int M, std::size_t dim);
/// Same state at an explicit phase (no grid constraint).
FockState pegg_barnett_phase_at(double theta, int M, std::size_t dim);

/// [(1-|Y|)/(1-|Y|^(M+1))]^(1/2) Y^(n/2), principal branch. Unnormalized sequence: Y^(n/2).
FockState generalized_geometric(cplx Y, int M, std::size_t dim);

/// eta^(1/2) (1-eta)^(n/2).
FockState geometric(double eta, std::size_t dim);

/// (1-eta)^(M/2) C(M+n-1, n)^(1/2) eta^(n/2), M >= 1.
FockState negative_binomial(double eta, int M, std::size_t dim);

/// [C(n,M) eta^(M+1) (1-eta)^(n-M)]^(1/2) for n >= M.
FockState new_negative_binomial(double eta, int M, std::size_t dim);

/// e^{-|alpha|^2/2} alpha^n e^{-i theta n(n-1)} / sqrt(n!).
FockState kerr(cplx alpha, double theta, std::size_t dim);

/// N_M (a^dagger)^M |base>, expanded as N_M C(n-M) sqrt(n!/(n-M)!).
/// norm_constant = N_M relative to the (normalized) base.
FockState photon_add(const FockState& base, int M);

struct IntermediateParams {
  double eta = 0.5;
  cplx alpha_eig{};
  DiagFn f;
};

/// Solves (sqrt(eta) N + sqrt(1-eta) f(N) a)|s> = alpha|s> by forward
/// recursion from C_0 = 1. The tail beyond dim is estimated by continuing
/// the recursion over a finite horizon; a non-normalizable or
/// poorly-truncated sequence throws TruncationError.
FockState intermediate_nlcs(const IntermediateParams& p, std::size_t dim);

/// Unnormalized recursion output C_0 .. C_{count-1} (C_0 = 1).
std::vector<cplx> intermediate_sequence(const IntermediateParams& p, std::size_t count);

}  // namespace fockgdo::states
