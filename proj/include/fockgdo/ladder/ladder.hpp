#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fockgdo/core/check.hpp"
#include "fockgdo/core/fock_state.hpp"
#include "fockgdo/core/operator_expr.hpp"

namespace fockgdo::ladder {

/// Number operator, lowering/raising generators and the induced structure
/// function F(n) = ||lowering |n>||^2 = <n|raising lowering|n>.
/// bottom is the lowest index of the representation space.
struct GdoTriple {
  OperatorExpr number_op;
  OperatorExpr lowering;
  OperatorExpr raising;
  std::function<double(long)> structure_fn;
  long bottom = 0;
};

/// Wraps explicit generators; structure_fn is read off the lowering operator.
GdoTriple make_triple(OperatorExpr number_op, OperatorExpr lowering, OperatorExpr raising, long bottom);

/// (M-N) C(N) / (sqrt(N+1) C(N+1)) a, so <n|A^-|n+1> = (M-n) C(n)/C(n+1).
/// Requires C(n) != 0 on [0, M].
OperatorExpr ladder_lowering_finite(std::span<const cplx> coeffs, int M, std::size_t dim);

/// (N-M) D(N) / (sqrt(N) D(N-1)) a^dagger, so <n|B^+|n-1> = (n-M) D(n)/D(n-1).
/// Requires D(n) != 0 on [M, coeffs.size()).
OperatorExpr ladder_raising_shifted(std::span<const cplx> coeffs, int M, std::size_t dim);

/// Both ladder forms of a state with coefficients C(n) on [0, coeffs.size()).
/// Each has eigenvalue 0 on the state.
struct GeneralForms {
  /// N - [C(N)/C(N-1)] sqrt(N) a^dagger
  OperatorExpr creation_form;
  /// a - C(N+1) sqrt(N+1) / C(N)
  OperatorExpr annihilation_form;
  /// [C(N)/C(N-1)] sqrt(N) a^dagger, the raising generator.
  OperatorExpr raising;
  /// n -> C(n+1) sqrt(n+1) / C(n), the diagonal a|psi> reduces to.
  DiagFn a_target;
};
GeneralForms ladder_general(std::span<const cplx> coeffs, std::size_t dim);

/// Generators built from state coefficients. Lowering and raising are
/// adjoints of each other by construction.
GdoTriple finite_gdo(std::span<const cplx> coeffs, int M, std::size_t dim);
GdoTriple shifted_gdo(std::span<const cplx> coeffs, int M, std::size_t dim);
GdoTriple general_gdo(std::span<const cplx> coeffs, std::size_t dim);
/// (N, a, a^dagger), F(n) = n.
GdoTriple harmonic_gdo(std::size_t dim);

/// F(n) for n in [n_lo, n_hi], each as the squared norm of lowering|n>
/// (including any mass pushed beyond the truncation).
std::vector<double> structure_function(const GdoTriple& t, long n_lo, long n_hi);

/// Closed form (M-n+1)^2 |C(n-1)/C(n)|^2, zero when the numerator vanishes.
double finite_structure_closed_form(std::span<const cplx> coeffs, int M, long n);
/// (n-M)^2 |D(n)/D(n-1)|^2.
double shifted_structure_closed_form(std::span<const cplx> coeffs, int M, long n);
/// n^2 |C(n)/C(n-1)|^2.
double general_structure_closed_form(std::span<const cplx> coeffs, long n);

struct AxiomTolerances {
  double residual = 1e-12;
};

/// Commutators [N, A^pm] -/+ A^pm, off-diagonal mass of A^+A^- and A^-A^+,
/// A^+A^- = F(N), A^-A^+ = F(N+1), F(bottom) = 0 and F >= 0. Only columns
/// whose full path stays inside the truncation are compared. Deviations
/// are relative to max(1, |element|).
std::vector<Check> verify_gdo_axioms(const GdoTriple& t, std::size_t dim, const AxiomTolerances& tol = {},
                                     const std::string& paper_eq = "Eq. 11");

/// ||op s - lambda s|| and the leak of the application.
Check verify_eigen_relation(const OperatorExpr& op, const FockState& s, cplx eigenvalue, std::string name,
                            std::string paper_eq, double tol = 1e-10, double leak_tol = 1e-10);

}  // namespace fockgdo::ladder
