#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "fockgdo/core/fock_state.hpp"

namespace fockgdo {

/// Function of the occupation number, evaluated lazily at integer n.
using DiagFn = std::function<cplx(long)>;

/// A finite sum of band terms acting on the truncated basis |0>, ..., |dim-1>.
///
/// Each term is stored by its matrix elements: a term with shift s maps
/// |n> to element(n) |n+s>. Terms built with `ladder` follow the usual
/// convention |n> -> diag(n) L(n,k) |n+s>, where L are the ladder factors
/// of a^k (s = -k) or a^dagger^k (s = +k); those factors are folded into
/// element(n) at construction.
///
/// Elements are exact at integer arguments in the untruncated space. The
/// truncation only enters through `apply`, which drops images at index
/// >= dim and accounts them as leak. Every term also records its `peak`:
/// the highest index the term visits above its input, so that callers can
/// restrict comparisons to columns whose whole path stays inside the
/// truncation.
class OperatorExpr {
 public:
  struct Term {
    int shift = 0;
    int peak = 0;
    DiagFn element;
  };

  explicit OperatorExpr(std::size_t domain_dim) : dim_(domain_dim) {}

  static OperatorExpr zero(std::size_t dim) { return OperatorExpr(dim); }
  static OperatorExpr identity(std::size_t dim);
  static OperatorExpr number(std::size_t dim);
  static OperatorExpr diagonal(std::size_t dim, DiagFn f);
  /// a^k.
  static OperatorExpr annihilation(std::size_t dim, int k = 1);
  /// (a^dagger)^k.
  static OperatorExpr creation(std::size_t dim, int k = 1);
  /// diag(n) L(n,|shift|) |n+shift>, with the diagonal evaluated at the input index.
  static OperatorExpr ladder(std::size_t dim, int shift, DiagFn diag);
  /// Raw band term with a given matrix-element function <n+shift|T|n>.
  static OperatorExpr band(std::size_t dim, int shift, DiagFn element);
  static OperatorExpr from_terms(std::size_t dim, std::vector<Term> terms);

  std::size_t domain_dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Largest upward excursion of any term. Columns n <= dim-1-max_peak() are interior.
  int max_peak() const;
  int max_abs_shift() const;

  /// <row|X|col>, exact in the untruncated space.
  cplx element(long row, long col) const;

  OperatorExpr scaled(cplx c) const;
  OperatorExpr operator+(const OperatorExpr& o) const;
  OperatorExpr operator-(const OperatorExpr& o) const;
  OperatorExpr operator-() const { return scaled(-1.0); }

 private:
  std::size_t dim_;
  std::vector<Term> terms_;
};

/// Image of an operator application and the squared mass dropped beyond dim-1.
struct Applied {
  FockState state;
  double leak = 0.0;
};

/// X|s>. Throws InputError on dimension mismatch and NumericalError when a
/// term element is non-finite at an index with nonzero amplitude.
Applied apply(const OperatorExpr& op, const FockState& s);

/// x * y (y acts first).
OperatorExpr compose(const OperatorExpr& x, const OperatorExpr& y);
OperatorExpr adjoint(const OperatorExpr& x);
/// xy - yx.
OperatorExpr commutator(const OperatorExpr& x, const OperatorExpr& y);

/// Sum of terms with equal shift; peaks combine by max.
OperatorExpr merged(const OperatorExpr& x);

/// ||X|s> - lambda|s>|, together with the leak of the application.
struct Residual {
  double norm = 0.0;
  double leak = 0.0;
};
Residual eigen_residual(const OperatorExpr& op, const FockState& s, cplx eigenvalue);

inline OperatorExpr operator*(const OperatorExpr& x, const OperatorExpr& y) { return compose(x, y); }

}  // namespace fockgdo
