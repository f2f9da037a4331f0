#include "fockgdo/ladder/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fockgdo/core/dense.hpp"
#include "fockgdo/core/format.hpp"
#include "fockgdo/error.hpp"

namespace fockgdo::ladder {

namespace {

using Coeffs = std::vector<cplx>;

cplx at(const Coeffs& c, long n) {
  if (n < 0 || n >= static_cast<long>(c.size())) return {};
  return c[static_cast<std::size_t>(n)];
}

void require_nonzero(const Coeffs& c, long lo, long hi, const char* what) {
  for (long n = lo; n <= hi; ++n)
    if (at(c, n) == cplx{})
      throw InputError(std::string(what) + ": coefficient is zero at n=" + std::to_string(n) +
                       " (generators need nonzero coefficients on the support)");
}

double rel(cplx dev, cplx ref) { return std::abs(dev) / std::max(1.0, std::abs(ref)); }

std::set<int> shifts_of(const OperatorExpr& x) {
  std::set<int> s;
  for (const auto& t : x.terms()) s.insert(t.shift);
  return s;
}

long interior_top(const OperatorExpr& x, std::size_t dim) {
  return static_cast<long>(dim) - 1 - x.max_peak();
}

// max over interior columns of |X(row, n)| / max(1, |ref(row, n)|).
double max_rel_entry(const OperatorExpr& x, const OperatorExpr& ref, long top) {
  std::set<int> shifts = shifts_of(x);
  for (int s : shifts_of(ref)) shifts.insert(s);
  double worst = 0.0;
  for (long n = 0; n <= top; ++n)
    for (int s : shifts) {
      const long row = n + s;
      if (row < 0) continue;
      worst = std::max(worst, rel(x.element(row, n), ref.element(row, n)));
    }
  return worst;
}

}  // namespace

GdoTriple make_triple(OperatorExpr number_op, OperatorExpr lowering, OperatorExpr raising, long bottom) {
  const OperatorExpr low = merged(lowering);
  auto fn = [low](long n) -> double {
    if (n < 0) return 0.0;
    double f = 0.0;
    for (const auto& t : low.terms()) {
      if (n + t.shift < 0) continue;
      f += std::norm(t.element(n));
    }
    return f;
  };
  return GdoTriple{std::move(number_op), std::move(lowering), std::move(raising), fn, bottom};
}

OperatorExpr ladder_lowering_finite(std::span<const cplx> coeffs, int M, std::size_t dim) {
  if (M < 0) throw InputError("M must be >= 0");
  Coeffs c(coeffs.begin(), coeffs.end());
  require_nonzero(c, 0, M, "finite-state lowering generator");
  // Column k = n+1 maps to row n. The diagonal is evaluated at the output
  // index n, numerator first.
  return OperatorExpr::band(dim, -1, [c, M](long k) -> cplx {
    const long n = k - 1;
    if (n < 0) return {};
    const cplx num = static_cast<double>(M - n) * at(c, n);
    if (num == cplx{}) return {};
    const double sq = std::sqrt(static_cast<double>(n + 1));
    const cplx diag = num / (sq * at(c, n + 1));
    return diag * sq;
  });
}

OperatorExpr ladder_raising_shifted(std::span<const cplx> coeffs, int M, std::size_t dim) {
  if (M < 0) throw InputError("M must be >= 0");
  Coeffs c(coeffs.begin(), coeffs.end());
  require_nonzero(c, M, static_cast<long>(c.size()) - 1, "shifted-state raising generator");
  return OperatorExpr::band(dim, 1, [c, M](long k) -> cplx {
    const long n = k + 1;
    const cplx num = static_cast<double>(n - M) * at(c, n);
    if (num == cplx{}) return {};
    const double sq = std::sqrt(static_cast<double>(n));
    const cplx diag = num / (sq * at(c, n - 1));
    return diag * sq;
  });
}

GeneralForms ladder_general(std::span<const cplx> coeffs, std::size_t dim) {
  Coeffs c(coeffs.begin(), coeffs.end());
  require_nonzero(c, 0, static_cast<long>(c.size()) - 1, "general-state ladder");
  OperatorExpr raising = OperatorExpr::band(dim, 1, [c](long k) -> cplx {
    const long n = k + 1;
    const cplx num = at(c, n);
    if (num == cplx{}) return {};
    const double sq = std::sqrt(static_cast<double>(n));
    return num / at(c, n - 1) * sq * sq;
  });
  DiagFn target = [c](long n) -> cplx {
    const cplx num = at(c, n + 1);
    if (num == cplx{}) return {};
    return num * std::sqrt(static_cast<double>(n + 1)) / at(c, n);
  };
  OperatorExpr creation_form = OperatorExpr::number(dim) - raising;
  OperatorExpr annihilation_form = OperatorExpr::annihilation(dim) - OperatorExpr::diagonal(dim, target);
  return GeneralForms{std::move(creation_form), std::move(annihilation_form), std::move(raising), std::move(target)};
}

GdoTriple finite_gdo(std::span<const cplx> coeffs, int M, std::size_t dim) {
  OperatorExpr low = ladder_lowering_finite(coeffs, M, dim);
  OperatorExpr up = adjoint(low);
  return make_triple(OperatorExpr::number(dim), std::move(low), std::move(up), 0);
}

GdoTriple shifted_gdo(std::span<const cplx> coeffs, int M, std::size_t dim) {
  OperatorExpr up = ladder_raising_shifted(coeffs, M, dim);
  OperatorExpr low = adjoint(up);
  return make_triple(OperatorExpr::number(dim), std::move(low), std::move(up), M);
}

GdoTriple general_gdo(std::span<const cplx> coeffs, std::size_t dim) {
  OperatorExpr up = ladder_general(coeffs, dim).raising;
  OperatorExpr low = adjoint(up);
  return make_triple(OperatorExpr::number(dim), std::move(low), std::move(up), 0);
}

GdoTriple harmonic_gdo(std::size_t dim) {
  return make_triple(OperatorExpr::number(dim), OperatorExpr::annihilation(dim), OperatorExpr::creation(dim), 0);
}

std::vector<double> structure_function(const GdoTriple& t, long n_lo, long n_hi) {
  const std::size_t dim = t.lowering.domain_dim();
  std::vector<double> out;
  for (long n = n_lo; n <= n_hi; ++n) {
    if (n < 0 || n >= static_cast<long>(dim)) throw InputError("structure_function: n=" + std::to_string(n) +
                                                                " outside the truncation [0," +
                                                                std::to_string(dim - 1) + "]");
    const Applied img = apply(t.lowering, FockState::basis(dim, static_cast<std::size_t>(n)));
    const double nn = img.state.norm();
    out.push_back(nn * nn + img.leak);
  }
  return out;
}

double finite_structure_closed_form(std::span<const cplx> coeffs, int M, long n) {
  Coeffs c(coeffs.begin(), coeffs.end());
  const double p = static_cast<double>(M - n + 1);
  const cplx num = p * at(c, n - 1);
  if (num == cplx{}) return 0.0;
  return std::norm(num / at(c, n));
}

double shifted_structure_closed_form(std::span<const cplx> coeffs, int M, long n) {
  Coeffs c(coeffs.begin(), coeffs.end());
  const cplx num = static_cast<double>(n - M) * at(c, n);
  if (num == cplx{}) return 0.0;
  return std::norm(num / at(c, n - 1));
}

double general_structure_closed_form(std::span<const cplx> coeffs, long n) {
  Coeffs c(coeffs.begin(), coeffs.end());
  const cplx num = static_cast<double>(n) * at(c, n);
  if (num == cplx{}) return 0.0;
  return std::norm(num / at(c, n - 1));
}

std::vector<Check> verify_gdo_axioms(const GdoTriple& t, std::size_t dim, const AxiomTolerances& tol,
                                     const std::string& paper_eq) {
  std::vector<Check> out;
  const auto& N = t.number_op;
  const auto& lo = t.lowering;
  const auto& up = t.raising;
  if (N.domain_dim() != dim || lo.domain_dim() != dim || up.domain_dim() != dim)
    throw InputError("verify_gdo_axioms: generators do not act on dim=" + std::to_string(dim));

  const OperatorExpr c_lo = commutator(N, lo) + lo;
  const OperatorExpr c_up = commutator(N, up) - up;
  out.push_back(make_check("commutator [N,A-] = -A-", paper_eq,
                           max_rel_entry(c_lo, lo, interior_top(c_lo, dim)), tol.residual, 0.0, 0.0));
  out.push_back(make_check("commutator [N,A+] = +A+", paper_eq,
                           max_rel_entry(c_up, up, interior_top(c_up, dim)), tol.residual, 0.0, 0.0));

  auto product_checks = [&](const OperatorExpr& prod, long shift, const std::string& tag) {
    const long top = interior_top(prod, dim);
    double off = 0.0, diag_dev = 0.0, imag = 0.0;
    for (long n = 0; n <= top; ++n) {
      for (int s : shifts_of(prod)) {
        if (s == 0 || n + s < 0) continue;
        off += std::norm(prod.element(n + s, n));
      }
      const cplx d = prod.element(n, n);
      const double f = t.structure_fn(n + shift);
      diag_dev = std::max(diag_dev, std::abs(d - f) / std::max(1.0, f));
      imag = std::max(imag, std::abs(d.imag()) / std::max(1.0, std::abs(d)));
    }
    out.push_back(make_check(tag + " off-diagonal mass", paper_eq, std::sqrt(off), tol.residual, 0.0, 0.0));
    out.push_back(make_check(tag + (shift == 0 ? " = F(N)" : " = F(N+1)"), paper_eq, std::max(diag_dev, imag),
                             tol.residual, 0.0, 0.0));
  };
  product_checks(compose(up, lo), 0, "A+A-");
  product_checks(compose(lo, up), 1, "A-A+");

  const double fb = t.structure_fn(t.bottom);
  out.push_back(make_check("F(bottom) = 0", "Eq. 1", std::abs(fb), tol.residual, 0.0, 0.0,
                           "bottom=" + std::to_string(t.bottom)));

  double neg = 0.0;
  for (long n = 0; n < static_cast<long>(dim); ++n) {
    const double f = t.structure_fn(n);
    if (!std::isfinite(f)) {
      neg = f;
      break;
    }
    neg = std::max(neg, -f);
  }
  out.push_back(make_check("F real and non-negative", "Eq. 1", std::isfinite(neg) ? neg : INFINITY, tol.residual,
                           0.0, 0.0));

  // Term-list products against explicit dense matrices.
  double dense_dev = 0.0;
  const auto dl = dense::to_dense(lo), du = dense::to_dense(up);
  const dense::Matrix pm[2] = {du * dl, dl * du};
  const OperatorExpr pe[2] = {compose(up, lo), compose(lo, up)};
  for (int k = 0; k < 2; ++k) {
    const long top = interior_top(pe[k], dim);
    for (long n = 0; n <= top; ++n)
      for (long m = 0; m < static_cast<long>(dim); ++m)
        dense_dev = std::max(dense_dev, rel(pe[k].element(m, n) - pm[k](m, n), pm[k](m, n)));
  }
  out.push_back(make_check("dense oracle agreement", paper_eq, dense_dev, tol.residual, 0.0, 0.0,
                           "dim=" + std::to_string(dim)));
  return out;
}

Check verify_eigen_relation(const OperatorExpr& op, const FockState& s, cplx eigenvalue, std::string name,
                            std::string paper_eq, double tol, double leak_tol) {
  const Residual r = eigen_residual(op, s, eigenvalue);
  return make_check(std::move(name), std::move(paper_eq), r.norm, tol, r.leak, leak_tol,
                    "eigenvalue=" + format_complex(eigenvalue));
}

}  // namespace fockgdo::ladder
