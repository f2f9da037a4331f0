#include "fockgdo/core/operator_expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fockgdo/error.hpp"

namespace fockgdo {

namespace {

void require_same_dim(const OperatorExpr& x, const OperatorExpr& y, const char* what) {
  if (x.domain_dim() != y.domain_dim())
    throw InputError(std::string(what) + ": domain dimension mismatch (" + std::to_string(x.domain_dim()) + " vs " +
                     std::to_string(y.domain_dim()) + ")");
}

// sqrt(n (n-1) ... (n-k+1)) for a^k, sqrt((n+1) ... (n+k)) for a^dagger^k.
double ladder_factor(long n, int shift) {
  if (n < 0) return 0.0;
  double p = 1.0;
  if (shift < 0) {
    for (int j = 0; j < -shift; ++j) {
      const long m = n - j;
      if (m <= 0) return 0.0;
      p *= static_cast<double>(m);
    }
  } else {
    for (int j = 1; j <= shift; ++j) p *= static_cast<double>(n + j);
  }
  return std::sqrt(p);
}

bool is_finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

OperatorExpr OperatorExpr::identity(std::size_t dim) {
  return diagonal(dim, [](long) { return cplx{1.0}; });
}

OperatorExpr OperatorExpr::number(std::size_t dim) {
  return diagonal(dim, [](long n) { return cplx{static_cast<double>(n)}; });
}

OperatorExpr OperatorExpr::diagonal(std::size_t dim, DiagFn f) { return band(dim, 0, std::move(f)); }

OperatorExpr OperatorExpr::annihilation(std::size_t dim, int k) {
  return ladder(dim, -k, [](long) { return cplx{1.0}; });
}

OperatorExpr OperatorExpr::creation(std::size_t dim, int k) {
  return ladder(dim, k, [](long) { return cplx{1.0}; });
}

OperatorExpr OperatorExpr::ladder(std::size_t dim, int shift, DiagFn diag) {
  return band(dim, shift, [shift, diag = std::move(diag)](long n) -> cplx {
    const double l = ladder_factor(n, shift);
    if (l == 0.0) return {};
    return diag(n) * l;
  });
}

OperatorExpr OperatorExpr::band(std::size_t dim, int shift, DiagFn element) {
  OperatorExpr e(dim);
  e.terms_.push_back(Term{shift, std::max(0, shift), std::move(element)});
  return e;
}

int OperatorExpr::max_peak() const {
  int p = 0;
  for (const auto& t : terms_) p = std::max(p, t.peak);
  return p;
}

int OperatorExpr::max_abs_shift() const {
  int p = 0;
  for (const auto& t : terms_) p = std::max(p, std::abs(t.shift));
  return p;
}

cplx OperatorExpr::element(long row, long col) const {
  if (col < 0 || row < 0) return {};
  cplx s{};
  for (const auto& t : terms_)
    if (col + t.shift == row) s += t.element(col);
  return s;
}

OperatorExpr OperatorExpr::scaled(cplx c) const {
  OperatorExpr e(dim_);
  for (const auto& t : terms_)
    e.terms_.push_back(Term{t.shift, t.peak, [c, f = t.element](long n) -> cplx {
                              const cplx v = f(n);
                              return v == cplx{} ? cplx{} : c * v;
                            }});
  return e;
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
  require_same_dim(*this, o, "sum");
  OperatorExpr e = *this;
  e.terms_.insert(e.terms_.end(), o.terms_.begin(), o.terms_.end());
  return e;
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const { return *this + o.scaled(-1.0); }

OperatorExpr OperatorExpr::from_terms(std::size_t dim, std::vector<Term> terms) {
  OperatorExpr e(dim);
  e.terms_ = std::move(terms);
  return e;
}

OperatorExpr compose(const OperatorExpr& x, const OperatorExpr& y) {
  require_same_dim(x, y, "compose");
  std::vector<OperatorExpr::Term> terms;
  for (const auto& ty : y.terms()) {
    for (const auto& tx : x.terms()) {
      const int sy = ty.shift;
      // The right factor is evaluated first; a vanishing right element
      // short-circuits before the left one is touched.
      auto f = [fx = tx.element, fy = ty.element, sy](long n) -> cplx {
        const cplx a = fy(n);
        if (a == cplx{} || n + sy < 0) return {};
        const cplx b = fx(n + sy);
        if (b == cplx{}) return {};
        return b * a;
      };
      terms.push_back({sy + tx.shift, std::max(ty.peak, sy + tx.peak), std::move(f)});
    }
  }
  return merged(OperatorExpr::from_terms(x.domain_dim(), std::move(terms)));
}

OperatorExpr adjoint(const OperatorExpr& x) {
  std::vector<OperatorExpr::Term> terms;
  for (const auto& t : x.terms()) {
    const int s = t.shift;
    // <m-s|T^dagger|m> = conj(<m|T|m-s>)
    auto f = [f = t.element, s](long m) -> cplx {
      if (m - s < 0) return {};
      return std::conj(f(m - s));
    };
    terms.push_back({-s, t.peak - s, std::move(f)});
  }
  return OperatorExpr::from_terms(x.domain_dim(), std::move(terms));
}

OperatorExpr commutator(const OperatorExpr& x, const OperatorExpr& y) {
  require_same_dim(x, y, "commutator");
  return merged(compose(x, y) - compose(y, x));
}

OperatorExpr merged(const OperatorExpr& x) {
  std::map<int, std::vector<OperatorExpr::Term>> by_shift;
  for (const auto& t : x.terms()) by_shift[t.shift].push_back(t);
  std::vector<OperatorExpr::Term> terms;
  for (auto& [shift, group] : by_shift) {
    if (group.size() == 1) {
      terms.push_back(group.front());
      continue;
    }
    int peak = 0;
    std::vector<DiagFn> fs;
    for (auto& t : group) {
      peak = std::max(peak, t.peak);
      fs.push_back(t.element);
    }
    terms.push_back({shift, peak, [fs = std::move(fs)](long n) {
                       cplx s{};
                       for (const auto& f : fs) s += f(n);
                       return s;
                     }});
  }
  return OperatorExpr::from_terms(x.domain_dim(), std::move(terms));
}

Applied apply(const OperatorExpr& op, const FockState& s) {
  if (op.domain_dim() != s.dim())
    throw InputError("apply: operator domain " + std::to_string(op.domain_dim()) + " does not match state dim " +
                     std::to_string(s.dim()));
  const long dim = static_cast<long>(s.dim());
  std::vector<cplx> out(s.dim());
  std::map<long, cplx> overflow;
  bool all_even = true, all_odd = true;
  for (const auto& t : op.terms()) {
    (t.shift % 2 == 0 ? all_odd : all_even) = false;
    for (long n = 0; n < dim; ++n) {
      const cplx amp = s.amplitudes()[static_cast<std::size_t>(n)];
      if (amp == cplx{}) continue;
      const long m = n + t.shift;
      if (m < 0) continue;
      const cplx c = t.element(n);
      if (!is_finite(c))
        throw NumericalError("operator element is non-finite at occupied index n=" + std::to_string(n));
      if (m < dim)
        out[static_cast<std::size_t>(m)] += c * amp;
      else
        overflow[m] += c * amp;
    }
  }
  double leak = 0.0;
  for (const auto& [m, v] : overflow) leak += std::norm(v);

  Parity parity = Parity::full;
  if (s.parity() != Parity::full && !op.terms().empty()) {
    if (all_even) parity = s.parity();
    if (all_odd) parity = s.parity() == Parity::even ? Parity::odd : Parity::even;
  }
  return Applied{FockState::unnormalized(std::move(out), parity, "X" + s.label()), leak};
}

Residual eigen_residual(const OperatorExpr& op, const FockState& s, cplx eigenvalue) {
  const Applied img = apply(op, s);
  double r = 0.0;
  for (std::size_t n = 0; n < s.dim(); ++n) r += std::norm(img.state.amplitudes()[n] - eigenvalue * s.amplitudes()[n]);
  return Residual{std::sqrt(r), img.leak};
}

}  // namespace fockgdo
