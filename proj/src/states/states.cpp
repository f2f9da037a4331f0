#include "fockgdo/states/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fockgdo/core/format.hpp"
#include "fockgdo/error.hpp"

namespace fockgdo::states {

namespace {

void require_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw InputError("eta must lie in (0,1), got " + format_real(eta));
}

void require_M(int M, int min = 0) {
  if (M < min) throw InputError("M must be >= " + std::to_string(min) + ", got " + std::to_string(M));
}

void require_dim_above(std::size_t dim, int M) {
  if (dim <= static_cast<std::size_t>(M))
    throw InputError("dim must exceed M (dim=" + std::to_string(dim) + ", M=" + std::to_string(M) + ")");
}

void require_dim(std::size_t dim) {
  if (dim == 0) throw InputError("dim must be positive");
}

// Sums the continuation p_dim, p_{dim+1}, ... of a pmf given by a ratio
// recurrence, starting from p_{dim-1}. Stops once terms are negligible.
template <class Ratio>
double tail_from_ratio(double last, std::size_t dim, Ratio ratio) {
  double tail = 0.0;
  double p = last;
  for (std::size_t n = dim - 1; n < dim + 10'000'000; ++n) {
    p *= ratio(static_cast<double>(n));
    if (!std::isfinite(p)) return p;
    tail += p;
    if (p == 0.0 || (p < 1e-40 * tail && ratio(static_cast<double>(n + 1)) < 1.0) || (tail == 0.0)) break;
    if (p < 1e-300) break;
  }
  return tail;
}

void check_tail(double tail, double total, const std::string& what, std::size_t dim) {
  const double rel = tail / (total + tail);
  if (!(rel <= kTailTolerance))
    throw TruncationError(what + ": analytic tail mass beyond dim=" + std::to_string(dim) + " is " + format_real(rel) +
                          " (> " + format_real(kTailTolerance) + "); increase dim");
}

double binom_int(int M, int n) {
  if (n < 0 || n > M) return 0.0;
  double c = 1.0;
  for (int j = 0; j < n; ++j) c = c * static_cast<double>(M - j) / static_cast<double>(j + 1);
  return c;
}

std::string lbl(const std::string& family, std::initializer_list<std::pair<const char*, std::string>> params) {
  std::string s = family + "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) s += ",";
    s += std::string(k) + "=" + v;
    first = false;
  }
  return s + ")";
}

std::vector<cplx> poisson_sequence(cplx alpha, std::size_t dim) {
  std::vector<cplx> c(dim);
  c[0] = 1.0;
  for (std::size_t n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

void check_poisson_tail(const std::vector<cplx>& c, cplx alpha, const std::string& what) {
  double total = 0.0;
  for (const auto& x : c) total += std::norm(x);
  if (!std::isfinite(total)) throw NumericalError(what + ": |alpha| too large for double-precision amplitudes");
  const double a2 = std::norm(alpha);
  const double tail = tail_from_ratio(std::norm(c.back()), c.size(), [a2](double n) { return a2 / (n + 1.0); });
  check_tail(tail, total, what, c.size());
}

}  // namespace

double PhaseGrid::theta() const {
  if (s < 0) throw InputError("phase grid size s must be >= 0");
  if (m < 0 || m > s) throw InputError("phase index m must lie in [0, s], got m=" + std::to_string(m));
  return theta0 + 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(s + 1);
}

double generalized_binomial(double x, int n) {
  if (n < 0) return 0.0;
  double c = 1.0;
  for (int j = 0; j < n; ++j) c *= (x - static_cast<double>(j)) / static_cast<double>(j + 1);
  return c;
}

FockState coherent(cplx alpha, std::size_t dim) {
  require_dim(dim);
  auto c = poisson_sequence(alpha, dim);
  const std::string label = lbl("coherent", {{"alpha", format_complex(alpha)}});
  check_poisson_tail(c, alpha, label);
  return FockState::normalized(std::move(c), Parity::full, label);
}

FockState binomial(double eta, int M, std::size_t dim) {
  require_eta(eta);
  require_M(M);
  require_dim_above(dim, M);
  std::vector<cplx> c(dim);
  double logp = static_cast<double>(M) * std::log1p(-eta);
  const double odds = std::log(eta) - std::log1p(-eta);
  for (int n = 0; n <= M; ++n) {
    c[static_cast<std::size_t>(n)] = std::exp(0.5 * logp);
    logp += std::log(static_cast<double>(M - n) / static_cast<double>(n + 1)) + odds;
  }
  return FockState::normalized(std::move(c), Parity::full,
                               lbl("binomial", {{"eta", format_real(eta)}, {"M", std::to_string(M)}}));
}

FockState hypergeometric(double L, double eta, int M, std::size_t dim) {
  require_eta(eta);
  require_M(M);
  require_dim_above(dim, M);
  const double bound = std::max(M / eta, M / (1.0 - eta));
  if (!(L >= bound * (1.0 - 1e-14)))
    throw InputError("L must satisfy L >= max{M/eta, M/(1-eta)} = " + format_real(bound) + ", got " + format_real(L));
  std::vector<cplx> c(dim);
  const double denom = generalized_binomial(L, M);
  for (int n = 0; n <= M; ++n) {
    const double v = generalized_binomial(L * eta, n) * generalized_binomial(L * (1.0 - eta), M - n) / denom;
    if (v < 0.0)
      throw NumericalError("hypergeometric: negative weight " + format_real(v) + " at n=" + std::to_string(n));
    c[static_cast<std::size_t>(n)] = std::sqrt(v);
  }
  return FockState::normalized(
      std::move(c), Parity::full,
      lbl("hgs", {{"L", format_real(L)}, {"eta", format_real(eta)}, {"M", std::to_string(M)}}));
}

FockState polya(double eta, double gamma, int M, std::size_t dim) {
  require_eta(eta);
  require_M(M);
  if (!(gamma > 0.0)) throw InputError("gamma must be > 0, got " + format_real(gamma));
  require_dim_above(dim, M);
  // prod_{k=1}^{j} [x + (k-1) gamma] for j = 0..M
  auto rising = [gamma, M](double x) {
    std::vector<double> r(static_cast<std::size_t>(M) + 1, 1.0);
    for (int k = 1; k <= M; ++k) r[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k - 1)] * (x + (k - 1) * gamma);
    return r;
  };
  const auto up = rising(eta), down = rising(1.0 - eta), all = rising(1.0);
  std::vector<cplx> c(dim);
  for (int n = 0; n <= M; ++n) {
    const double v = binom_int(M, n) * up[static_cast<std::size_t>(n)] * down[static_cast<std::size_t>(M - n)] /
                     all[static_cast<std::size_t>(M)];
    c[static_cast<std::size_t>(n)] = std::sqrt(v);
  }
  return FockState::normalized(
      std::move(c), Parity::full,
      lbl("polya", {{"eta", format_real(eta)}, {"gamma", format_real(gamma)}, {"M", std::to_string(M)}}));
}

FockState reciprocal_binomial(double theta, int M, std::size_t dim) {
  require_M(M);
  require_dim_above(dim, M);
  std::vector<cplx> c(dim);
  for (int n = 0; n <= M; ++n)
    c[static_cast<std::size_t>(n)] = std::polar(1.0 / std::sqrt(binom_int(M, n)), static_cast<double>(n) * theta);
  return FockState::normalized(std::move(c), Parity::full,
                               lbl("rbs", {{"theta", format_real(theta)}, {"M", std::to_string(M)}}));
}

FockState pegg_barnett_phase(const PhaseGrid& grid, int M, std::size_t dim) {
  if (grid.s != M)
    throw InputError("phase grid size s must equal M (s=" + std::to_string(grid.s) + ", M=" + std::to_string(M) + ")");
  return pegg_barnett_phase_at(grid.theta(), M, dim);
}

FockState pegg_barnett_phase_at(double theta, int M, std::size_t dim) {
  require_M(M);
  require_dim_above(dim, M);
  std::vector<cplx> c(dim);
  for (int n = 0; n <= M; ++n) c[static_cast<std::size_t>(n)] = std::polar(1.0, static_cast<double>(n) * theta);
  return FockState::normalized(std::move(c), Parity::full,
                               lbl("pbps", {{"theta", format_real(theta)}, {"M", std::to_string(M)}}));
}

FockState generalized_geometric(cplx Y, int M, std::size_t dim) {
  require_M(M);
  require_dim_above(dim, M);
  if (std::abs(std::abs(Y) - 1.0) < 1e-12) throw InputError("|Y| must differ from 1 (normalization is singular)");
  const cplx root = std::sqrt(Y);
  std::vector<cplx> c(dim);
  cplx p = 1.0;
  for (int n = 0; n <= M; ++n) {
    c[static_cast<std::size_t>(n)] = p;
    p *= root;
  }
  return FockState::normalized(std::move(c), Parity::full,
                               lbl("ggs", {{"Y", format_complex(Y)}, {"M", std::to_string(M)}}));
}

FockState geometric(double eta, std::size_t dim) {
  require_eta(eta);
  require_dim(dim);
  const double tail = std::pow(1.0 - eta, static_cast<double>(dim));
  const std::string label = lbl("geometric", {{"eta", format_real(eta)}});
  if (!(tail <= kTailTolerance))
    throw TruncationError(label + ": analytic tail mass beyond dim=" + std::to_string(dim) + " is " +
                          format_real(tail) + " (> " + format_real(kTailTolerance) + "); increase dim");
  std::vector<cplx> c(dim);
  const double q = std::sqrt(1.0 - eta);
  double p = std::sqrt(eta);
  for (std::size_t n = 0; n < dim; ++n) {
    c[n] = p;
    p *= q;
  }
  return FockState::normalized(std::move(c), Parity::full, label);
}

FockState negative_binomial(double eta, int M, std::size_t dim) {
  require_eta(eta);
  require_M(M, 1);
  require_dim(dim);
  std::vector<double> p(dim);
  double logp = static_cast<double>(M) * std::log1p(-eta);
  const double le = std::log(eta);
  double total = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    p[n] = std::exp(logp);
    total += p[n];
    logp += std::log((static_cast<double>(M) + n) / (n + 1.0)) + le;
  }
  const std::string label = lbl("nbs", {{"eta", format_real(eta)}, {"M", std::to_string(M)}});
  check_tail(tail_from_ratio(p.back(), dim, [eta, M](double n) { return (M + n) / (n + 1.0) * eta; }), total, label,
             dim);
  std::vector<cplx> c(dim);
  for (std::size_t n = 0; n < dim; ++n) c[n] = std::sqrt(p[n]);
  return FockState::normalized(std::move(c), Parity::full, label);
}

FockState new_negative_binomial(double eta, int M, std::size_t dim) {
  require_eta(eta);
  require_M(M);
  require_dim_above(dim, M);
  std::vector<double> p(dim, 0.0);
  double logp = static_cast<double>(M + 1) * std::log(eta);
  const double lq = std::log1p(-eta);
  double total = 0.0;
  for (std::size_t n = static_cast<std::size_t>(M); n < dim; ++n) {
    p[n] = std::exp(logp);
    total += p[n];
    logp += std::log((n + 1.0) / (n + 1.0 - M)) + lq;
  }
  const std::string label = lbl("nnbs", {{"eta", format_real(eta)}, {"M", std::to_string(M)}});
  check_tail(tail_from_ratio(p.back(), dim, [eta, M](double n) { return (n + 1.0) / (n + 1.0 - M) * (1.0 - eta); }),
             total, label, dim);
  std::vector<cplx> c(dim);
  for (std::size_t n = 0; n < dim; ++n) c[n] = std::sqrt(p[n]);
  return FockState::normalized(std::move(c), Parity::full, label);
}

FockState kerr(cplx alpha, double theta, std::size_t dim) {
  require_dim(dim);
  auto c = poisson_sequence(alpha, dim);
  const std::string label = lbl("kerr", {{"alpha", format_complex(alpha)}, {"theta", format_real(theta)}});
  check_poisson_tail(c, alpha, label);
  for (std::size_t n = 0; n < dim; ++n) {
    const double nn = static_cast<double>(n);
    c[n] *= std::polar(1.0, -theta * nn * (nn - 1.0));
  }
  return FockState::normalized(std::move(c), Parity::full, label);
}

FockState photon_add(const FockState& base, int M) {
  require_M(M);
  const std::size_t dim = base.dim();
  const double base_norm2 = base.norm() * base.norm();
  // a^dagger^0 is the identity; a normalized base passes through bit-exact
  if (M == 0 && std::abs(base_norm2 - 1.0) <= 1e-14)
    return FockState::with_norm_constant({base.amplitudes().begin(), base.amplitudes().end()}, base.parity(), 1.0,
                                         "photon_add(M=0," + base.label() + ")");
  std::vector<cplx> c(dim);
  double kept = 0.0, lost = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const cplx b = base.amplitudes()[k];
    if (b == cplx{}) continue;
    double lf = 1.0;
    for (int j = 1; j <= M; ++j) lf *= static_cast<double>(k) + j;
    const cplx v = b * std::sqrt(lf) / std::sqrt(base_norm2);
    if (k + static_cast<std::size_t>(M) < dim) {
      c[k + static_cast<std::size_t>(M)] = v;
      kept += std::norm(v);
    } else {
      lost += std::norm(v);
    }
  }
  const std::string label = "photon_add(M=" + std::to_string(M) + "," + base.label() + ")";
  if (!(lost <= kTailTolerance * (kept + lost)))
    throw TruncationError(label + ": shifted mass beyond dim=" + std::to_string(dim) + " is " +
                          format_real(lost / (kept + lost)) + "; increase dim");
  Parity parity = base.parity();
  if (parity != Parity::full && M % 2 == 1) parity = parity == Parity::even ? Parity::odd : Parity::even;
  const double nm = 1.0 / std::sqrt(kept);
  for (auto& x : c) x *= nm;
  return FockState::with_norm_constant(std::move(c), parity, nm, label);
}

std::vector<cplx> intermediate_sequence(const IntermediateParams& p, std::size_t count) {
  require_eta(p.eta);
  if (!p.f) throw InputError("intermediate state needs a nonlinearity f");
  const double se = std::sqrt(p.eta), sq = std::sqrt(1.0 - p.eta);
  std::vector<cplx> c(count);
  if (count == 0) return c;
  c[0] = 1.0;
  for (std::size_t n = 0; n + 1 < count; ++n) {
    const double nn = static_cast<double>(n);
    const cplx num = (p.alpha_eig - se * nn) * c[n];
    if (num == cplx{}) {
      c[n + 1] = 0.0;
      continue;
    }
    const cplx fn = p.f(static_cast<long>(n));
    if (fn == cplx{}) throw InputError("nonlinearity f vanishes at n=" + std::to_string(n));
    c[n + 1] = num / (sq * fn * std::sqrt(nn + 1.0));
  }
  return c;
}

FockState intermediate_nlcs(const IntermediateParams& p, std::size_t dim) {
  require_dim(dim);
  for (std::size_t n = 0; n + 1 < dim; ++n)
    if (p.f && p.f(static_cast<long>(n)) == cplx{})
      throw InputError("nonlinearity f vanishes at n=" + std::to_string(n));
  const std::size_t horizon = std::max<std::size_t>(4 * dim, dim + 1000);
  const auto seq = intermediate_sequence(p, horizon);
  double inside = 0.0, tail = 0.0;
  for (std::size_t n = 0; n < horizon; ++n) (n < dim ? inside : tail) += std::norm(seq[n]);
  const std::string label = "intermediate(eta=" + format_real(p.eta) + ",alpha=" + format_complex(p.alpha_eig) + ")";
  const double last = std::norm(seq[horizon - 1]), prev = std::norm(seq[horizon - 2]);
  const bool growing = last > 0.0 && last >= prev;
  if (!std::isfinite(inside) || !std::isfinite(tail) || growing)
    throw TruncationError(label + ": recursion diverges (sequence is not normalizable); alpha is not an admissible eigenvalue");
  if (!(tail <= kIntermediateTailTolerance * (inside + tail)))
    throw TruncationError(label + ": tail mass beyond dim=" + std::to_string(dim) + " is " +
                          format_real(tail / (inside + tail)) + " (> 1e-10); increase dim");
  return FockState::normalized(std::vector<cplx>(seq.begin(), seq.begin() + static_cast<long>(dim)), Parity::full,
                               label);
}

}  // namespace fockgdo::states
