#include "fockgdo/two_photon/two_photon.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fockgdo/core/dense.hpp"
#include "fockgdo/core/format.hpp"
#include "fockgdo/error.hpp"

namespace fockgdo::two_photon {

namespace {

void require_j(int j) {
  if (j != 0 && j != 1) throw InputError("sector label j must be 0 or 1, got " + std::to_string(j));
}

cplx at(const std::vector<cplx>& c, long n) {
  if (n < 0 || n >= static_cast<long>(c.size())) return {};
  return c[static_cast<std::size_t>(n)];
}

// Places sector amplitudes at 2n+j of a full-space vector.
FockState to_full(const std::vector<cplx>& sector, int j, std::size_t dim, double norm_constant, std::string label) {
  std::vector<cplx> amps(dim);
  for (std::size_t n = 0; n < sector.size(); ++n) amps[2 * n + static_cast<std::size_t>(j)] = sector[n];
  return FockState::with_norm_constant(std::move(amps), j == 0 ? Parity::even : Parity::odd, norm_constant,
                                       std::move(label));
}

// Tail mass sum_{n >= sdim} |c_n|^2 via the modulus-squared ratio q(n) = |c_{n+1}/c_n|^2.
template <class Ratio>
double sector_tail(double last, std::size_t sdim, Ratio q) {
  double tail = 0.0, p = last;
  for (std::size_t n = sdim - 1; n < sdim + 10'000'000; ++n) {
    p *= q(static_cast<double>(n));
    tail += p;
    if (p == 0.0 || p < 1e-30 * tail || p < 1e-300) break;
  }
  return tail;
}

void check_tail(double tail, double total, const std::string& what, std::size_t dim) {
  const double rel = tail / (total + tail);
  if (!(rel <= kTailTolerance))
    throw TruncationError(what + ": analytic tail mass beyond dim=" + std::to_string(dim) + " is " +
                          format_real(rel) + " (> " + format_real(kTailTolerance) + "); increase dim");
}

double max_rel(const OperatorExpr& x, const OperatorExpr& ref, long top) {
  std::set<int> shifts;
  for (const auto& t : x.terms()) shifts.insert(t.shift);
  for (const auto& t : ref.terms()) shifts.insert(t.shift);
  double worst = 0.0;
  for (long n = 0; n <= top; ++n)
    for (int s : shifts) {
      if (n + s < 0) continue;
      worst = std::max(worst, std::abs(x.element(n + s, n)) / std::max(1.0, std::abs(ref.element(n + s, n))));
    }
  return worst;
}

FockState squeezed(double r, double theta, std::size_t dim, int j) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("r must be a finite nonnegative real, got " + format_real(r));
  const std::size_t sdim = sector_dim(dim, j);
  if (sdim == 0) throw InputError("dim too small for the sector");
  const cplx z = std::polar(std::tanh(r), theta);
  const double t2 = std::norm(z);
  std::vector<cplx> c(sdim);
  const double pref = std::pow(std::cosh(r), j == 0 ? -0.5 : -1.5);
  c[0] = pref;
  // c_{n+1}/c_n = sqrt((2n+1+2j)/(2n+2)) z
  for (std::size_t n = 0; n + 1 < sdim; ++n) {
    const double nn = static_cast<double>(n);
    c[n + 1] = c[n] * std::sqrt((2.0 * nn + 1.0 + 2.0 * j) / (2.0 * nn + 2.0)) * z;
  }
  double total = 0.0;
  for (const auto& x : c) total += std::norm(x);
  const std::string label = std::string(j == 0 ? "svs" : "sfes") + "(r=" + format_real(r) +
                            ",theta=" + format_real(theta) + ")";
  check_tail(sector_tail(std::norm(c.back()), sdim,
                         [t2, j](double n) { return (2.0 * n + 1.0 + 2.0 * j) / (2.0 * n + 2.0) * t2; }),
             total, label, dim);
  return to_full(c, j, dim, pref, label);
}

}  // namespace

std::size_t sector_dim(std::size_t full_dim, int j) {
  require_j(j);
  if (full_dim <= static_cast<std::size_t>(j)) return 0;
  return (full_dim - static_cast<std::size_t>(j) + 1) / 2;
}

Su11Rep su11_sector(int j, std::size_t sdim) {
  require_j(j);
  const double jj = j;
  Su11Rep rep{j,
              j == 0 ? 0.25 : 0.75,
              OperatorExpr::band(sdim, 1,
                                 [jj](long n) -> cplx {
                                   if (n < 0) return {};
                                   return std::sqrt((n + 1.0) * (n + jj + 0.5));
                                 }),
              OperatorExpr::band(sdim, -1,
                                 [jj](long n) -> cplx {
                                   if (n <= 0) return {};
                                   return std::sqrt(n * (n + jj - 0.5));
                                 }),
              OperatorExpr::diagonal(sdim, [jj](long n) -> cplx { return n + jj / 2.0 + 0.25; }),
              OperatorExpr::number(sdim)};
  return rep;
}

FullSpaceSu11 su11_full(std::size_t dim) {
  return FullSpaceSu11{OperatorExpr::creation(dim, 2).scaled(0.5), OperatorExpr::annihilation(dim, 2).scaled(0.5),
                       OperatorExpr::diagonal(dim, [](long n) -> cplx { return n / 2.0 + 0.25; })};
}

SectorState sector_embed(const FockState& s) {
  if (s.parity() == Parity::full) {
    const Parity inferred = infer_parity(s.amplitudes());
    if (inferred == Parity::full) throw InputError("sector_embed: state has mixed parity");
    return sector_embed(FockState::with_norm_constant(std::vector<cplx>(s.amplitudes().begin(), s.amplitudes().end()),
                                                      inferred, s.norm_constant(), s.label()));
  }
  const int j = s.parity() == Parity::even ? 0 : 1;
  const std::size_t sdim = sector_dim(s.dim(), j);
  std::vector<cplx> amps(sdim);
  for (std::size_t n = 0; n < sdim; ++n) amps[n] = s.amplitudes()[2 * n + static_cast<std::size_t>(j)];
  return SectorState{FockState::with_norm_constant(std::move(amps), Parity::full, s.norm_constant(), s.label()), j,
                     s.dim()};
}

FockState sector_unembed(const SectorState& s) {
  std::vector<cplx> amps(s.state.amplitudes().begin(), s.state.amplitudes().end());
  if (sector_dim(s.full_dim, s.j) != amps.size())
    throw InputError("sector_unembed: sector length does not match full_dim");
  return to_full(amps, s.j, s.full_dim, s.state.norm_constant(), s.state.label());
}

FockState squeezed_vacuum(double r, double theta, std::size_t dim) { return squeezed(r, theta, dim, 0); }

FockState squeezed_first_excited(double r, double theta, std::size_t dim) { return squeezed(r, theta, dim, 1); }

FockState even_odd_coherent(cplx alpha, Parity parity, std::size_t dim) {
  if (parity == Parity::full) throw InputError("even/odd coherent state needs parity even or odd");
  const int j = parity == Parity::even ? 0 : 1;
  const double a2 = std::norm(alpha);
  if (j == 1 && a2 == 0.0) throw InputError("alpha must be nonzero for the odd coherent state");
  const std::size_t sdim = sector_dim(dim, j);
  if (sdim == 0) throw InputError("dim too small for the sector");
  const double pref = 1.0 / std::sqrt(j == 0 ? std::cosh(a2) : std::sinh(a2));
  if (!std::isfinite(pref) || pref == 0.0) throw NumericalError("|alpha| too large for double-precision amplitudes");
  std::vector<cplx> c(sdim);
  c[0] = j == 0 ? cplx{pref} : pref * alpha;
  // c_{n+1}/c_n = alpha^2 / sqrt((2n+1+j)(2n+2+j))
  for (std::size_t n = 0; n + 1 < sdim; ++n) {
    const double k = 2.0 * static_cast<double>(n) + j;
    c[n + 1] = c[n] * alpha * alpha / std::sqrt((k + 1.0) * (k + 2.0));
  }
  double total = 0.0;
  for (const auto& x : c) total += std::norm(x);
  const std::string label = std::string(j == 0 ? "ecs" : "ocs") + "(alpha=" + format_complex(alpha) + ")";
  check_tail(sector_tail(std::norm(c.back()), sdim,
                         [a2, j](double n) {
                           const double k = 2.0 * n + j;
                           return a2 * a2 / ((k + 1.0) * (k + 2.0));
                         }),
             total, label, dim);
  return to_full(c, j, dim, pref, label);
}

TwoPhotonForms two_photon_ladder(std::span<const cplx> sector_coeffs, int j) {
  require_j(j);
  std::vector<cplx> c(sector_coeffs.begin(), sector_coeffs.end());
  const std::size_t sdim = c.size();
  for (std::size_t n = 0; n < sdim; ++n)
    if (c[n] == cplx{})
      throw InputError("two-photon ladder: sector coefficient is zero at n=" + std::to_string(n));
  const Su11Rep rep = su11_sector(j, sdim);
  const double half = j == 0 ? -0.5 : 0.5;
  DiagFn g = [c, half](long n) -> cplx {
    const cplx num = std::sqrt(static_cast<double>(std::max(0L, n))) * at(c, n);
    if (num == cplx{}) return {};
    return num / (at(c, n - 1) * std::sqrt(n + half));
  };
  OperatorExpr raising = compose(OperatorExpr::diagonal(sdim, g), rep.K_plus);
  const double jj = j;
  DiagFn d = [c, jj](long n) -> cplx {
    const cplx num = at(c, n + 1) * std::sqrt(n + jj + 0.5) * (n + 1.0);
    if (num == cplx{}) return {};
    return num / at(c, n);
  };
  OperatorExpr low_part = compose(
      OperatorExpr::diagonal(sdim, [](long n) -> cplx { return std::sqrt(n + 1.0); }), rep.K_minus);
  return TwoPhotonForms{rep.sector_number_op - raising, OperatorExpr::diagonal(sdim, d) - low_part, raising};
}

ladder::GdoTriple two_photon_gdo(std::span<const cplx> sector_coeffs, int j) {
  OperatorExpr up = two_photon_ladder(sector_coeffs, j).raising;
  OperatorExpr low = adjoint(up);
  return ladder::make_triple(OperatorExpr::number(sector_coeffs.size()), std::move(low), std::move(up), 0);
}

double two_photon_structure_closed_form(std::span<const cplx> sector_coeffs, long n) {
  std::vector<cplx> c(sector_coeffs.begin(), sector_coeffs.end());
  const cplx num = static_cast<double>(n) * at(c, n);
  if (num == cplx{}) return 0.0;
  return std::norm(num / at(c, n - 1));
}

std::vector<Check> verify_su11(const Su11Rep& rep, double tol) {
  const std::size_t sdim = rep.K_zero.domain_dim();
  const auto top = [sdim](const OperatorExpr& x) { return static_cast<long>(sdim) - 1 - x.max_peak(); };
  const std::string eq = "Eq. 66";
  const std::string tag = " (j=" + std::to_string(rep.parity_j) + ")";
  std::vector<Check> out;
  const OperatorExpr c1 = commutator(rep.K_zero, rep.K_plus) - rep.K_plus;
  const OperatorExpr c2 = commutator(rep.K_zero, rep.K_minus) + rep.K_minus;
  const OperatorExpr c3 = commutator(rep.K_plus, rep.K_minus) + rep.K_zero.scaled(2.0);
  out.push_back(make_check("[K0,K+] = K+" + tag, eq, max_rel(c1, rep.K_plus, top(c1)), tol, 0, 0));
  out.push_back(make_check("[K0,K-] = -K-" + tag, eq, max_rel(c2, rep.K_minus, top(c2)), tol, 0, 0));
  out.push_back(make_check("[K+,K-] = -2K0" + tag, eq, max_rel(c3, rep.K_zero, top(c3)), tol, 0, 0));
  const double k = rep.bargmann_k;
  const OperatorExpr cas = compose(rep.K_zero, rep.K_zero) -
                           (compose(rep.K_plus, rep.K_minus) + compose(rep.K_minus, rep.K_plus)).scaled(0.5) -
                           OperatorExpr::identity(sdim).scaled(k * (k - 1.0));
  out.push_back(make_check("Casimir = k(k-1)" + tag, eq, max_rel(cas, rep.K_zero, top(cas)), tol, 0, 0,
                           "k=" + format_real(k)));
  const OperatorExpr nn = rep.sector_number_op - (rep.K_zero - OperatorExpr::identity(sdim).scaled(k));
  out.push_back(make_check("N_j = K0 - k" + tag, rep.parity_j == 0 ? "Eq. 70" : "Eq. 71",
                           max_rel(nn, rep.K_zero, top(nn)), tol, 0, 0));
  return out;
}

Check verify_embedding(int j, std::size_t full_dim, double tol) {
  const std::size_t sdim = sector_dim(full_dim, j);
  const Su11Rep rep = su11_sector(j, sdim);
  const FullSpaceSu11 full = su11_full(full_dim);
  double worst = 0.0;
  for (std::size_t n = 0; n < sdim; ++n) {
    const long f = 2 * static_cast<long>(n) + j;
    for (int s : {-1, 0, 1}) {
      const long m = static_cast<long>(n) + s;
      if (m < 0 || m >= static_cast<long>(sdim)) continue;
      const long fm = 2 * m + j;
      const OperatorExpr* sector_op = s == 1 ? &rep.K_plus : s == -1 ? &rep.K_minus : &rep.K_zero;
      const OperatorExpr* full_op = s == 1 ? &full.K_plus : s == -1 ? &full.K_minus : &full.K_zero;
      worst = std::max(worst, std::abs(sector_op->element(m, static_cast<long>(n)) - full_op->element(fm, f)));
    }
  }
  return make_check("full-space K restricted to S_" + std::to_string(j), "Eq. 65", worst, tol, 0, 0,
                    "full_dim=" + std::to_string(full_dim));
}

Applied apply_exponential_series(const OperatorExpr& x, const FockState& v) {
  for (const auto& t : x.terms())
    if (t.shift == 0) throw InputError("apply_exponential_series needs a strictly shifting operator");
  const std::size_t dim = v.dim();
  std::vector<cplx> sum(v.amplitudes().begin(), v.amplitudes().end());
  FockState term = v;
  double leak_amp = 0.0;
  for (std::size_t k = 1; k <= dim + 1; ++k) {
    Applied next = apply(x, term);
    const double kk = static_cast<double>(k);
    std::vector<cplx> scaled(next.state.amplitudes().begin(), next.state.amplitudes().end());
    bool any = false;
    for (std::size_t n = 0; n < dim; ++n) {
      scaled[n] /= kk;
      sum[n] += scaled[n];
      any = any || scaled[n] != cplx{};
    }
    // Norm dropped at this order; summing norms over orders gives a bound.
    leak_amp += std::sqrt(next.leak) / kk;
    if (!any) break;
    term = FockState::unnormalized(std::move(scaled), next.state.parity(), v.label());
  }
  return Applied{FockState::unnormalized(std::move(sum), v.parity(), "exp(X)" + v.label()), leak_amp * leak_amp};
}

std::vector<Check> verify_disentangling(double r, double theta, std::size_t dim, int seed, double infidelity_tol,
                                        double leak_tol) {
  if (seed != 0 && seed != 1) throw InputError("disentangling seed must be 0 or 1");
  if (!(r >= 0.0)) throw InputError("r must be >= 0");
  const cplx xi = std::polar(r, theta);
  const cplx z = std::polar(std::tanh(r), theta);
  const std::string eq = seed == 0 ? "Eq. 67" : "Eq. 79";
  const std::string tag = seed == 0 ? "S(xi)|0>" : "S(xi)|1>";

  // (i) dense exponential of xi K+ - xi^* K-
  const dense::Matrix kp = dense::creation(dim) * dense::creation(dim) * 0.5;
  const dense::Matrix km = dense::annihilation(dim) * dense::annihilation(dim) * 0.5;
  const dense::Matrix gen = xi * kp - std::conj(xi) * km;
  const dense::Vector seed_vec = dense::to_vector(FockState::basis(dim, static_cast<std::size_t>(seed)));
  const dense::Vector v_dense = dense::expm(gen) * seed_vec;
  const FockState s_dense = dense::from_vector(v_dense, Parity::full, "dense");

  // (ii) disentangled product, right factor first
  const FullSpaceSu11 full = su11_full(dim);
  const FockState base = FockState::basis(dim, static_cast<std::size_t>(seed));
  const Applied f1 = apply_exponential_series(full.K_minus.scaled(-std::conj(z)), base);
  const double ch = std::cosh(r);
  const OperatorExpr middle =
      OperatorExpr::diagonal(dim, [ch](long n) -> cplx { return std::pow(ch, -(static_cast<double>(n) + 0.5)); });
  const Applied f2 = apply(middle, f1.state);
  const Applied f3 = apply_exponential_series(full.K_plus.scaled(z), f2.state);
  const double product_leak = f1.leak + f2.leak + f3.leak;

  // (iii) closed form
  const FockState closed = seed == 0 ? squeezed_vacuum(r, theta, dim) : squeezed_first_excited(r, theta, dim);

  auto infid = [](const FockState& a, const FockState& b) { return std::max(0.0, 1.0 - fidelity(a, b)); };
  // The dense route has no dropped image; its truncation error shows up as
  // amplitude on the top levels, reported in the detail.
  double top_mass = 0.0;
  for (std::size_t n = dim - std::min<std::size_t>(dim, 4); n < dim; ++n) top_mass += std::norm(v_dense(static_cast<Eigen::Index>(n)));

  std::vector<Check> out;
  out.push_back(make_check(tag + ": dense exponential vs disentangled product", eq, infid(s_dense, f3.state),
                           infidelity_tol, product_leak, leak_tol, "dense top-4 mass=" + format_real(top_mass)));
  out.push_back(make_check(tag + ": dense exponential vs closed form", seed == 0 ? "Eq. 68" : "Eq. 80",
                           infid(s_dense, closed), infidelity_tol, 0.0, leak_tol,
                           "dense top-4 mass=" + format_real(top_mass)));
  out.push_back(make_check(tag + ": disentangled product vs closed form", seed == 0 ? "Eq. 68" : "Eq. 80",
                           infid(f3.state, closed), infidelity_tol, product_leak, leak_tol));
  return out;
}

}  // namespace fockgdo::two_photon
