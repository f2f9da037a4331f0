#include "fockgdo/core/fock_state.hpp"

#include <algorithm>
#include <cmath>

#include "fockgdo/error.hpp"

namespace fockgdo {

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::full:
      return "full";
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
  }
  return "full";
}

namespace {

Support compute_support(const std::vector<cplx>& amps) {
  Support s;
  for (std::size_t n = 0; n < amps.size(); ++n) {
    if (amps[n] != cplx{}) {
      if (s.empty()) s.n_min = static_cast<long>(n);
      s.n_max = static_cast<long>(n);
    }
  }
  return s;
}

double sum_sq(std::span<const cplx> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

FockState::FockState(std::vector<cplx> amplitudes, Parity parity, double norm_constant, std::string label)
    : amplitudes_(std::move(amplitudes)), parity_(parity), norm_constant_(norm_constant), label_(std::move(label)) {
  if (amplitudes_.empty()) throw InputError("state dimension must be positive");
  for (std::size_t n = 0; n < amplitudes_.size(); ++n) {
    if (!std::isfinite(amplitudes_[n].real()) || !std::isfinite(amplitudes_[n].imag()))
      throw NumericalError("non-finite amplitude at n=" + std::to_string(n) + " in " + label_);
    if (parity_ == Parity::even && n % 2 == 1 && amplitudes_[n] != cplx{})
      throw InputError("even-parity state has a nonzero odd amplitude at n=" + std::to_string(n));
    if (parity_ == Parity::odd && n % 2 == 0 && amplitudes_[n] != cplx{})
      throw InputError("odd-parity state has a nonzero even amplitude at n=" + std::to_string(n));
  }
  support_ = compute_support(amplitudes_);
}

FockState FockState::normalized(std::vector<cplx> amplitudes, Parity parity, std::string label) {
  const double nrm = std::sqrt(sum_sq(amplitudes));
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalError("cannot normalize " + label + ": norm is " + std::to_string(nrm));
  const double k = 1.0 / nrm;
  for (auto& a : amplitudes) a *= k;
  return FockState(std::move(amplitudes), parity, k, std::move(label));
}

FockState FockState::unnormalized(std::vector<cplx> amplitudes, Parity parity, std::string label) {
  return FockState(std::move(amplitudes), parity, 1.0, std::move(label));
}

FockState FockState::with_norm_constant(std::vector<cplx> amplitudes, Parity parity, double norm_constant,
                                        std::string label) {
  return FockState(std::move(amplitudes), parity, norm_constant, std::move(label));
}

FockState FockState::basis(std::size_t dim, std::size_t n) {
  if (n >= dim) throw InputError("basis index " + std::to_string(n) + " outside dim " + std::to_string(dim));
  std::vector<cplx> amps(dim);
  amps[n] = 1.0;
  return FockState(std::move(amps), n % 2 == 0 ? Parity::even : Parity::odd, 1.0, "|" + std::to_string(n) + ">");
}

cplx FockState::amplitude(long n) const {
  if (n < 0 || n >= static_cast<long>(amplitudes_.size())) return {};
  return amplitudes_[static_cast<std::size_t>(n)];
}

double FockState::norm() const { return std::sqrt(sum_sq(amplitudes_)); }

std::vector<double> FockState::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(), [](const cplx& a) { return std::norm(a); });
  return p;
}

cplx inner_product(const FockState& a, const FockState& b) {
  cplx s{};
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return s;
}

double fidelity(const FockState& a, const FockState& b) {
  const double na = a.norm(), nb = b.norm();
  return std::norm(inner_product(a, b)) / (na * na * nb * nb);
}

double distance(const FockState& a, const FockState& b) {
  const long n = static_cast<long>(std::max(a.dim(), b.dim()));
  double s = 0.0;
  for (long i = 0; i < n; ++i) s += std::norm(a.amplitude(i) - b.amplitude(i));
  return std::sqrt(s);
}

double max_deviation(const FockState& a, const FockState& b) {
  const long n = static_cast<long>(std::max(a.dim(), b.dim()));
  double m = 0.0;
  for (long i = 0; i < n; ++i) m = std::max(m, std::abs(a.amplitude(i) - b.amplitude(i)));
  return m;
}

double max_deviation_up_to_phase(const FockState& a, const FockState& b) {
  const long n = static_cast<long>(std::max(a.dim(), b.dim()));
  long big = 0;
  for (long i = 0; i < n; ++i)
    if (std::abs(a.amplitude(i)) > std::abs(a.amplitude(big))) big = i;
  cplx phase = 1.0;
  if (std::abs(b.amplitude(big)) > 0.0) {
    const cplx r = a.amplitude(big) / b.amplitude(big);
    phase = r / std::abs(r);
  }
  double m = 0.0;
  for (long i = 0; i < n; ++i) m = std::max(m, std::abs(a.amplitude(i) - phase * b.amplitude(i)));
  return m;
}

Parity infer_parity(std::span<const cplx> amplitudes) {
  bool has_even = false, has_odd = false;
  for (std::size_t n = 0; n < amplitudes.size(); ++n) {
    if (amplitudes[n] == cplx{}) continue;
    (n % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) return Parity::full;
  if (has_odd) return Parity::odd;
  return Parity::even;
}

}  // namespace fockgdo
