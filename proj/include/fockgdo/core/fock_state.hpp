#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fockgdo {

using cplx = std::complex<double>;

enum class Parity { full, even, odd };

std::string_view to_string(Parity p);

/// Index range outside which all amplitudes are exactly zero.
/// An all-zero vector has n_max < n_min.
struct Support {
  long n_min = 0;
  long n_max = -1;

  bool empty() const { return n_max < n_min; }
  bool operator==(const Support&) const = default;
};

/// Amplitude vector on the truncated basis |0>, ..., |dim-1>, plus metadata.
/// Immutable after construction.
class FockState {
 public:
  /// Rescales `amplitudes` to unit norm; norm_constant records the factor applied.
  static FockState normalized(std::vector<cplx> amplitudes, Parity parity, std::string label);

  /// Keeps `amplitudes` as given (norm_constant = 1).
  static FockState unnormalized(std::vector<cplx> amplitudes, Parity parity, std::string label);

  /// Same as unnormalized but records an externally computed normalization factor.
  static FockState with_norm_constant(std::vector<cplx> amplitudes, Parity parity, double norm_constant,
                                      std::string label);

  static FockState basis(std::size_t dim, std::size_t n);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  /// Amplitude at n, zero for indices outside [0, dim).
  cplx amplitude(long n) const;
  Support support() const { return support_; }
  Parity parity() const { return parity_; }
  double norm_constant() const { return norm_constant_; }
  const std::string& label() const { return label_; }

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  FockState(std::vector<cplx> amplitudes, Parity parity, double norm_constant, std::string label);

  std::vector<cplx> amplitudes_;
  Support support_;
  Parity parity_ = Parity::full;
  double norm_constant_ = 1.0;
  std::string label_;
};

/// <a|b>, summed over the indices both states retain.
cplx inner_product(const FockState& a, const FockState& b);

/// |<a|b>|^2 / (||a||^2 ||b||^2).
double fidelity(const FockState& a, const FockState& b);

/// ||a - b|| over the union of both index ranges.
double distance(const FockState& a, const FockState& b);

/// max_n |a_n - e^{i phi} b_n| with phi chosen to align the largest component of a.
double max_deviation_up_to_phase(const FockState& a, const FockState& b);

/// max_n |a_n - b_n|.
double max_deviation(const FockState& a, const FockState& b);

/// Parity inferred from which amplitudes are nonzero (vacuum counts as even).
Parity infer_parity(std::span<const cplx> amplitudes);

}  // namespace fockgdo
