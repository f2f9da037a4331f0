#include "fockgdo/core/dense.hpp"

#include <cmath>

namespace fockgdo::dense {

Matrix to_dense(const OperatorExpr& op) {
  const auto dim = static_cast<Eigen::Index>(op.domain_dim());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : op.terms()) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const Eigen::Index row = n + t.shift;
      if (row < 0 || row >= dim) continue;
      m(row, n) += t.element(static_cast<long>(n));
    }
  }
  return m;
}

Matrix annihilation(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return m;
}

Matrix creation(std::size_t dim) { return annihilation(dim).adjoint(); }

Matrix number(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

Vector to_vector(const FockState& s) {
  Vector v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t n = 0; n < s.dim(); ++n) v(static_cast<Eigen::Index>(n)) = s.amplitudes()[n];
  return v;
}

FockState from_vector(const Vector& v, Parity parity, std::string label) {
  std::vector<cplx> amps(static_cast<std::size_t>(v.size()));
  for (Eigen::Index n = 0; n < v.size(); ++n) amps[static_cast<std::size_t>(n)] = v(n);
  return FockState::unnormalized(std::move(amps), parity, std::move(label));
}

Matrix expm(const Matrix& a) {
  // Higham (2005): theta_13 and the [13/13] Pade coefficients.
  constexpr double theta13 = 5.371920351148152;
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
                          129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
                          1323241920.0,        40840800.0,          960960.0,           16380.0,
                          182.0,               1.0};
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Matrix as = a / std::pow(2.0, squarings);
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix u = as * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace fockgdo::dense
