#pragma once

#include <Eigen/Dense>

#include "fockgdo/core/fock_state.hpp"
#include "fockgdo/core/operator_expr.hpp"

namespace fockgdo::dense {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Materializes the truncated dim x dim matrix <m|X|n>, 0 <= m, n < dim.
Matrix to_dense(const OperatorExpr& op);

/// Truncated matrices of the primitive operators.
Matrix annihilation(std::size_t dim);
Matrix creation(std::size_t dim);
Matrix number(std::size_t dim);

Vector to_vector(const FockState& s);
FockState from_vector(const Vector& v, Parity parity, std::string label);

/// exp(A) by scaling and squaring with a degree-13 Pade approximant.
Matrix expm(const Matrix& a);

}  // namespace fockgdo::dense
