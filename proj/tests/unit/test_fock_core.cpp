#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "fockgdo/core/dense.hpp"
#include "fockgdo/core/fock_state.hpp"
#include "fockgdo/core/format.hpp"
#include "fockgdo/core/operator_expr.hpp"
#include "fockgdo/error.hpp"

using namespace fockgdo;

namespace {

std::vector<cplx> amps(const FockState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

double max_abs(const oracle::Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("normalized state records norm constant and support") {
  auto s = FockState::normalized({0.0, 3.0, 0.0, cplx(0.0, 4.0), 0.0}, Parity::full, "t");
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.norm_constant() == doctest::Approx(0.2));
  CHECK(s.support() == Support{1, 3});
  CHECK(s.amplitude(-1) == cplx{});
  CHECK(s.amplitude(99) == cplx{});
  CHECK(infer_parity(s.amplitudes()) == Parity::odd);
}

TEST_CASE("parity metadata is enforced") {
  CHECK_THROWS_AS(FockState::unnormalized({1.0, 1.0}, Parity::even, "x"), InputError);
  CHECK_THROWS_AS(FockState::unnormalized({1.0, 1.0}, Parity::odd, "x"), InputError);
  CHECK_THROWS_AS(FockState::unnormalized({}, Parity::full, "x"), InputError);
  CHECK_THROWS_AS(FockState::unnormalized({NAN}, Parity::full, "x"), NumericalError);
  CHECK_THROWS_AS(FockState::normalized({0.0, 0.0}, Parity::full, "x"), NumericalError);
}

TEST_CASE("overlaps and distances") {
  auto a = FockState::unnormalized({1.0, 0.0, 0.0}, Parity::full, "a");
  auto b = FockState::normalized({1.0, 1.0}, Parity::full, "b");
  CHECK(std::abs(inner_product(a, b) - cplx(1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(fidelity(a, b) == doctest::Approx(0.5));
  // different lengths: union of ranges
  CHECK(distance(a, b) == doctest::Approx(std::sqrt(std::pow(1 - 1 / std::sqrt(2.0), 2) + 0.5)));
  auto c = FockState::unnormalized({cplx(0, 1), 0.0, 0.0}, Parity::full, "c");
  CHECK(max_deviation_up_to_phase(a, c) < 1e-15);
  CHECK(max_deviation(a, c) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("primitive operators match hand-built matrices") {
  const std::size_t dim = 12;
  CHECK(max_abs(dense::to_dense(OperatorExpr::annihilation(dim)) - oracle::a(dim)) < 1e-15);
  CHECK(max_abs(dense::to_dense(OperatorExpr::creation(dim)) - oracle::adag(dim)) < 1e-15);
  CHECK(max_abs(dense::to_dense(OperatorExpr::number(dim)) - oracle::number(dim)) < 1e-13);
  oracle::Mat a2 = oracle::a(dim) * oracle::a(dim);
  CHECK(max_abs(dense::to_dense(OperatorExpr::annihilation(dim, 2)) - a2) < 1e-13);
  oracle::Mat ad3 = oracle::adag(dim) * oracle::adag(dim) * oracle::adag(dim);
  CHECK(max_abs(dense::to_dense(OperatorExpr::creation(dim, 3)) - ad3) < 1e-12);
}

TEST_CASE("ladder evaluates its diagonal at the input index, band at the output") {
  const std::size_t dim = 10;
  auto f = [](long n) { return cplx(1.0 + n, 0.5 * n); };
  auto lad = OperatorExpr::ladder(dim, -1, f);  // a f(N)
  oracle::Mat ref = oracle::a(dim) * oracle::diag(dim, f);
  CHECK(max_abs(dense::to_dense(lad) - ref) < 1e-13);
  auto fa = compose(OperatorExpr::diagonal(dim, f), OperatorExpr::annihilation(dim));  // f(N) a
  CHECK(max_abs(dense::to_dense(fa) - oracle::diag(dim, f) * oracle::a(dim)) < 1e-13);
}

TEST_CASE("compose, adjoint and commutator agree with dense algebra") {
  const std::size_t dim = 14;
  auto g = [](long n) { return std::polar(1.0 / (n + 1.0), 0.3 * n); };
  auto x = compose(OperatorExpr::diagonal(dim, g), OperatorExpr::creation(dim, 2)) + OperatorExpr::annihilation(dim);
  auto y = OperatorExpr::number(dim).scaled(cplx(0.0, 2.0)) - OperatorExpr::creation(dim);
  oracle::Mat X = oracle::diag(dim, g) * oracle::adag(dim) * oracle::adag(dim) + oracle::a(dim);
  oracle::Mat Y = oracle::number(dim) * cplx(0.0, 2.0) - oracle::adag(dim);
  CHECK(max_abs(dense::to_dense(x) - X) < 1e-12);
  CHECK(max_abs(dense::to_dense(adjoint(x)) - X.adjoint()) < 1e-12);
  // products agree on interior columns only; the truncated dense product drops paths above dim
  auto xy = dense::to_dense(compose(x, y));
  oracle::Mat exact = X * Y;
  const long interior = static_cast<long>(dim) - 1 - compose(x, y).max_peak();
  for (long col = 0; col <= interior; ++col)
    CHECK((xy.col(col) - exact.col(col)).cwiseAbs().maxCoeff() < 1e-12);
  // [a, a^dagger] = 1 on interior columns
  auto c = commutator(OperatorExpr::annihilation(dim), OperatorExpr::creation(dim));
  for (long n = 0; n <= static_cast<long>(dim) - 1 - c.max_peak(); ++n) {
    CHECK(std::abs(c.element(n, n) - 1.0) < 1e-13);
    CHECK(std::abs(c.element(n + 1, n)) < 1e-13);
  }
}

TEST_CASE("apply accounts for mass pushed beyond the truncation") {
  const std::size_t dim = 4;
  auto top = FockState::basis(dim, 3);
  auto r = apply(OperatorExpr::creation(dim), top);
  CHECK(r.state.norm() == 0.0);
  CHECK(r.leak == doctest::Approx(4.0));
  auto low = apply(OperatorExpr::annihilation(dim), FockState::basis(dim, 2));
  CHECK(std::abs(low.state.amplitude(1) - std::sqrt(2.0)) < 1e-15);
  CHECK(low.leak == 0.0);
}

TEST_CASE("apply diagnostics") {
  auto s = FockState::basis(5, 1);
  CHECK_THROWS_AS(apply(OperatorExpr::number(6), s), InputError);
  auto bad = OperatorExpr::diagonal(5, [](long n) { return cplx(1.0 / (n - 1.0)); });
  CHECK_THROWS_AS(apply(bad, s), NumericalError);
  // singular element at an unoccupied index is ignored
  CHECK_NOTHROW(apply(bad, FockState::basis(5, 2)));
  CHECK_THROWS_AS(OperatorExpr::number(4) + OperatorExpr::number(5), InputError);
}

TEST_CASE("eigen residual of the number operator on a basis state") {
  auto s = FockState::basis(8, 5);
  auto r = eigen_residual(OperatorExpr::number(8), s, 5.0);
  CHECK(r.norm < 1e-15);
  CHECK(eigen_residual(OperatorExpr::number(8), s, 4.0).norm == doctest::Approx(1.0));
}

TEST_CASE("dense expm agrees with Eigen's matrix exponential") {
  for (std::size_t dim : {4u, 16u, 40u}) {
    const double r = 0.9;
    oracle::Mat k = (oracle::adag(dim) * oracle::adag(dim) - oracle::a(dim) * oracle::a(dim)) * (0.5 * r);
    oracle::Mat h = oracle::number(dim) * cplx(0.0, -0.7) + oracle::a(dim) + oracle::adag(dim);
    CHECK(max_abs(dense::expm(k) - oracle::expm(k)) < 1e-11);
    CHECK(max_abs(dense::expm(h) - oracle::expm(h)) < 1e-9 * std::max(1.0, max_abs(oracle::expm(h))));
  }
  CHECK(max_abs(dense::expm(oracle::Mat::Zero(3, 3)) - oracle::Mat::Identity(3, 3)) < 1e-15);
}

TEST_CASE("formatting keeps 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_complex(cplx(1.0, -0.5)) == "1-0.5i");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}
