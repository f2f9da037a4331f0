#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "fockgdo/core/dense.hpp"
#include "fockgdo/error.hpp"
#include "fockgdo/ladder/ladder.hpp"
#include "fockgdo/two_photon/two_photon.hpp"

using namespace fockgdo;
using namespace fockgdo::two_photon;

namespace {

oracle::Vec vec(const FockState& s) { return oracle::from({s.amplitudes().begin(), s.amplitudes().end()}); }

// Full-space a^dagger^2/2 restricted to the rows/cols 2n+j.
oracle::Mat restricted(const oracle::Mat& full, int j, std::size_t sdim) {
  oracle::Mat m(sdim, sdim);
  for (std::size_t r = 0; r < sdim; ++r)
    for (std::size_t c = 0; c < sdim; ++c) m(r, c) = full(2 * r + j, 2 * c + j);
  return m;
}

}  // namespace

TEST_CASE("sector operators are the restriction of a^2/2 and a^dagger^2/2") {
  for (int j : {0, 1}) {
    const std::size_t sdim = 32, fdim = 2 * sdim + 1;
    auto rep = su11_sector(j, sdim);
    oracle::Mat kp = restricted(oracle::adag(fdim) * oracle::adag(fdim) / 2.0, j, sdim);
    oracle::Mat km = restricted(oracle::a(fdim) * oracle::a(fdim) / 2.0, j, sdim);
    oracle::Mat k0 = restricted(oracle::number(fdim) / 2.0 + oracle::Mat::Identity(fdim, fdim) / 4.0, j, sdim);
    CHECK((dense::to_dense(rep.K_plus) - kp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((dense::to_dense(rep.K_minus) - km).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((dense::to_dense(rep.K_zero) - k0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(rep.bargmann_k == doctest::Approx(j == 0 ? 0.25 : 0.75));
    for (const auto& c : verify_su11(rep)) {
      INFO(c.name << " " << c.residual);
      CHECK(c.passed);
    }
    CHECK(verify_embedding(j, 64).passed);
  }
}

TEST_CASE("Casimir is k(k-1) on both sectors") {
  for (int j : {0, 1}) {
    const std::size_t sdim = 20;
    auto rep = su11_sector(j, sdim);
    oracle::Mat kp = dense::to_dense(rep.K_plus), km = dense::to_dense(rep.K_minus), k0 = dense::to_dense(rep.K_zero);
    oracle::Mat cas = k0 * k0 - (kp * km + km * kp) / 2.0;
    for (std::size_t n = 0; n + 1 < sdim; ++n) CHECK(std::abs(cas(n, n) + 3.0 / 16.0) < 1e-12);
  }
}

TEST_CASE("sector embedding") {
  auto s = squeezed_vacuum(0.5, 0.2, 64);
  auto e = sector_embed(s);
  CHECK(e.j == 0);
  CHECK(e.state.dim() == sector_dim(64, 0));
  CHECK(max_deviation(sector_unembed(e), s) == 0.0);
  CHECK(sector_dim(65, 1) == 32);
  CHECK(sector_dim(65, 0) == 33);
  auto mixed = FockState::normalized({1.0, 1.0}, Parity::full, "m");
  CHECK_THROWS_AS(sector_embed(mixed), InputError);
}

TEST_CASE("squeezed states equal the matrix exponential on vacuum and |1>") {
  const double r = 0.8, theta = 0.5;
  const std::size_t dim = 128;
  const cplx xi = std::polar(r, theta);
  oracle::Mat gen = (oracle::adag(dim) * oracle::adag(dim) * xi - oracle::a(dim) * oracle::a(dim) * std::conj(xi)) / 2.0;
  oracle::Mat S = oracle::expm(gen);
  auto svs = squeezed_vacuum(r, theta, dim);
  auto sfes = squeezed_first_excited(r, theta, dim);
  oracle::Vec v0 = S.col(0), v1 = S.col(1);
  CHECK(std::abs(1.0 - std::norm(v0.dot(vec(svs)))) < 1e-10);
  CHECK(std::abs(1.0 - std::norm(v1.dot(vec(sfes)))) < 1e-10);
  // phase convention: same sign as the exponential, not just the same ray
  CHECK((v0 - vec(svs)).norm() < 1e-8);
  CHECK((v1 - vec(sfes)).norm() < 1e-8);
  for (int seed : {0, 1})
    for (const auto& c : verify_disentangling(r, theta, dim, seed)) {
      INFO(c.name << " " << c.residual << " leak " << c.leak);
      CHECK(c.passed);
    }
}

TEST_CASE("two-photon nonlinear eigenrelations") {
  const double r = 0.8, theta = 0.5;
  const std::size_t dim = 128;
  const cplx z = std::polar(std::tanh(r), theta);
  auto svs = squeezed_vacuum(r, theta, dim);
  auto sfes = squeezed_first_excited(r, theta, dim);
  oracle::Mat a2 = oracle::a(dim) * oracle::a(dim);
  oracle::Mat f1 = oracle::diag(dim, [](long n) { return cplx(1.0 / (n + 1.0)); });
  oracle::Mat f2 = oracle::diag(dim, [](long n) { return cplx(1.0 / (n + 2.0)); });
  CHECK((f1 * a2 * vec(svs) - z * vec(svs)).norm() < 1e-10);
  CHECK((f2 * a2 * vec(sfes) - z * vec(sfes)).norm() < 1e-10);

  for (Parity p : {Parity::even, Parity::odd}) {
    const cplx alpha = 1.1;
    auto e = even_odd_coherent(alpha, p, 64);
    CHECK((a2.topLeftCorner(64, 64) * vec(e) - alpha * alpha * vec(e)).norm() < 1e-10);
  }
  CHECK_THROWS_AS(even_odd_coherent(0.0, Parity::odd, 16), InputError);
  CHECK(even_odd_coherent(0.0, Parity::even, 16).probabilities()[0] == 1.0);
}

TEST_CASE("two-photon generators from sector coefficients") {
  auto s = squeezed_first_excited(0.6, 0.0, 128);
  auto e = sector_embed(s);
  std::vector<cplx> c(e.state.amplitudes().begin(), e.state.amplitudes().end());
  while (c.back() == cplx{}) c.pop_back();
  auto forms = two_photon_ladder(c, 1);
  auto st = FockState::unnormalized(c, Parity::full, "sector");
  CHECK(eigen_residual(forms.creation_form, st, 0.0).norm < 1e-10);
  CHECK(eigen_residual(forms.annihilation_form, st, 0.0).norm < 1e-10);
  auto t = two_photon_gdo(c, 1);
  for (long n = 1; n < 30; ++n)
    CHECK(t.structure_fn(n) == doctest::Approx(n * n * std::norm(c[n] / c[n - 1])).epsilon(1e-12));
  CHECK(t.structure_fn(0) == 0.0);
  for (const auto& ch : ladder::verify_gdo_axioms(t, c.size())) {
    INFO(ch.name);
    CHECK(ch.passed);
  }
}

TEST_CASE("exponential series of a nilpotent band operator") {
  const std::size_t dim = 40;
  auto k = two_photon::su11_full(dim).K_minus.scaled(-0.3);
  auto v = squeezed_vacuum(0.4, 0.0, dim);
  auto res = apply_exponential_series(k, v);
  oracle::Vec ref = oracle::expm(dense::to_dense(k)) * vec(v);
  CHECK((vec(res.state) - ref).norm() < 1e-12);
  CHECK(res.leak == 0.0);
}
