#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "fockgdo/error.hpp"
#include "fockgdo/states/states.hpp"

using namespace fockgdo;
using namespace fockgdo::states;

namespace {

double worst_pmf(const FockState& s, auto pmf) {
  double w = 0.0;
  const auto p = s.probabilities();
  for (std::size_t n = 0; n < p.size(); ++n) w = std::max(w, std::abs(p[n] - pmf(static_cast<long>(n))));
  return w;
}

oracle::Vec vec(const FockState& s) { return oracle::from({s.amplitudes().begin(), s.amplitudes().end()}); }

}  // namespace

TEST_CASE("binomial matches the binomial pmf") {
  auto s = binomial(0.5, 1, 8);
  CHECK(s.probabilities()[0] == doctest::Approx(0.5));
  CHECK(s.probabilities()[1] == doctest::Approx(0.5));
  CHECK(s.support() == Support{0, 1});
  for (double eta : {0.1, 0.5, 0.9})
    for (int M : {1, 4, 10}) {
      auto b = binomial(eta, M, M + 8);
      CHECK(worst_pmf(b, [&](long n) { return oracle::binomial_pmf(M, eta, n); }) < 1e-12);
    }
  CHECK_THROWS_WITH_AS(binomial(1.5, 4, 12), "eta must lie in (0,1), got 1.5", InputError);
  CHECK_THROWS_AS(binomial(0.5, 4, 4), InputError);
}

TEST_CASE("coherent matches Poisson and rejects short truncations") {
  auto s = coherent(1.0, 64);
  CHECK(worst_pmf(s, [](long n) { return oracle::poisson_pmf(1.0, n); }) < 1e-12);
  auto z = coherent(0.0, 8);
  CHECK(z.probabilities()[0] == 1.0);
  CHECK_THROWS_AS(coherent(4.0, 16), TruncationError);
}

TEST_CASE("hypergeometric with integer parameters is the urn distribution") {
  auto s = hypergeometric(40.0, 0.5, 5, 13);
  CHECK(worst_pmf(s, [](long n) { return oracle::hypergeometric_pmf(40, 20, 5, n); }) < 1e-12);
  auto t = hypergeometric(50.0, 0.3, 6, 14);
  CHECK(worst_pmf(t, [](long n) { return oracle::hypergeometric_pmf(50, 15, 6, n); }) < 1e-12);
  CHECK_THROWS_AS(hypergeometric(6.0, 0.5, 5, 13), InputError);
}

TEST_CASE("generalized binomial is the falling-factorial product") {
  CHECK(generalized_binomial(5.0, 2) == doctest::Approx(10.0));
  CHECK(generalized_binomial(2.5, 3) == doctest::Approx(2.5 * 1.5 * 0.5 / 6.0));
  CHECK(generalized_binomial(-1.0, 3) == doctest::Approx(-1.0));
  CHECK(generalized_binomial(7.0, 0) == 1.0);
}

TEST_CASE("Polya state limits and fidelities") {
  auto ps = polya(0.4, 1e-6, 5, 13);
  auto bs = binomial(0.4, 5, 13);
  CHECK(fidelity(ps, bs) > 0.999);
  CHECK_THROWS_AS(polya(0.4, 0.0, 5, 13), InputError);
  // gamma = 1, eta = 1/2: beta-binomial with a = b = 1/2
  auto u = polya(0.5, 2.0, 3, 8);
  CHECK(u.norm() == doctest::Approx(1.0));
}

TEST_CASE("limit fidelities between finite families") {
  auto bs = binomial(1.0 / 400.0, 400, 408);
  auto cs = coherent(1.0, 408);
  CHECK(fidelity(bs, cs) > 0.99);
  auto hgs = hypergeometric(1e4, 0.5, 5, 13);
  CHECK(fidelity(hgs, binomial(0.5, 5, 13)) > 0.999);
}

TEST_CASE("reciprocal binomial and phase states") {
  auto r = reciprocal_binomial(0.7, 4, 12);
  double z = 0.0;
  for (int n = 0; n <= 4; ++n) z += 1.0 / static_cast<double>(oracle::choose(4, n));
  CHECK(r.probabilities()[1] == doctest::Approx(0.25 / z));
  CHECK(std::arg(r.amplitudes()[1] / r.amplitudes()[0]) == doctest::Approx(0.7));

  for (int m1 = 0; m1 <= 7; ++m1)
    for (int m2 = 0; m2 <= 7; ++m2) {
      auto a = pegg_barnett_phase({0.0, 7, m1}, 7, 15);
      auto b = pegg_barnett_phase({0.0, 7, m2}, 7, 15);
      CHECK(std::abs(inner_product(a, b)) == doctest::Approx(m1 == m2 ? 1.0 : 0.0).epsilon(1e-12));
    }
  CHECK(PhaseGrid{0.1, 7, 2}.theta() == doctest::Approx(0.1 + 4 * std::numbers::pi / 8));
  CHECK_THROWS_AS(pegg_barnett_phase({0.0, 6, 2}, 7, 15), InputError);
  CHECK_THROWS_AS((PhaseGrid{0.0, 7, 8}.theta()), InputError);
}

TEST_CASE("generalized geometric state") {
  const cplx Y = std::polar(0.3, std::numbers::pi / 3);
  auto g = generalized_geometric(Y, 6, 14);
  for (int n = 0; n <= 6; ++n)
    CHECK(g.probabilities()[static_cast<std::size_t>(n)] ==
          doctest::Approx(std::pow(0.3, n) * 0.7 / (1 - std::pow(0.3, 7))));
  CHECK_THROWS_AS(generalized_geometric(cplx(0.0, 1.0), 6, 14), InputError);
}

TEST_CASE("geometric, negative binomial and shifted negative binomial") {
  auto gs = geometric(0.4, 128);
  CHECK(worst_pmf(gs, [](long n) { return oracle::geometric_pmf(0.4, n); }) < 1e-12);
  auto nb = negative_binomial(0.3, 3, 128);
  CHECK(worst_pmf(nb, [](long n) { return oracle::negative_binomial_pmf(0.3, 3, n); }) < 1e-12);
  CHECK(max_deviation(new_negative_binomial(0.4, 0, 128), gs) < 1e-15);
  auto nn = new_negative_binomial(0.3, 3, 256);
  for (std::size_t n = 0; n < 3; ++n) CHECK(nn.amplitudes()[n] == cplx{});
  CHECK(nn.probabilities()[5] ==
        doctest::Approx(static_cast<double>(oracle::choose(5, 3)) * std::pow(0.3, 4) * std::pow(0.7, 2)));
  CHECK_THROWS_AS(new_negative_binomial(0.3, 3, 64), TruncationError);
  CHECK_THROWS_AS(negative_binomial(0.3, 0, 64), InputError);
}

TEST_CASE("photon addition") {
  const std::size_t dim = 128;
  auto nn = new_negative_binomial(0.4, 2, dim);
  auto pa = photon_add(geometric(0.4, dim), 2);
  CHECK(max_deviation_up_to_phase(pa, nn) < 1e-12);

  // direct a^dagger^M on the coherent state, normalized by hand
  const cplx alpha(1.0, 0.5);
  auto cs = coherent(alpha, dim);
  oracle::Mat ad = oracle::adag(dim);
  oracle::Vec v = ad * (ad * vec(cs));
  v /= v.norm();
  auto pacs = photon_add(cs, 2);
  CHECK((vec(pacs) - v).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pacs.norm_constant() == doctest::Approx(1.0 / std::sqrt(2 + 4 * std::norm(alpha) + std::pow(std::norm(alpha), 2))));

  for (const auto& s : {cs, nn, binomial(0.3, 4, 12), kerr(1.0, 0.3, 64)})
    CHECK(max_deviation(photon_add(s, 0), s) == 0.0);
  CHECK(photon_add(FockState::basis(4, 1), 1).parity() == Parity::even);
  CHECK_THROWS_AS(photon_add(FockState::basis(4, 3), 1), TruncationError);
}

TEST_CASE("Kerr state keeps Poisson statistics and reduces to the coherent state") {
  auto k = kerr(1.0, 0.3, 64);
  CHECK(worst_pmf(k, [](long n) { return oracle::poisson_pmf(1.0, n); }) < 1e-12);
  CHECK(max_deviation(kerr(cplx(0.4, 0.7), 0.0, 64), coherent(cplx(0.4, 0.7), 64)) < 1e-15);
  CHECK(std::arg(k.amplitudes()[2] / k.amplitudes()[1]) == doctest::Approx(-0.6));
}

TEST_CASE("intermediate states from the recursion") {
  // f(n) = n + 1 makes the sequence decay; check the defining relation densely
  const std::size_t dim = 64;
  IntermediateParams p{0.5, cplx(1.2, 0.0), [](long n) { return cplx(n + 1.0); }};
  auto s = intermediate_nlcs(p, dim);
  oracle::Mat op = oracle::number(dim) * std::sqrt(0.5) +
                   oracle::diag(dim, [](long n) { return cplx(n + 1.0); }) * oracle::a(dim) * std::sqrt(0.5);
  oracle::Vec x = vec(s);
  CHECK((op * x - 1.2 * x).norm() < 1e-10);

  IntermediateParams small{1e-8, cplx(1.0), [](long) { return cplx(1.0); }};
  CHECK(fidelity(intermediate_nlcs(small, dim), coherent(1.0, dim)) > 0.999);

  IntermediateParams bad{0.5, cplx(1.2), [](long n) { return std::polar(1.0, -0.2 * n); }};
  CHECK_THROWS_AS(intermediate_nlcs(bad, dim), TruncationError);
  const auto seq = intermediate_sequence(bad, 40);
  CHECK(seq.front() == cplx(1.0));
  CHECK(std::abs(seq.back()) > std::abs(seq[20]));

  IntermediateParams zero_f{0.5, cplx(1.2), [](long n) { return cplx(n == 3 ? 0.0 : 1.0); }};
  CHECK_THROWS_AS(intermediate_nlcs(zero_f, dim), InputError);
}
