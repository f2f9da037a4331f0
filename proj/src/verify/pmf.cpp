#include "fockgdo/verify/pmf.hpp"

#include <cmath>

namespace fockgdo::verify::pmf {

double log_choose(double x, double k) { return std::lgamma(x + 1.0) - std::lgamma(k + 1.0) - std::lgamma(x - k + 1.0); }

double poisson(double mean, long n) {
  if (n < 0) return 0.0;
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

double binomial(int M, double eta, long n) {
  if (n < 0 || n > M) return 0.0;
  return std::exp(log_choose(M, n) + n * std::log(eta) + (M - n) * std::log1p(-eta));
}

double hypergeometric(double L, double eta, int M, long n) {
  if (n < 0 || n > M) return 0.0;
  return std::exp(log_choose(L * eta, n) + log_choose(L * (1.0 - eta), M - n) - log_choose(L, M));
}

double polya(double eta, double gamma, int M, long n) {
  if (n < 0 || n > M) return 0.0;
  const double a = eta / gamma, b = (1.0 - eta) / gamma;
  const double lbeta_num = std::lgamma(n + a) + std::lgamma(M - n + b) - std::lgamma(M + a + b);
  const double lbeta_den = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::exp(log_choose(M, n) + lbeta_num - lbeta_den);
}

double reciprocal_binomial(int M, long n) {
  if (n < 0 || n > M) return 0.0;
  double z = 0.0;
  for (int k = 0; k <= M; ++k) z += std::exp(-log_choose(M, k));
  return std::exp(-log_choose(M, n)) / z;
}

double flat(int M, long n) { return (n < 0 || n > M) ? 0.0 : 1.0 / (M + 1.0); }

double generalized_geometric(double y, int M, long n) {
  if (n < 0 || n > M) return 0.0;
  return std::pow(y, static_cast<double>(n)) * (1.0 - y) / (1.0 - std::pow(y, M + 1.0));
}

double geometric(double eta, long n) { return n < 0 ? 0.0 : eta * std::exp(n * std::log1p(-eta)); }

double negative_binomial(double eta, int M, long n) {
  if (n < 0) return 0.0;
  return std::exp(log_choose(M + n - 1.0, n) + M * std::log1p(-eta) + n * std::log(eta));
}

double new_negative_binomial(double eta, int M, long n) {
  if (n < M) return 0.0;
  return std::exp(log_choose(n, M) + (M + 1.0) * std::log(eta) + (n - M) * std::log1p(-eta));
}

double photon_added_coherent(double a2, int M, long n) {
  if (n < M) return 0.0;
  // L_M(-x) = sum_k C(M,k) x^k / k!
  double lag = 0.0;
  for (int k = 0; k <= M; ++k) lag += std::exp(log_choose(M, k) - std::lgamma(k + 1.0)) * std::pow(a2, k);
  const double k = static_cast<double>(n - M);
  const double lp = (k == 0.0 ? 0.0 : k * std::log(a2)) - a2 + std::lgamma(n + 1.0) - 2.0 * std::lgamma(k + 1.0) -
                    std::lgamma(M + 1.0);
  return std::exp(lp) / lag;
}

double squeezed(double r, int seed, long n) {
  if (n < seed || (n - seed) % 2 != 0) return 0.0;
  const double k = static_cast<double>((n - seed) / 2);
  const double t = std::tanh(r);
  const double pref = seed == 0 ? -std::log(std::cosh(r)) : -3.0 * std::log(std::cosh(r));
  const double tk = k == 0.0 ? 0.0 : 2.0 * k * std::log(t);
  return std::exp(pref + std::lgamma(n + 1.0) - 2.0 * std::lgamma(k + 1.0) - 2.0 * k * std::log(2.0) + tk);
}

double even_odd_coherent(double a2, int j, long n) {
  if (n < j || (n - j) % 2 != 0) return 0.0;
  const double z = j == 0 ? std::cosh(a2) : std::sinh(a2);
  const double la = n == 0 ? 0.0 : n * std::log(a2);
  return std::exp(la - std::lgamma(n + 1.0)) / z;
}

}  // namespace fockgdo::verify::pmf
