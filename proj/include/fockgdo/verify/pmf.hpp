#pragma once

#include <complex>

/// Photon-number distributions evaluated from log-gamma, independent of
/// the amplitude recurrences in the state constructors.
namespace fockgdo::verify::pmf {

double log_choose(double x, double k);

double poisson(double mean, long n);
double binomial(int M, double eta, long n);
/// C(L eta, n) C(L (1-eta), M-n) / C(L, M); classical hypergeometric for integer L eta.
double hypergeometric(double L, double eta, int M, long n);
/// Beta-binomial with a = eta/gamma, b = (1-eta)/gamma.
double polya(double eta, double gamma, int M, long n);
double reciprocal_binomial(int M, long n);
double flat(int M, long n);
double generalized_geometric(double abs_y, int M, long n);
double geometric(double eta, long n);
double negative_binomial(double eta, int M, long n);
double new_negative_binomial(double eta, int M, long n);
/// Photon-added coherent state: e^{-|a|^2} |a|^{2(n-M)} n! / ((n-M)!^2 M! L_M(-|a|^2)).
double photon_added_coherent(double abs_alpha2, int M, long n);
/// Squeezed vacuum (seed 0) or first excited (seed 1), full-space index n.
double squeezed(double r, int seed, long n);
/// Even (j=0) / odd (j=1) coherent state, full-space index n.
double even_odd_coherent(double abs_alpha2, int j, long n);

}  // namespace fockgdo::verify::pmf
