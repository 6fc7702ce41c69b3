#pragma once

#include <span>

namespace hypsig {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // population variance

// Integrated autocorrelation time with the self-consistent window rule:
// tau(W) = 1/2 + sum_{t<=W} rho(t), window = smallest W with W >= 6 tau(W).
struct AutocorrResult {
  double tau_int = 0.5;
  int window = 0;
};
AutocorrResult integrated_autocorr_time(std::span<const double> xs);

// Jackknife error of the mean over n_blocks contiguous blocks (>= 20 by
// default; the trailing remainder is dropped).
double jackknife_error(std::span<const double> xs, int n_blocks = 20);

struct ObservableStats {
  double mean = 0.0;
  double error = 0.0;    // blocked jackknife
  double tau_int = 0.5;  // in measurement units
  int n = 0;
};
ObservableStats summarize(std::span<const double> xs);

}  // namespace hypsig
