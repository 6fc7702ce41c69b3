#include "hypsig/stats.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace hypsig {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size());
}

AutocorrResult integrated_autocorr_time(std::span<const double> xs) {
  AutocorrResult out;
  const std::size_t n = xs.size();
  if (n < 8) return out;
  const double m = mean(xs);
  const double c0 = variance(xs);
  if (c0 <= 0.0) return out;

  const std::size_t t_max = n / 4;
  double tau = 0.5;
  for (std::size_t t = 1; t <= t_max; ++t) {
    double ct = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) ct += (xs[i] - m) * (xs[i + t] - m);
    ct /= static_cast<double>(n - t);
    tau += ct / c0;
    if (static_cast<double>(t) >= 6.0 * tau) {
      out.tau_int = std::max(0.5, tau);
      out.window = static_cast<int>(t);
      return out;
    }
  }
  out.tau_int = std::max(0.5, tau);
  out.window = static_cast<int>(t_max);
  return out;
}

double jackknife_error(std::span<const double> xs, int n_blocks) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  if (n_blocks > static_cast<int>(n)) n_blocks = static_cast<int>(n);
  const std::size_t blen = n / static_cast<std::size_t>(n_blocks);
  if (blen == 0) return 0.0;
  const std::size_t used = blen * static_cast<std::size_t>(n_blocks);

  double total = 0.0;
  for (std::size_t i = 0; i < used; ++i) total += xs[i];

  std::vector<double> loo(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    double bs = 0.0;
    for (std::size_t i = b * blen; i < (b + 1) * blen; ++i) bs += xs[i];
    loo[b] = (total - bs) / static_cast<double>(used - blen);
  }
  const double lm = mean(loo);
  double s = 0.0;
  for (double v : loo) s += (v - lm) * (v - lm);
  s *= static_cast<double>(n_blocks - 1) / static_cast<double>(n_blocks);
  return std::sqrt(s);
}

ObservableStats summarize(std::span<const double> xs) {
  ObservableStats st;
  st.n = static_cast<int>(xs.size());
  if (xs.empty()) return st;
  st.mean = mean(xs);
  st.tau_int = integrated_autocorr_time(xs).tau_int;
  st.error = jackknife_error(xs);
  return st;
}

}  // namespace hypsig
