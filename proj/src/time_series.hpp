#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dpp {

/// Uniformly sampled function of time starting at t = 0. Each sample is a
/// flat vector of values (scalar series use width 1; field series store the
/// flattened field). Sample k corresponds to time k*dt.
struct TimeSeries {
  double dt = 0.0;
  std::vector<std::vector<double>> samples;

  std::size_t steps() const { return samples.empty() ? 0 : samples.size() - 1; }
  std::size_t width() const { return samples.empty() ? 0 : samples.front().size(); }
  double time(std::size_t k) const { return k * dt; }
  double& scalar(std::size_t k) { return samples[k][0]; }
  double scalar(std::size_t k) const { return samples[k][0]; }
};

/// Scalar series sampled from f over N steps of size dt.
TimeSeries sample_scalar(double dt, std::size_t n_steps,
                         const std::function<double(double)>& f);
TimeSeries constant_series(double dt, std::size_t n_steps, double value,
                           std::size_t width = 1);

/// Throws std::invalid_argument unless dt > 0, steps >= 1 and all samples
/// share one width.
void check_series(const TimeSeries& a);

/// Cauchy-Riemann convolution (a*b)(t) = integral_0^t a(t-tau) b(tau) dtau by
/// the trapezoidal rule; sample 0 is exactly zero. Pairing is elementwise;
/// a width-1 series broadcasts against a wider one.
TimeSeries convolve(const TimeSeries& a, const TimeSeries& b);

/// Scalar series of integral a(t-tau).b(tau) dtau contracted with per-entry
/// quadrature weights: sample k = dt * sum_j w_j sum_e weights[e] a_{k-j}[e] b_j[e].
/// Realizes spatial-integral-of-convolution in one pass.
TimeSeries convolve_reduce(const TimeSeries& a, const TimeSeries& b,
                           const std::vector<double>& weights);

/// (a*b)*c, associativity holding to quadrature order.
TimeSeries triple_convolve(const TimeSeries& a, const TimeSeries& b, const TimeSeries& c);

/// Running trapezoidal integral, integral_0^t a.
TimeSeries one_star(const TimeSeries& a);

/// Centered differences inside, second-order one-sided at the endpoints.
/// Requires at least 3 samples.
TimeSeries time_derivative(const TimeSeries& a);

TimeSeries add(const TimeSeries& a, const TimeSeries& b);
TimeSeries subtract(const TimeSeries& a, const TimeSeries& b);
TimeSeries scale(const TimeSeries& a, double c);

/// Max over samples and entries of |a|.
double max_abs(const TimeSeries& a);

}  // namespace dpp
