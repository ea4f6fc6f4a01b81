#include "time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace dpp {

TimeSeries sample_scalar(double dt, std::size_t n_steps,
                         const std::function<double(double)>& f) {
  TimeSeries s;
  s.dt = dt;
  s.samples.resize(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) s.samples[k] = {f(k * dt)};
  return s;
}

TimeSeries constant_series(double dt, std::size_t n_steps, double value,
                           std::size_t width) {
  TimeSeries s;
  s.dt = dt;
  s.samples.assign(n_steps + 1, std::vector<double>(width, value));
  return s;
}

void check_series(const TimeSeries& a) {
  if (!(a.dt > 0.0)) throw std::invalid_argument("time series: dt must be positive");
  if (a.samples.size() < 2) throw std::invalid_argument("time series: need N >= 1");
  const std::size_t w = a.samples.front().size();
  for (const auto& s : a.samples)
    if (s.size() != w)
      throw std::invalid_argument("time series: inconsistent sample shapes");
}

namespace {

void check_pair(const TimeSeries& a, const TimeSeries& b) {
  check_series(a);
  check_series(b);
  if (a.samples.size() != b.samples.size() || a.dt != b.dt)
    throw std::invalid_argument("time series: mismatched time axes");
}

// Width of the elementwise pairing; width-1 broadcasts.
std::size_t pair_width(const TimeSeries& a, const TimeSeries& b) {
  const std::size_t wa = a.width(), wb = b.width();
  if (wa == wb) return wa;
  if (wa == 1) return wb;
  if (wb == 1) return wa;
  throw std::invalid_argument("time series: incompatible sample shapes");
}

inline double entry(const std::vector<double>& v, std::size_t e) {
  return v.size() == 1 ? v[0] : v[e];
}

}  // namespace

TimeSeries convolve(const TimeSeries& a, const TimeSeries& b) {
  check_pair(a, b);
  const std::size_t w = pair_width(a, b);
  const std::size_t n = a.steps();
  TimeSeries c;
  c.dt = a.dt;
  c.samples.assign(n + 1, std::vector<double>(w, 0.0));
  for (std::size_t k = 1; k <= n; ++k) {
    auto& out = c.samples[k];
    for (std::size_t j = 0; j <= k; ++j) {
      const double wq = (j == 0 || j == k) ? 0.5 : 1.0;
      const auto& av = a.samples[k - j];
      const auto& bv = b.samples[j];
      for (std::size_t e = 0; e < w; ++e) out[e] += wq * entry(av, e) * entry(bv, e);
    }
    for (std::size_t e = 0; e < w; ++e) out[e] *= a.dt;
  }
  return c;
}

TimeSeries convolve_reduce(const TimeSeries& a, const TimeSeries& b,
                           const std::vector<double>& weights) {
  check_pair(a, b);
  const std::size_t w = pair_width(a, b);
  if (weights.size() != w)
    throw std::invalid_argument("convolve_reduce: weight vector size mismatch");
  const std::size_t n = a.steps();
  TimeSeries c;
  c.dt = a.dt;
  c.samples.assign(n + 1, {0.0});
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      const double wq = (j == 0 || j == k) ? 0.5 : 1.0;
      const auto& av = a.samples[k - j];
      const auto& bv = b.samples[j];
      double dot = 0.0;
      for (std::size_t e = 0; e < w; ++e) dot += weights[e] * entry(av, e) * entry(bv, e);
      acc += wq * dot;
    }
    c.samples[k][0] = acc * a.dt;
  }
  return c;
}

TimeSeries triple_convolve(const TimeSeries& a, const TimeSeries& b,
                           const TimeSeries& c) {
  return convolve(convolve(a, b), c);
}

TimeSeries one_star(const TimeSeries& a) {
  check_series(a);
  TimeSeries out;
  out.dt = a.dt;
  out.samples.assign(a.samples.size(), std::vector<double>(a.width(), 0.0));
  for (std::size_t k = 1; k < a.samples.size(); ++k)
    for (std::size_t e = 0; e < a.width(); ++e)
      out.samples[k][e] = out.samples[k - 1][e] +
                          0.5 * a.dt * (a.samples[k - 1][e] + a.samples[k][e]);
  return out;
}

TimeSeries time_derivative(const TimeSeries& a) {
  check_series(a);
  const std::size_t n = a.steps();
  if (n < 2)
    throw std::invalid_argument("time_derivative: need at least 3 samples");
  TimeSeries d;
  d.dt = a.dt;
  d.samples.assign(n + 1, std::vector<double>(a.width(), 0.0));
  const double h = a.dt;
  for (std::size_t e = 0; e < a.width(); ++e) {
    d.samples[0][e] = (-3.0 * a.samples[0][e] + 4.0 * a.samples[1][e] -
                       a.samples[2][e]) /
                      (2.0 * h);
    for (std::size_t k = 1; k < n; ++k)
      d.samples[k][e] = (a.samples[k + 1][e] - a.samples[k - 1][e]) / (2.0 * h);
    d.samples[n][e] = (3.0 * a.samples[n][e] - 4.0 * a.samples[n - 1][e] +
                       a.samples[n - 2][e]) /
                      (2.0 * h);
  }
  return d;
}

namespace {
TimeSeries combine(const TimeSeries& a, const TimeSeries& b, double sb) {
  check_pair(a, b);
  if (a.width() != b.width())
    throw std::invalid_argument("time series: incompatible sample shapes");
  TimeSeries out = a;
  for (std::size_t k = 0; k < out.samples.size(); ++k)
    for (std::size_t e = 0; e < out.samples[k].size(); ++e)
      out.samples[k][e] += sb * b.samples[k][e];
  return out;
}
}  // namespace

TimeSeries add(const TimeSeries& a, const TimeSeries& b) { return combine(a, b, 1.0); }
TimeSeries subtract(const TimeSeries& a, const TimeSeries& b) {
  return combine(a, b, -1.0);
}

TimeSeries scale(const TimeSeries& a, double c) {
  TimeSeries out = a;
  for (auto& s : out.samples)
    for (auto& v : s) v *= c;
  return out;
}

double max_abs(const TimeSeries& a) {
  double m = 0.0;
  for (const auto& s : a.samples)
    for (double v : s) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace dpp
