#include "interp.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace rcns::interp {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw InvalidArgumentError("MonotoneCubic: need matching arrays of size >= 2");
  const std::size_t n = x_.size();
  d_.assign(n, 0.0);
  std::vector<double> h(n - 1), s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_[0] = s[0];
  d_[n - 1] = s[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] * s[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
  validate_and_limit();
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
  if (x_.size() != y_.size() || x_.size() != d_.size() || x_.size() < 2)
    throw InvalidArgumentError("MonotoneCubic: need matching arrays of size >= 2");
  validate_and_limit();
}

void MonotoneCubic::validate_and_limit() {
  const std::size_t n = x_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i]))
      throw InvalidArgumentError("MonotoneCubic: abscissae must be strictly increasing");
  }
  // Fritsch-Carlson projection: on each interval the normalized slopes
  // (alpha, beta) must lie inside the circle of radius 3 for the cubic to
  // be monotone; flat data forces flat derivatives.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double s = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (s == 0.0) {
      d_[i] = 0.0;
      d_[i + 1] = 0.0;
      continue;
    }
    const double alpha = d_[i] / s;
    const double beta = d_[i + 1] / s;
    if (alpha < 0.0) d_[i] = 0.0;
    if (beta < 0.0) d_[i + 1] = 0.0;
    const double a = d_[i] / s;
    const double b = d_[i + 1] / s;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double scale = 3.0 / std::sqrt(r2);
      d_[i] = scale * a * s;
      d_[i + 1] = scale * b * s;
    }
  }
}

std::size_t MonotoneCubic::locate(double x) const {
  // index of interval [x_i, x_{i+1}] containing x, clamped to the range
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  return i;
}

void MonotoneCubic::eval(double x, double& value, double& derivative) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  value = h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
  const double g00 = (6.0 * t2 - 6.0 * t) / h;
  const double g10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double g01 = (-6.0 * t2 + 6.0 * t) / h;
  const double g11 = 3.0 * t2 - 2.0 * t;
  derivative = g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

double MonotoneCubic::value(double x) const {
  double v, d;
  eval(x, v, d);
  return v;
}

double MonotoneCubic::derivative(double x) const {
  double v, d;
  eval(x, v, d);
  return d;
}

}  // namespace rcns::interp
