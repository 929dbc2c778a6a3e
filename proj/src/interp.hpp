#ifndef RCNS_INTERP_HPP
#define RCNS_INTERP_HPP

#include <cstddef>
#include <vector>

namespace rcns::interp {

// Monotone piecewise-cubic Hermite interpolant on strictly increasing
// abscissae. Node derivatives may be supplied (they are projected onto the
// Fritsch-Carlson monotone region) or estimated from the data with the
// usual weighted-harmonic-mean rule.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

  double value(double x) const;
  double derivative(double x) const;
  void eval(double x, double& value, double& derivative) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }
  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& ordinates() const { return y_; }
  const std::vector<double>& node_derivatives() const { return d_; }

 private:
  void validate_and_limit();
  std::size_t locate(double x) const;

  std::vector<double> x_, y_, d_;
};

}  // namespace rcns::interp

#endif
