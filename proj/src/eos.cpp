#include "eos.hpp"

#include <cmath>

namespace rcns::eos {

namespace {
void require_positive(double v, const char* who) {
  if (!(v > 0.0)) throw DomainError(std::string(who) + ": specific volume must be positive");
}
}  // namespace

double pressure(const GasModel& model, double v, int order) {
  require_positive(v, "pressure");
  const double g = model.gamma;
  switch (order) {
    case 0:
      return std::pow(v, -g);
    case 1:
      return -g * std::pow(v, -g - 1.0);
    case 2:
      return g * (g + 1.0) * std::pow(v, -g - 2.0);
    case 3:
      return -g * (g + 1.0) * (g + 2.0) * std::pow(v, -g - 3.0);
    default:
      throw UnsupportedError("pressure: derivative order must be in 0..3");
  }
}

double potential(const GasModel& model, double v) {
  require_positive(v, "potential");
  return std::pow(v, 1.0 - model.gamma) / (model.gamma - 1.0);
}

double relative_quantity(const GasModel& model, RelativeKind kind, double v, double w) {
  require_positive(v, "relative_quantity");
  require_positive(w, "relative_quantity");
  if (kind == RelativeKind::pressure) {
    return pressure(model, v) - pressure(model, w) - pressure(model, w, 1) * (v - w);
  }
  // H'(w) = -p(w)
  return potential(model, v) - potential(model, w) + pressure(model, w) * (v - w);
}

double lambda1(const GasModel& model, double v) {
  require_positive(v, "lambda1");
  return -std::sqrt(model.gamma) * std::pow(v, -(model.gamma + 1.0) / 2.0);
}

double lambda1_prime(const GasModel& model, double v) {
  require_positive(v, "lambda1_prime");
  const double g = model.gamma;
  return std::sqrt(g) * (g + 1.0) / 2.0 * std::pow(v, -(g + 3.0) / 2.0);
}

double lambda1_second(const GasModel& model, double v) {
  require_positive(v, "lambda1_second");
  const double g = model.gamma;
  return -std::sqrt(g) * (g + 1.0) * (g + 3.0) / 4.0 * std::pow(v, -(g + 5.0) / 2.0);
}

double lambda1_inverse(const GasModel& model, double w) {
  if (!(w < 0.0)) throw DomainError("lambda1_inverse: lambda1 is negative on v > 0");
  return std::pow(model.gamma / (w * w), 1.0 / (model.gamma + 1.0));
}

CharacteristicData characteristic_data(const GasModel& model, double v, double u) {
  require_positive(v, "characteristic_data");
  const double g = model.gamma;
  const double l1 = lambda1(model, v);
  // antiderivative of lambda1 with zero integration constant
  const double anti = 2.0 * std::sqrt(g) / (g - 1.0) * std::pow(v, -(g - 1.0) / 2.0);
  return {l1, -l1, u + anti};
}

}  // namespace rcns::eos
