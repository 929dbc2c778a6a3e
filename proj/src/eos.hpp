#ifndef RCNS_EOS_HPP
#define RCNS_EOS_HPP

#include "errors.hpp"

namespace rcns::eos {

// Gamma-law gas in Lagrangian coordinates: p(v) = v^(-gamma), potential
// H(v) = v^(1-gamma)/(gamma-1), pressure coefficient fixed at 1.
struct GasModel {
  double gamma;  // adiabatic index, > 1
  double mu;     // viscosity, > 0
  double tau;    // relaxation time, >= 0

  GasModel(double gamma_, double mu_, double tau_) : gamma(gamma_), mu(mu_), tau(tau_) {
    if (!(gamma > 1.0)) throw InvalidArgumentError("GasModel: gamma must be > 1");
    if (!(mu > 0.0)) throw InvalidArgumentError("GasModel: mu must be > 0");
    if (!(tau >= 0.0)) throw InvalidArgumentError("GasModel: tau must be >= 0");
  }
};

// d^order/dv^order of v^(-gamma); orders 0..3.
double pressure(const GasModel& model, double v, int order = 0);

// Potential energy H(v) = v^(1-gamma)/(gamma-1), with H'(v) = -p(v).
double potential(const GasModel& model, double v);

enum class RelativeKind { pressure, potential };

// F(v|w) = F(v) - F(w) - F'(w)(v - w) for F = p or F = H.
// Nonnegative by convexity, zero iff v == w.
double relative_quantity(const GasModel& model, RelativeKind kind, double v, double w);

struct CharacteristicData {
  double lambda1;  // -sqrt(-p'(v))
  double lambda2;  // +sqrt(-p'(v))
  double z1;       // u + integral of lambda1, zero integration constant
};

CharacteristicData characteristic_data(const GasModel& model, double v, double u);

// Convenience pieces used throughout the wave construction.
double lambda1(const GasModel& model, double v);
double lambda1_prime(const GasModel& model, double v);
double lambda1_second(const GasModel& model, double v);
// Closed-form inverse of lambda1: v with lambda1(v) == w, for w < 0.
double lambda1_inverse(const GasModel& model, double w);

}  // namespace rcns::eos

#endif
