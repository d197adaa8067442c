#ifndef FLOWCAP_ACTIVATION_HPP
#define FLOWCAP_ACTIVATION_HPP

#include <string>

namespace flowcap {

enum class ActivationType {
  ReLU,
  NegReLU,
  LeakyReLU,       // slope alpha >= 0 on the negative half-line
  Softplus,        // t -> ln(1 + e^{a t}), sharpness a > 0
  Sin,
  Cos,
  MonomialPower,   // t -> t^n, n >= 2
  Gaussian,        // t -> exp(-((t - center)/width)^2)
  Quadratic1D,     // t -> t^2
};

/// Scalar activation with evaluation and (one-sided-consistent) derivative.
/// At the ReLU kink the derivative is 0, matching the flow fixed-point
/// convention: sigma(0) = 0 implies 0 is an equilibrium.
class Activation {
 public:
  static Activation relu() { return {ActivationType::ReLU, 0, 0}; }
  static Activation neg_relu() { return {ActivationType::NegReLU, 0, 0}; }
  static Activation leaky_relu(double alpha);
  static Activation softplus(double sharpness);
  static Activation sin() { return {ActivationType::Sin, 0, 0}; }
  static Activation cos() { return {ActivationType::Cos, 0, 0}; }
  static Activation monomial(int power);
  static Activation gaussian(double center, double width);
  static Activation quadratic() { return {ActivationType::Quadratic1D, 0, 0}; }

  ActivationType type() const { return type_; }
  double param0() const { return p0_; }  // alpha / sharpness / power / center
  double param1() const { return p1_; }  // width

  double value(double t) const;
  double derivative(double t) const;

  bool operator==(const Activation& other) const = default;

  std::string name() const;

 private:
  Activation(ActivationType t, double p0, double p1)
      : type_(t), p0_(p0), p1_(p1) {}

  ActivationType type_;
  double p0_;
  double p1_;
};

}  // namespace flowcap

#endif
