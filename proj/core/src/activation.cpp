#include "flowcap/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace flowcap {

Activation Activation::leaky_relu(double alpha) {
  if (alpha < 0) throw std::invalid_argument("leaky_relu: slope must be >= 0");
  return {ActivationType::LeakyReLU, alpha, 0};
}

Activation Activation::softplus(double sharpness) {
  if (sharpness <= 0) throw std::invalid_argument("softplus: sharpness must be > 0");
  return {ActivationType::Softplus, sharpness, 0};
}

Activation Activation::monomial(int power) {
  if (power < 2) throw std::invalid_argument("monomial: power must be >= 2");
  return {ActivationType::MonomialPower, static_cast<double>(power), 0};
}

Activation Activation::gaussian(double center, double width) {
  if (width <= 0) throw std::invalid_argument("gaussian: width must be > 0");
  return {ActivationType::Gaussian, center, width};
}

namespace {

// ln(1 + e^u) without overflow for large |u|.
double softplus_stable(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

}  // namespace

double Activation::value(double t) const {
  switch (type_) {
    case ActivationType::ReLU:
      return t > 0 ? t : 0.0;
    case ActivationType::NegReLU:
      return t > 0 ? -t : 0.0;
    case ActivationType::LeakyReLU:
      return t > 0 ? t : p0_ * t;
    case ActivationType::Softplus:
      return softplus_stable(p0_ * t);
    case ActivationType::Sin:
      return std::sin(t);
    case ActivationType::Cos:
      return std::cos(t);
    case ActivationType::MonomialPower:
      return std::pow(t, p0_);
    case ActivationType::Gaussian: {
      const double u = (t - p0_) / p1_;
      return std::exp(-u * u);
    }
    case ActivationType::Quadratic1D:
      return t * t;
  }
  return 0.0;
}

double Activation::derivative(double t) const {
  switch (type_) {
    case ActivationType::ReLU:
      return t > 0 ? 1.0 : 0.0;  // subgradient 0 at the kink
    case ActivationType::NegReLU:
      return t > 0 ? -1.0 : 0.0;
    case ActivationType::LeakyReLU:
      return t > 0 ? 1.0 : p0_;
    case ActivationType::Softplus:
      return p0_ / (1.0 + std::exp(-p0_ * t));
    case ActivationType::Sin:
      return std::cos(t);
    case ActivationType::Cos:
      return -std::sin(t);
    case ActivationType::MonomialPower:
      return p0_ * std::pow(t, p0_ - 1.0);
    case ActivationType::Gaussian: {
      const double u = (t - p0_) / p1_;
      return -2.0 * u / p1_ * std::exp(-u * u);
    }
    case ActivationType::Quadratic1D:
      return 2.0 * t;
  }
  return 0.0;
}

std::string Activation::name() const {
  switch (type_) {
    case ActivationType::ReLU: return "relu";
    case ActivationType::NegReLU: return "neg_relu";
    case ActivationType::LeakyReLU: return "leaky_relu";
    case ActivationType::Softplus: return "softplus";
    case ActivationType::Sin: return "sin";
    case ActivationType::Cos: return "cos";
    case ActivationType::MonomialPower: return "monomial";
    case ActivationType::Gaussian: return "gaussian";
    case ActivationType::Quadratic1D: return "quadratic";
  }
  return "?";
}

}  // namespace flowcap
