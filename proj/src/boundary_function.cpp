#include "speclab/boundary_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

BoundaryFunction::BoundaryFunction(double a0, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs)
    : a0_(a0), a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  const auto k = std::max(a_.size(), b_.size());
  a_.resize(k, 0.0);
  b_.resize(k, 0.0);
}

BoundaryFunction BoundaryFunction::constant(double c) { return BoundaryFunction(c, {}, {}); }

BoundaryFunction BoundaryFunction::cosine(int k, double amplitude) {
  if (k == 0) return constant(amplitude);
  BoundaryFunction g;
  g.set_cos(k, amplitude);
  return g;
}

BoundaryFunction BoundaryFunction::sine(int k, double amplitude) {
  BoundaryFunction g;
  if (k > 0) g.set_sin(k, amplitude);
  return g;
}

BoundaryFunction BoundaryFunction::project(const std::function<double(double)>& g, int order,
                                           int samples) {
  if (samples <= 0) samples = 4 * order + 64;
  std::vector<double> values(samples);
  for (int j = 0; j < samples; ++j) values[j] = g(kTwoPi * j / samples);
  return from_samples(values, order);
}

BoundaryFunction BoundaryFunction::from_samples(std::span<const double> samples, int order) {
  const int n = static_cast<int>(samples.size());
  if (n < 2 * order + 1) throw std::invalid_argument("from_samples: too few samples for order");
  BoundaryFunction out;
  out.grow(order);
  double mean = 0.0;
  for (double v : samples) mean += v;
  out.a0_ = mean / n;
  for (int k = 1; k <= order; ++k) {
    double c = 0.0, s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = kTwoPi * static_cast<double>((static_cast<long long>(k) * j) % n) / n;
      c += samples[j] * std::cos(t);
      s += samples[j] * std::sin(t);
    }
    // The Nyquist mode of an even sample count has half weight.
    const double w = (2 * k == n) ? 1.0 / n : 2.0 / n;
    out.a_[k - 1] = w * c;
    out.b_[k - 1] = w * s;
  }
  return out;
}

double BoundaryFunction::cos_coeff(int k) const {
  if (k == 0) return a0_;
  return (k >= 1 && k <= order()) ? a_[k - 1] : 0.0;
}

double BoundaryFunction::sin_coeff(int k) const {
  return (k >= 1 && k <= order()) ? b_[k - 1] : 0.0;
}

void BoundaryFunction::grow(int order) {
  if (order > this->order()) {
    a_.resize(order, 0.0);
    b_.resize(order, 0.0);
  }
}

void BoundaryFunction::set_cos(int k, double v) {
  if (k == 0) {
    a0_ = v;
    return;
  }
  grow(k);
  a_[k - 1] = v;
}

void BoundaryFunction::set_sin(int k, double v) {
  if (k <= 0) throw std::invalid_argument("set_sin: k must be >= 1");
  grow(k);
  b_[k - 1] = v;
}

double BoundaryFunction::operator()(double theta) const {
  // cos(k t), sin(k t) by rotation recurrence.
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0, sum = a0_;
  for (int k = 0; k < order(); ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    sum += a_[k] * ck + b_[k] * sk;
  }
  return sum;
}

double BoundaryFunction::derivative(double theta) const {
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0, sum = 0.0;
  for (int k = 0; k < order(); ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    sum += (k + 1) * (-a_[k] * sk + b_[k] * ck);
  }
  return sum;
}

double BoundaryFunction::second_derivative(double theta) const {
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0, sum = 0.0;
  for (int k = 0; k < order(); ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    const double kk = static_cast<double>(k + 1) * (k + 1);
    sum -= kk * (a_[k] * ck + b_[k] * sk);
  }
  return sum;
}

std::vector<double> BoundaryFunction::sample(int n) const {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = (*this)(kTwoPi * j / n);
  return out;
}

std::vector<double> BoundaryFunction::sample_derivative(int n) const {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = derivative(kTwoPi * j / n);
  return out;
}

double BoundaryFunction::c0_norm(int samples) const {
  double m = 0.0;
  for (double v : sample(samples)) m = std::max(m, std::abs(v));
  return m;
}

double BoundaryFunction::c1_norm(int samples) const {
  double m = 0.0;
  for (double v : sample_derivative(samples)) m = std::max(m, std::abs(v));
  return c0_norm(samples) + m;
}

BoundaryFunction BoundaryFunction::truncated(int order) const {
  BoundaryFunction out = *this;
  out.a_.resize(order, 0.0);
  out.b_.resize(order, 0.0);
  return out;
}

BoundaryFunction& BoundaryFunction::operator+=(const BoundaryFunction& other) {
  grow(other.order());
  a0_ += other.a0_;
  for (int k = 0; k < other.order(); ++k) {
    a_[k] += other.a_[k];
    b_[k] += other.b_[k];
  }
  return *this;
}

BoundaryFunction& BoundaryFunction::operator-=(const BoundaryFunction& other) {
  grow(other.order());
  a0_ -= other.a0_;
  for (int k = 0; k < other.order(); ++k) {
    a_[k] -= other.a_[k];
    b_[k] -= other.b_[k];
  }
  return *this;
}

BoundaryFunction& BoundaryFunction::operator*=(double s) {
  a0_ *= s;
  for (auto& v : a_) v *= s;
  for (auto& v : b_) v *= s;
  return *this;
}

}  // namespace speclab
