#pragma once

#include <functional>
#include <span>
#include <vector>

namespace speclab {

/// Real trigonometric polynomial on the unit circle,
///   g(theta) = a0 + sum_{k=1..K} a_k cos(k theta) + b_k sin(k theta).
///
/// Used for radial boundary functions of star domains, perturbations of the
/// unit circle and normal-velocity fields.
class BoundaryFunction {
 public:
  BoundaryFunction() = default;
  BoundaryFunction(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static BoundaryFunction constant(double c);
  static BoundaryFunction cosine(int k, double amplitude = 1.0);
  static BoundaryFunction sine(int k, double amplitude = 1.0);

  /// Least-squares (= discrete Fourier) projection of a periodic function onto
  /// order `order`, using `samples` equispaced points (defaults to 4*order+64).
  static BoundaryFunction project(const std::function<double(double)>& g, int order,
                                  int samples = 0);
  /// Projection of equispaced samples theta_j = 2 pi j / n.
  static BoundaryFunction from_samples(std::span<const double> samples, int order);

  int order() const { return static_cast<int>(a_.size()); }
  double a0() const { return a0_; }
  double cos_coeff(int k) const;
  double sin_coeff(int k) const;
  std::span<const double> cos_coeffs() const { return a_; }
  std::span<const double> sin_coeffs() const { return b_; }

  void set_a0(double v) { a0_ = v; }
  void set_cos(int k, double v);
  void set_sin(int k, double v);

  double operator()(double theta) const;
  double derivative(double theta) const;
  double second_derivative(double theta) const;

  /// Values at theta_j = 2 pi j / n, j = 0..n-1.
  std::vector<double> sample(int n) const;
  std::vector<double> sample_derivative(int n) const;

  /// Dense-sampling norms: sup|g| and sup|g| + sup|g'|.
  double c0_norm(int samples = 4096) const;
  double c1_norm(int samples = 4096) const;

  /// Copy truncated (or zero-padded) to the given order.
  BoundaryFunction truncated(int order) const;

  BoundaryFunction& operator+=(const BoundaryFunction& other);
  BoundaryFunction& operator-=(const BoundaryFunction& other);
  BoundaryFunction& operator*=(double s);

  friend BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b) { return a += b; }
  friend BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b) { return a -= b; }
  friend BoundaryFunction operator*(BoundaryFunction a, double s) { return a *= s; }
  friend BoundaryFunction operator*(double s, BoundaryFunction a) { return a *= s; }

  bool operator==(const BoundaryFunction&) const = default;

 private:
  void grow(int order);

  double a0_ = 0.0;
  std::vector<double> a_;
  std::vector<double> b_;
};

}  // namespace speclab
