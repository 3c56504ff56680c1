#include "speclab/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "nelder_mead.hpp"
#include "speclab/errors.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

Point unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Area of the intersection of two disks.
double lens_area(const Point& c1, double r1, const Point& c2, double r2) {
  const double d = (c1 - c2).norm();
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0));
  const double k = 0.5 * std::sqrt(std::max(0.0, (-d + r1 + r2) * (d + r1 - r2) *
                                                     (d - r1 + r2) * (d + r1 + r2)));
  return r1 * r1 * a1 + r2 * r2 * a2 - k;
}

}  // namespace

// ---------------------------------------------------------------------------
// StarDomain

StarDomain::StarDomain(Point center, BoundaryFunction radial, std::vector<Ball> balls)
    : center_(std::move(center)), radial_(std::move(radial)), balls_(std::move(balls)) {
  const int n = std::max(angular_samples(), 1024);
  for (double r : radial_.sample(n)) {
    if (!(r > 0.0)) throw NonPositiveRadius("radial function is not positive on the circle");
  }
  const double rmax = max_radius();
  for (std::size_t i = 0; i < balls_.size(); ++i) {
    const Ball& b = balls_[i];
    if (!(b.radius > 0.0)) throw NonPositiveRadius("auxiliary ball with non-positive radius");
    if ((b.center - center_).norm() <= rmax + b.radius)
      throw InvalidConfig("auxiliary ball intersects the star-shaped core");
    for (std::size_t j = 0; j < i; ++j) {
      if ((b.center - balls_[j].center).norm() <= b.radius + balls_[j].radius)
        throw InvalidConfig("auxiliary balls are not disjoint");
    }
  }
}

StarDomain StarDomain::disk(double radius, const Point& center) {
  return StarDomain(center, BoundaryFunction::constant(radius));
}

StarDomain StarDomain::ellipse(double a, double b, const Point& center, int order) {
  auto rho = [a, b](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return a * b / std::sqrt(b * b * c * c + a * a * s * s);
  };
  return StarDomain(center, BoundaryFunction::project(rho, order, 8 * order + 64));
}

StarDomain StarDomain::unit_ellipse(double eps) {
  return ellipse(1.0 / (1.0 + eps), 1.0 + eps);
}

StarDomain StarDomain::perturbed_disk(int k, double amplitude) {
  BoundaryFunction rho = BoundaryFunction::constant(1.0) + BoundaryFunction::cosine(k, amplitude);
  return volume_normalize(StarDomain(Point::Zero(), rho));
}

StarDomain StarDomain::satellites(double r) {
  if (!(r > 0.0) || 2.0 * r * r >= 1.0) throw InvalidConfig("satellite radius out of range");
  const double core = std::sqrt(1.0 - 2.0 * r * r);
  return StarDomain(Point::Zero(), BoundaryFunction::constant(core),
                    {Ball{Point(2.0, 0.0), r}, Ball{Point(-2.0, 0.0), r}});
}

Point StarDomain::boundary_point(double theta) const {
  return center_ + radial_(theta) * unit(theta);
}

Point StarDomain::outward_normal(double theta) const {
  const double r = radial_(theta), dr = radial_.derivative(theta);
  const Point er = unit(theta);
  const Point et(-er.y(), er.x());
  Point n = r * er - dr * et;
  return n.normalized();
}

double StarDomain::speed(double theta) const {
  const double r = radial_(theta), dr = radial_.derivative(theta);
  return std::hypot(r, dr);
}

int StarDomain::angular_samples() const { return 4 * radial_.order() + 64; }

double StarDomain::min_radius() const {
  const auto s = radial_.sample(std::max(4096, 8 * radial_.order()));
  return *std::min_element(s.begin(), s.end());
}

double StarDomain::max_radius() const {
  const auto s = radial_.sample(std::max(4096, 8 * radial_.order()));
  return *std::max_element(s.begin(), s.end());
}

std::pair<Point, Point> StarDomain::bounding_box() const {
  const int n = std::max(4096, 8 * radial_.order());
  Point lo = center_, hi = center_;
  for (int j = 0; j < n; ++j) {
    const Point p = boundary_point(kTwoPi * j / n);
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  // Sampled boundary may miss the extreme slightly.
  const double pad = 1e-3 * max_radius();
  lo.array() -= pad;
  hi.array() += pad;
  for (const Ball& b : balls_) {
    lo = lo.cwiseMin(b.center - Point::Constant(b.radius));
    hi = hi.cwiseMax(b.center + Point::Constant(b.radius));
  }
  return {lo, hi};
}

double StarDomain::diameter_bound() const {
  const auto [lo, hi] = bounding_box();
  return (hi - lo).norm();
}

bool StarDomain::contains(const Point& x) const {
  const Point d = x - center_;
  const double r = d.norm();
  if (r == 0.0) return true;
  if (r < radial_(std::atan2(d.y(), d.x()))) return true;
  for (const Ball& b : balls_) {
    if ((x - b.center).norm() < b.radius) return true;
  }
  return false;
}

StarDomain StarDomain::translated(const Point& shift) const {
  std::vector<Ball> balls = balls_;
  for (auto& b : balls) b.center += shift;
  return StarDomain(center_ + shift, radial_, std::move(balls));
}

StarDomain StarDomain::scaled(double factor) const {
  std::vector<Ball> balls = balls_;
  for (auto& b : balls) {
    b.center = center_ + factor * (b.center - center_);
    b.radius *= factor;
  }
  return StarDomain(center_, radial_ * factor, std::move(balls));
}

StarDomain StarDomain::with_radial(BoundaryFunction radial) const {
  return StarDomain(center_, std::move(radial), balls_);
}

// ---------------------------------------------------------------------------
// Measure-theoretic quantities

namespace {

double core_area(const StarDomain& d) {
  const int n = d.angular_samples();
  double sum = 0.0;
  for (double r : d.radial().sample(n)) sum += r * r;
  return 0.5 * sum * kTwoPi / n;
}

Point core_first_moment(const StarDomain& d) {
  const int n = d.angular_samples();
  const auto rho = d.radial().sample(n);
  Point m = Point::Zero();
  for (int j = 0; j < n; ++j) m += (rho[j] * rho[j] * rho[j] / 3.0) * unit(kTwoPi * j / n);
  return m * (kTwoPi / n);
}

}  // namespace

double volume(const StarDomain& domain) {
  double v = core_area(domain);
  for (const Ball& b : domain.balls()) v += kPi * b.radius * b.radius;
  return v;
}

StarDomain volume_normalize(const StarDomain& domain) {
  const double v = volume(domain);
  if (!(v > 0.0)) throw InvalidConfig("volume_normalize: non-positive volume");
  return domain.scaled(std::sqrt(kPi / v));
}

Point classical_barycenter(const StarDomain& domain) {
  const double a = core_area(domain);
  Point m = a * domain.center() + core_first_moment(domain);
  double v = a;
  for (const Ball& b : domain.balls()) {
    const double ab = kPi * b.radius * b.radius;
    m += ab * b.center;
    v += ab;
  }
  return m / v;
}

// ---------------------------------------------------------------------------
// Truncation profile

namespace {

constexpr double kQuadLimit = TruncationProfile::kQuadraticLimit;
// c^2 = 100^2 - 1/2 so that q''(t) = 1 / (t^2 - c^2).
const double kC2 = kQuadLimit * kQuadLimit - 0.5;
const double kC = std::sqrt(kQuadLimit * kQuadLimit - 0.5);

double q_second(double t) { return t <= kQuadLimit ? 2.0 : 1.0 / (t * t - kC2); }

// Antiderivatives of 1/(t^2-c^2) and of (s - t)/(t^2 - c^2) in t (s fixed).
double tail_first(double t) { return std::log((t - kC) / (t + kC)) / (2.0 * kC); }
double tail_value(double s, double t) {
  return s * tail_first(t) - 0.5 * std::log(t * t - kC2);
}

}  // namespace

const TruncationProfile& TruncationProfile::instance() {
  static const TruncationProfile profile;
  return profile;
}

TruncationProfile::TruncationProfile() {
  const int n = static_cast<int>(std::lround((kTableEnd - kQuadLimit) / step_));
  q_.resize(n + 1);
  dq_.resize(n + 1);
  q_[0] = kQuadLimit * kQuadLimit;
  dq_[0] = 2.0 * kQuadLimit;
  using GL = boost::math::quadrature::gauss<double, 10>;
  for (int i = 0; i < n; ++i) {
    const double t0 = kQuadLimit + i * step_, t1 = t0 + step_;
    dq_[i + 1] = dq_[i] + GL::integrate(q_second, t0, t1);
    // q(t1) = q(t0) + q'(t0) h + int_{t0}^{t1} (t1 - s) q''(s) ds
    q_[i + 1] = q_[i] + dq_[i] * step_ +
                GL::integrate([t1](double s) { return (t1 - s) * q_second(s); }, t0, t1);
  }
}

double TruncationProfile::second(double t) const { return q_second(t); }

namespace {
// Cubic Hermite on [0,1] with values y0, y1 and scaled slopes m0, m1.
double hermite(double s, double y0, double y1, double m0, double m1) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * m1;
}
}  // namespace

double TruncationProfile::first(double t) const {
  if (t <= kQuadLimit) return 2.0 * t;
  if (t >= kTableEnd) return dq_.back() + tail_first(t) - tail_first(kTableEnd);
  const double x = (t - kQuadLimit) / step_;
  const int i = std::min(static_cast<int>(x), static_cast<int>(dq_.size()) - 2);
  const double t0 = kQuadLimit + i * step_;
  return hermite(x - i, dq_[i], dq_[i + 1], step_ * q_second(t0), step_ * q_second(t0 + step_));
}

double TruncationProfile::value(double t) const {
  if (t <= kQuadLimit) return t * t;
  if (t >= kTableEnd) {
    const double T = kTableEnd;
    return q_.back() + dq_.back() * (t - T) + (tail_value(t, t) - tail_value(t, T));
  }
  const double x = (t - kQuadLimit) / step_;
  const int i = std::min(static_cast<int>(x), static_cast<int>(q_.size()) - 2);
  return hermite(x - i, q_[i], q_[i + 1], step_ * dq_[i], step_ * dq_[i + 1]);
}

// ---------------------------------------------------------------------------
// Truncated barycenter

namespace {

struct AreaQuadrature {
  std::vector<Point> points;
  std::vector<double> weights;
};

AreaQuadrature polar_quadrature(const StarDomain& d) {
  using GL = boost::math::quadrature::gauss<double, 7>;
  const auto& abscissa = GL::abscissa();
  const auto& gw = GL::weights();
  // Symmetric 7-point rule on [-1,1] from the half-rule tables.
  std::vector<std::pair<double, double>> rule;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    rule.emplace_back(abscissa[i], gw[i]);
    if (abscissa[i] != 0.0) rule.emplace_back(-abscissa[i], gw[i]);
  }
  AreaQuadrature q;
  auto add_polar = [&](const Point& c, const std::vector<double>& rho) {
    const int n = static_cast<int>(rho.size());
    for (int j = 0; j < n; ++j) {
      const Point e = unit(kTwoPi * j / n);
      for (auto [x, w] : rule) {
        const double r = 0.5 * rho[j] * (x + 1.0);
        q.points.push_back(c + r * e);
        q.weights.push_back(w * 0.5 * rho[j] * r * kTwoPi / n);
      }
    }
  };
  add_polar(d.center(), d.radial().sample(d.angular_samples()));
  for (const Ball& b : d.balls()) add_polar(b.center, std::vector<double>(64, b.radius));
  return q;
}

}  // namespace

Point truncated_barycenter(const StarDomain& domain) {
  const auto& q = TruncationProfile::instance();
  const AreaQuadrature quad = polar_quadrature(domain);
  const double vol = volume(domain);

  auto objective = [&](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < quad.points.size(); ++i)
      s += quad.weights[i] * q.value((x - quad.points[i]).norm());
    return s;
  };
  auto gradient_hessian = [&](const Point& x, Point& g, Eigen::Matrix2d& h) {
    g.setZero();
    h.setZero();
    for (std::size_t i = 0; i < quad.points.size(); ++i) {
      const Point d = x - quad.points[i];
      const double t = d.norm();
      const double w = quad.weights[i];
      if (t <= kQuadLimit) {
        // q = t^2 exactly: gradient 2 d, Hessian 2 I.
        g += w * 2.0 * d;
        h += w * 2.0 * Eigen::Matrix2d::Identity();
        continue;
      }
      const Point u = d / t;
      const double q1 = q.first(t), q2 = q.second(t);
      g += w * q1 * u;
      h += w * (q2 * u * u.transpose() + (q1 / t) * (Eigen::Matrix2d::Identity() - u * u.transpose()));
    }
  };

  Point x = domain.center();
  for (int iter = 0; iter < 100; ++iter) {
    Point g;
    Eigen::Matrix2d h;
    gradient_hessian(x, g, h);
    if (g.norm() <= 1e-10 * vol) return x;
    const Point step = -h.ldlt().solve(g);
    const double f0 = objective(x);
    double s = 1.0;
    Point next = x + step;
    while (objective(next) > f0 && s > 1e-6) {
      s *= 0.5;
      next = x + s * step;
    }
    x = next;
  }
  throw NoConvergence("truncated_barycenter: Newton iteration did not converge");
}

// ---------------------------------------------------------------------------
// Fraenkel asymmetry

double symmetric_difference_with_unit_disk(const StarDomain& domain, const Point& x,
                                           int angular_samples) {
  const int n = angular_samples;
  const auto rho = domain.radial().sample(n);
  const Point cx = domain.center() - x;
  const double c2 = cx.squaredNorm() - 1.0;
  double overlap = 0.0;
  for (int j = 0; j < n; ++j) {
    const Point e = unit(kTwoPi * j / n);
    // |cx + s e|^2 < 1  <=>  s^2 + 2 b s + c2 < 0
    const double b = e.dot(cx);
    const double disc = b * b - c2;
    if (disc <= 0.0) continue;
    const double sq = std::sqrt(disc);
    const double lo = std::max(0.0, -b - sq), hi = std::min(rho[j], -b + sq);
    if (hi > lo) overlap += 0.5 * (hi * hi - lo * lo);
  }
  overlap *= kTwoPi / n;
  for (const Ball& bl : domain.balls()) overlap += lens_area(bl.center, bl.radius, x, 1.0);
  return volume(domain) + kPi - 2.0 * overlap;
}

AsymmetryResult fraenkel_asymmetry_search(const StarDomain& domain, int angular_samples) {
  auto f = [&](const Point& x) {
    return symmetric_difference_with_unit_disk(domain, x, angular_samples);
  };
  const auto best = detail::nelder_mead_2d(f, classical_barycenter(domain), 0.05);
  return {std::max(0.0, best.value), best.x};
}

double fraenkel_asymmetry(const StarDomain& domain) {
  return fraenkel_asymmetry_search(domain).value;
}

}  // namespace speclab
