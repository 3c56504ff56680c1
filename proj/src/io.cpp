#include "speclab/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "speclab/errors.hpp"

namespace speclab {

namespace {

Json point_json(const Point& p) { return Json::array({p.x(), p.y()}); }

Point point_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidConfig(std::string(what) + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double number_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InvalidConfig(std::string("domain: missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::vector<double> numbers_from(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidConfig(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  for (const Json& v : j) {
    if (!v.is_number()) throw InvalidConfig(std::string(what) + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

StarDomain named_domain(const Json& j) {
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "disk") return StarDomain::disk(j.value("radius", 1.0));
  if (shape == "unit_ellipse") return StarDomain::unit_ellipse(number_at(j, "eps"));
  if (shape == "perturbed_disk") {
    const double k = number_at(j, "k");
    if (k < 1 || k != std::floor(k)) throw InvalidConfig("perturbed_disk: k must be a positive integer");
    return StarDomain::perturbed_disk(static_cast<int>(k), number_at(j, "amplitude"));
  }
  if (shape == "satellites") return StarDomain::satellites(number_at(j, "r"));
  throw InvalidConfig("domain: unknown shape '" + shape + "'");
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json domain_to_json(const StarDomain& domain) {
  const BoundaryFunction& r = domain.radial();
  Json balls = Json::array();
  for (const Ball& b : domain.balls())
    balls.push_back({{"center", point_json(b.center)}, {"radius", b.radius}});
  return {{"center", point_json(domain.center())},
          {"fourier",
           {{"a0", r.a0()},
            {"a", std::vector<double>(r.cos_coeffs().begin(), r.cos_coeffs().end())},
            {"b", std::vector<double>(r.sin_coeffs().begin(), r.sin_coeffs().end())}}},
          {"balls", balls}};
}

StarDomain domain_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidConfig("domain: expected an object");
  if (j.contains("shape")) {
    if (!j.at("shape").is_string()) throw InvalidConfig("domain: 'shape' must be a string");
    return named_domain(j);
  }
  if (!j.contains("fourier") || !j.at("fourier").is_object())
    throw InvalidConfig("domain: missing 'fourier' object");
  const Json& f = j.at("fourier");
  const double a0 = number_at(f, "a0");
  std::vector<double> a = f.contains("a") ? numbers_from(f.at("a"), "fourier.a") : std::vector<double>{};
  std::vector<double> b = f.contains("b") ? numbers_from(f.at("b"), "fourier.b") : std::vector<double>{};
  const std::size_t order = std::max(a.size(), b.size());
  a.resize(order, 0.0);
  b.resize(order, 0.0);
  const Point center = j.contains("center") ? point_from(j.at("center"), "center") : Point::Zero();
  std::vector<Ball> balls;
  if (j.contains("balls")) {
    if (!j.at("balls").is_array()) throw InvalidConfig("domain: 'balls' must be an array");
    for (const Json& b : j.at("balls")) {
      if (!b.is_object() || !b.contains("center"))
        throw InvalidConfig("domain: each ball needs center and radius");
      balls.push_back({point_from(b.at("center"), "ball center"), number_at(b, "radius")});
    }
  }
  return StarDomain(center, BoundaryFunction(a0, std::move(a), std::move(b)), std::move(balls));
}

Forcing forcing_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    for (Forcing& f : default_dictionary())
      if (f.name == name) return f;
    throw InvalidConfig("forcing: unknown dictionary member '" + name + "'");
  }
  if (j.is_object() && j.contains("constant") && j.at("constant").is_number()) {
    const double c = j.at("constant").get<double>();
    if (std::abs(c) > 1.0) throw InvalidConfig("forcing: constant exceeds 1 in absolute value");
    return {"constant_" + format_number(c), [c](const Point&) { return c; }};
  }
  throw InvalidConfig("forcing: expected a dictionary name or {\"constant\": c}");
}

Json to_json(const StabilityReport& r) {
  return {{"fk_deficit", r.fk_deficit}, {"sv_deficit", r.sv_deficit},
          {"beta_sq", r.beta_sq},       {"asymmetry", r.asymmetry},
          {"barycenter", point_json(r.barycenter)},
          {"resolvent_lb", r.resolvent_lb},
          {"lambda1", r.lambda1},       {"torsion", r.torsion},
          {"volume", r.volume}};
}

Json to_json(const TransferData& t) {
  return {{"j", t.j},
          {"lambda_ball", t.lambda_ball},
          {"lambdas", t.lambdas},
          {"a_coeffs", t.a_coeffs},
          {"b_coeffs", t.b_coeffs},
          {"residual", t.residual},
          {"tail", t.tail},
          {"in_cluster", t.in_cluster}};
}

Json to_json(const TaylorFit& fit) {
  return {{"t", fit.t},         {"energy", fit.energy}, {"model", fit.model},
          {"residual", fit.residual}, {"e0", fit.e0}, {"first", fit.first},
          {"second", fit.second},     {"slope", fit.slope}};
}

Json to_json(const GapCheck& g) {
  return {{"deficit", g.deficit}, {"bound", g.bound}, {"ratio", g.ratio},
          {"slack", g.slack},     {"holds", g.holds}};
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iter,energy,residual,barycenter_norm,hausdorff,step\n";
  for (const TraceRow& r : trace) {
    os << r.iter << ',' << format_number(r.energy) << ',' << format_number(r.residual) << ','
       << format_number(r.barycenter_norm) << ',' << format_number(r.hausdorff) << ','
       << format_number(r.step) << '\n';
  }
}

void write_boundary_polylines(std::ostream& os, const Point& center,
                              const std::vector<BoundaryFunction>& history, int samples) {
  os << "iter,theta,x,y\n";
  for (std::size_t it = 0; it < history.size(); ++it) {
    const auto rho = history[it].sample(samples);
    for (int i = 0; i <= samples; ++i) {
      const double t = 2.0 * std::numbers::pi * i / samples;
      const double r = rho[i % samples];
      os << it << ',' << format_number(t) << ',' << format_number(center.x() + r * std::cos(t)) << ','
         << format_number(center.y() + r * std::sin(t)) << '\n';
    }
  }
}

}  // namespace speclab
