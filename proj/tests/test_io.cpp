#include <doctest.h>

#include <sstream>

#include "speclab/errors.hpp"
#include "speclab/io.hpp"

using namespace speclab;

TEST_CASE("domain JSON round trip") {
  const StarDomain sat = StarDomain::satellites(0.1).translated(Point(0.5, -0.25));
  const StarDomain back = domain_from_json(Json::parse(domain_to_json(sat).dump()));
  CHECK(back.radial() == sat.radial());
  CHECK(back.center() == sat.center());
  REQUIRE(back.balls().size() == 2);
  CHECK(back.balls()[1].radius == sat.balls()[1].radius);
  CHECK(volume(back) == volume(sat));
}

TEST_CASE("named shapes") {
  CHECK(domain_from_json(Json::parse(R"({"shape":"unit_ellipse","eps":0.1})")).radial() ==
        StarDomain::unit_ellipse(0.1).radial());
  CHECK(domain_from_json(Json::parse(R"({"shape":"disk"})")).radial().a0() == 1.0);
  CHECK(domain_from_json(Json::parse(R"({"fourier":{"a0":1.0,"a":[0.0,0.1]}})")).radial().cos_coeff(2) == 0.1);
}

TEST_CASE("malformed domains") {
  for (const char* text : {R"([1,2])", R"({"fourier":{"a":[0.1]}})", R"({"shape":"torus"})",
                           R"({"fourier":{"a0":"one"}})", R"({"fourier":{"a0":1},"center":[0]})",
                           R"({"shape":"perturbed_disk","k":2.5,"amplitude":0.1})"})
    CHECK_THROWS_AS(domain_from_json(Json::parse(text)), InvalidConfig);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"fourier":{"a0":-1}})")), NonPositiveRadius);
}

TEST_CASE("forcing selection") {
  CHECK(forcing_from_json(Json("bump_0_0_0.3")).f(Point::Zero()) == doctest::Approx(1.0));
  CHECK(forcing_from_json(Json::parse(R"({"constant":0.5})")).f(Point(3, 3)) == 0.5);
  CHECK_THROWS_AS(forcing_from_json(Json("nope")), InvalidConfig);
  CHECK_THROWS_AS(forcing_from_json(Json::parse(R"({"constant":1.5})")), InvalidConfig);
}

TEST_CASE("CSV writers have headers") {
  std::ostringstream trace, curves;
  write_trace_csv(trace, {TraceRow{0, -0.19, 0.1, 0.0, 0.05, 0.0}});
  CHECK(trace.str().rfind("iter,energy,residual,barycenter_norm,hausdorff,step\n", 0) == 0);
  write_boundary_polylines(curves, Point::Zero(), {BoundaryFunction::constant(1.0)}, 4);
  CHECK(curves.str().rfind("iter,theta,x,y\n0,0,1,0\n", 0) == 0);
  CHECK(format_number(0.1) == "0.1");
}
