#include "doctest.h"
#include "msf/engine/engine.hpp"
#include "msf/io/report.hpp"
#include "msf/scheme/group.hpp"

using namespace msf;

TEST_CASE("factor result json") {
  const auto fp = ff::FieldCtx::prime(7);
  const auto r = engine::factor(7, ff::parse_poly(fp, "6,0,1"));
  const auto j = io::factor_json(r);
  CHECK(j["schema"] == "msf-1");
  CHECK(j["input"]["p"] == 7);
  CHECK(j["input"]["f"] == io::Json::array({6, 0, 1}));
  CHECK(j["status"] == "factored");
  CHECK(j["factors"] == io::Json::array({io::Json::array({1, 1}), io::Json::array({6, 1})}));
  CHECK(j["remainder"] == io::Json::array({1}));
  CHECK(j["events"] == r.events.size());
  CHECK(j["certificate_file"].is_null());

  const auto lines = io::event_lines(fp, r.events);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == static_cast<long>(r.events.size()));
  const auto first = io::Json::parse(lines.substr(0, lines.find('\n')));
  CHECK(first["kind"] == "init");
  CHECK(first["before"] == io::Json::array({2}));
  CHECK(first["after"] == io::Json::array({1, 1}));
  CHECK(first["witness"]["sigma"] == io::Json::array({1, 0}));
}

TEST_CASE("extension field elements serialise as digit lists") {
  const auto f = ff::build_scheme_field(5, 3);  // 3 | q - 1 needs F_25
  REQUIRE(f.degree() == 2);
  const auto a = f.from_digits({2, 3});
  CHECK(io::element_json(f, a) == io::Json::array({2, 3}));
  CHECK(io::element_json(ff::FieldCtx::prime(5), 4) == 4);
}

TEST_CASE("json output is reproducible") {
  const auto fp = ff::FieldCtx::prime(101);
  const auto f = ff::poly_from_ints(fp, {-120, 274, -225, 85, -15, 1});  // roots 1..5
  engine::FactorOptions opt;
  opt.complete = true;
  const auto a = engine::factor(101, f, opt);
  const auto b = engine::factor(101, f, opt);
  CHECK(io::dump(io::factor_json(a)) == io::dump(io::factor_json(b)));
  CHECK(io::event_lines(a.state->field(), a.events) == io::event_lines(b.state->field(), b.events));
  CHECK(a.complete);
}

TEST_CASE("scheme reports") {
  const auto pi = scheme::orbit_scheme(scheme::cyclic_group(7), 2);
  const auto j = io::property_json(scheme::check_properties(pi));
  CHECK(j["scheme"] == true);
  CHECK(j["antisymmetric"] == true);
  const auto mj = io::matchings_json(scheme::find_matchings(pi));
  CHECK(mj["count"] == 6);  // every difference class has size 7 = n
}
