#include <doctest.h>

#include <sstream>

#include "entangle/experiments.hpp"

using namespace entangle;
using namespace entangle::cli;

namespace {

json bell_json() { return {{"dims", {2, 2}}, {"amps", {1.0, 0.0, 0.0, 1.0}}}; }

json ghz_json() {
  json a = json::array();
  for (int i = 0; i < 8; ++i) a.push_back(i == 0 || i == 7 ? json::array({1.0, 0.0}) : json::array({0.0, 0.0}));
  return {{"dims", {2, 2, 2}}, {"amps", a}};
}

}  // namespace

TEST_CASE("registry holds the documented experiments") {
  const std::vector<std::string> names = {"pdc-table", "pdc-modes", "pdc-spectrum", "qed-evolution", "unstable-K",
                                          "delta-spectrum", "werner-boundary", "magnetic-channel", "optical-channel",
                                          "spinmom", "scattering", "two-atom", "classify", "schmidt", "mps-decompose",
                                          "clone"};
  CHECK(registry().size() == names.size());
  for (const auto& n : names) CHECK(registry().count(n) == 1);
  CHECK_THROWS_AS(run("no-such-experiment", json::object()), UsageError);
}

TEST_CASE("bad parameters are parameter errors") {
  CHECK_THROWS_AS(run("scattering", {{"nonsense", 1}}), ParameterError);
  CHECK_THROWS_AS(run("scattering", {{"points", "many"}}), ParameterError);
  CHECK_THROWS_AS(run("classify", json::object()), ParameterError);
  CHECK_THROWS_AS(run("schmidt", {{"state", "/nonexistent/state.json"}}), ParameterError);
  CHECK_THROWS_AS(run("werner-boundary", {{"w_over_2m", 0.4}}), ParameterError);
}

TEST_CASE("csv output carries a parameter comment and a header") {
  const Output out = run("werner-boundary", {{"points", 11}});
  const std::string csv = to_csv(out);
  std::istringstream in(csv);
  std::string comment, header, line;
  std::getline(in, comment);
  std::getline(in, header);
  CHECK(comment.rfind("# ", 0) == 0);
  CHECK(json::parse(comment.substr(2)).at("w_over_2m") == 0.1);
  CHECK(header == "alpha,nz_prime,F_boundary");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 11);
  CHECK(to_csv(run("werner-boundary", {{"points", 11}})) == csv);
}

TEST_CASE("json-only experiments reject csv") {
  const Output out = run("schmidt", {{"state", bell_json()}});
  CHECK_FALSE(out.table.has_value());
  CHECK_THROWS_AS(to_csv(out), ParameterError);
  const json j = to_json(out);
  CHECK(j.at("result").at("schmidt_number").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("result").at("entropy").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("state json round trip") {
  const PureState psi = state_from_json(ghz_json());
  CHECK(psi.dims == std::vector<int>{2, 2, 2});
  CHECK(std::abs(psi.amps(7) - cplx(std::sqrt(0.5))) < 1e-15);
  const PureState back = state_from_json(state_to_json(psi));
  CHECK((back.amps - psi.amps).norm() < 1e-15);
  CHECK_THROWS_AS(state_from_json({{"dims", {2, 2}}, {"amps", {1.0, 0.0}}}), ParameterError);
}

TEST_CASE("classification reports") {
  const json r = run("classify", {{"state", ghz_json()}}).document;
  CHECK(r.at("label") == "GHZ");
  CHECK(r.at("ranks") == json({2, 2, 2}));
  const json a = run("classify", {{"state", ghz_json()}, {"ilo_samples", 20}, {"seed", 7}}).document;
  const json b = run("classify", {{"state", ghz_json()}, {"ilo_samples", 20}, {"seed", 7}}).document;
  CHECK(a == b);
  CHECK(a.at("ilo_agreement").get<double>() == 1.0);
}

TEST_CASE("mps and clone reports") {
  const json m = run("mps-decompose", {{"state", ghz_json()}}).document;
  CHECK(m.at("chi") == 2);
  CHECK(m.at("fidelity").get<double>() == doctest::Approx(1.0));
  const json c = run("clone", {{"M", 2}}).document;
  CHECK(c.at("isometry_residual").get<double>() < 1e-12);
  for (const auto& br : c.at("branches")) CHECK(br.at("overlap").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("tabular experiments at small sizes") {
  const Output s = run("scattering", {{"points", 10}});
  REQUIRE(s.table);
  CHECK(s.table->rows.size() == 10);
  const Output t = run("two-atom", {{"N", 3}});
  REQUIRE(t.table);
  CHECK(t.table->rows.at(0).at(1) == doctest::Approx(1.2516).epsilon(1e-3));
}
