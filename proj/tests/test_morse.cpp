#include <doctest.h>

#include <fglforge/morse.hpp>
#include <fglforge/morse_io.hpp>

#include <stdexcept>
#include <string>
#include <vector>

using namespace fglforge;

namespace {

std::vector<FixedComponentDatum> cp1_data() {
  return {
      {"pt-", {0}, 0, {2}, mpq_class(-1)},
      {"pt+", {0}, 2, {-2}, mpq_class(1)},
  };
}

std::vector<FixedComponentDatum> cp2_data() {
  return {
      {"p0", {0}, 0, {1, 2}, mpq_class(0)},
      {"p1", {0}, 2, {-1, 1}, mpq_class(1)},
      {"p2", {0}, 4, {-1, -2}, mpq_class(3)},
  };
}

}  // namespace

TEST_SUITE_BEGIN("morse");

TEST_CASE("component validation") {
  std::vector<FixedComponentDatum> odd{{"x", {0}, 1, {-2}, mpq_class(0)}};
  CHECK_THROWS_AS(assemble(odd, 2, 1, 1), std::invalid_argument);

  std::vector<FixedComponentDatum> zw{{"x", {0}, 0, {0}, mpq_class(0)}};
  CHECK_THROWS_AS(assemble(zw, 2, 1, 1), std::invalid_argument);

  // index says one negative weight, data has none
  std::vector<FixedComponentDatum> mis{{"x", {0}, 2, {2}, mpq_class(0)}};
  CHECK_THROWS_AS(assemble(mis, 2, 1, 1), std::invalid_argument);

  std::vector<FixedComponentDatum> dup{
      {"a", {0}, 0, {2}, mpq_class(1)},
      {"b", {0}, 2, {-2}, mpq_class(1)},
  };
  CHECK_THROWS_AS(assemble(dup, 2, 1, 1), std::invalid_argument);
}

TEST_CASE("empty fixed locus") {
  AssembledModule am = assemble({}, 2, 1, 1);
  CHECK(am.degenerate);
  CHECK(am.rank() == 0);
  MorseEqualityCertificate cert = morse_equality_check({}, 2, 1, 1);
  CHECK(cert.degenerate);
  CHECK(cert.fixed_side == 1);
  CHECK(cert.assembled_side == 1);
  CHECK(cert.pass());
}

TEST_CASE("two fixed points assemble to rank two") {
  AssembledModule am = assemble(cp1_data(), 2, 1, 1);
  CHECK(am.rank() == 2);
  CHECK(am.gen_degrees == std::vector<long>{0, 2});
  CHECK(am.order == std::vector<std::string>{"pt-", "pt+"});
  REQUIRE(am.splits.size() == 1);
  CHECK(am.splits[0].name == "pt+");
  CHECK(am.splits[0].k == 2);
  CHECK(am.splits[0].pass());
}

TEST_CASE("module cardinality") {
  CHECK(module_cardinality(2, 1, 2) == 4);
  CHECK(module_cardinality(2, 2, 3) == 64);
  CHECK(module_cardinality(3, 1, 2) == 9);
  CHECK(module_cardinality(2, 1, 0) == 1);
  CHECK_THROWS_AS(module_cardinality(2, 1, -1), std::invalid_argument);
}

TEST_CASE("cardinality equality") {
  MorseEqualityCertificate c1 = morse_equality_check(cp1_data(), 2, 1, 1);
  CHECK(c1.fixed_side == 4);
  CHECK(c1.assembled_side == 4);
  CHECK(c1.pass());

  MorseEqualityCertificate c2 = morse_equality_check(cp2_data(), 2, 1, 1);
  CHECK(c2.fixed_side == 8);
  CHECK(c2.assembled_side == 8);
  CHECK(c2.pass());
}

TEST_CASE("kernel window on a single point") {
  std::vector<FixedComponentDatum> pt{{"pt", {0}, 0, {2}, mpq_class(0)}};
  AssembledModule am = assemble(pt, 2, 1, 1);

  KernelWindowCertificate kc = kernel_window_check(pt, 0, 5, am);
  CHECK(kc.k == 2);
  CHECK_FALSE(kc.window_empty);
  CHECK(kc.kernel_gens == 2);
  CHECK(kc.kernel_min_slot == 4);
  CHECK(kc.low_window_trivial);
  CHECK(kc.top_window_only);
  CHECK(kc.euler_bound_ok);
  CHECK(kc.leray_bound_ok);
  CHECK(kc.pass());

  std::vector<FixedComponentDatum> pt1{{"pt", {0}, 0, {1}, mpq_class(0)}};
  AssembledModule am1 = assemble(pt1, 2, 1, 1);
  KernelWindowCertificate k1 = kernel_window_check(pt1, 0, 4, am1);
  CHECK(k1.k == 1);
  CHECK(k1.kernel_gens == 1);
  CHECK(k1.kernel_min_slot == 4);
  CHECK(k1.top_window_only);
  CHECK(k1.pass());

  // below the leading order there is nothing to certify, but the cardinality
  // comparison is still evaluated and reported
  KernelWindowCertificate ke = kernel_window_check(pt, 0, 1, am);
  CHECK(ke.window_empty);
  CHECK(ke.pass());
  CHECK(ke.leray_lhs == 4);
  CHECK(ke.leray_rhs == 4);
  CHECK(ke.leray_bound_ok);

  CHECK_THROWS_AS(kernel_window_check(pt, 1, 3, am), std::invalid_argument);
  CHECK_THROWS_AS(kernel_window_check(pt, 0, -1, am), std::invalid_argument);
}

TEST_CASE("dropped generator breaks both inequalities") {
  std::vector<FixedComponentDatum> data = cp1_data();
  AssembledModule bad = assemble(data, 2, 1, 1);
  bad.gen_names.pop_back();
  bad.gen_degrees.pop_back();

  KernelWindowCertificate m0 = kernel_window_check(data, 0, 0, bad);
  CHECK(m0.window_empty);
  CHECK_FALSE(m0.leray_bound_ok);  // reported even when the window is empty

  KernelWindowCertificate m2 = kernel_window_check(data, 0, 2, bad);
  CHECK_FALSE(m2.leray_bound_ok);
  CHECK(m2.euler_bound_ok);  // coincides at m = k
  CHECK_FALSE(m2.pass());

  KernelWindowCertificate m3 = kernel_window_check(data, 0, 3, bad);
  CHECK_FALSE(m3.euler_bound_ok);
  CHECK_FALSE(m3.leray_bound_ok);
  CHECK_FALSE(m3.pass());
}

TEST_CASE("fixed point data parsing") {
  const std::string good = R"({
    "schema": 1,
    "name": "demo",
    "components": [
      {"name": "a", "moment": "-3/2", "morse_index": 0,
       "normal_weights": [2], "generator_degrees": [0]},
      {"name": "b", "moment": 1, "morse_index": 2,
       "normal_weights": [-2], "generator_degrees": [0, 4]}
    ]
  })";
  FixedPointData fp = parse_fixed_point_json(good, "inline");
  CHECK(fp.name == "demo");
  REQUIRE(fp.components.size() == 2);
  CHECK(fp.components[0].moment_value == mpq_class(-3, 2));
  CHECK(fp.components[1].generator_degrees == std::vector<long>{0, 4});
  CHECK(assemble(fp.components, 2, 1, 1).rank() == 3);

  auto parse_err = [](const std::string& text) {
    try {
      parse_fixed_point_json(text, "inline");
      return std::string();
    } catch (const std::runtime_error& e) {
      return std::string(e.what());
    }
  };
  std::string miss = parse_err(R"({"components": [{"name": "a", "moment": 0,
    "normal_weights": [2], "generator_degrees": [0]}]})");
  CHECK(miss.find("component 0 field 'morse_index'") != std::string::npos);
  CHECK(parse_err(R"({"schema": 2, "components": []})").find("unsupported schema 2") !=
        std::string::npos);
  CHECK(parse_err(R"({"schema": 1})").find("missing 'components'") != std::string::npos);
  CHECK(parse_err(R"({"components": [{"name": "a", "moment": 0, "morse_index": 0,
    "normal_weights": [0], "generator_degrees": [0]}]})")
            .find("zero weight") != std::string::npos);
  CHECK(parse_err("{ nope").find("inline") != std::string::npos);
  CHECK_THROWS_AS(parse_fixed_point_file("/nonexistent/fp.json"), std::runtime_error);
}

TEST_SUITE_END();
