#include <doctest.h>

#include <fglforge/euler.hpp>

#include <stdexcept>

using namespace fglforge;

namespace {

FormalGroupLaw k21_law(long T) {
  return reduce_fgl(build_ptypical(2, T), kpr_ring(2, 1, 1));
}

}  // namespace

TEST_SUITE_BEGIN("euler");

TEST_CASE("classes of small weight lists") {
  FormalGroupLaw law = k21_law(8);
  RingSpec s = law.spec;
  CHECK(euler_of_weights(law, {1}, 6).e == us_u(s, 6));
  CHECK(us_text(euler_of_weights(law, {2}, 6).e) == "v1*u^2");
  CHECK(euler_of_weights(law, {1, 1}, 6).e == us_monomial(coef_one(s), 2, 6));
  CHECK_THROWS(euler_of_weights(law, {0}, 6));
  CHECK_THROWS(euler_of_weights(law, {2, 0}, 6));
}

TEST_CASE("multiplicativity and inverse weights") {
  FormalGroupLaw law = k21_law(8);
  EulerClass joint = euler_of_weights(law, {2, 3}, 8);
  CHECK(joint.e == euler_of_weights(law, {2}, 8).e * euler_of_weights(law, {3}, 8).e);

  USeries iota = formal_inverse(law);
  CHECK(euler_of_weights(law, {-2}, 8).e == us_compose(iota, l_series(law, 2, 8)));
}

TEST_CASE("expected leading order") {
  CHECK(euler_leading_order(kpr_ring(2, 1, 1), {2}) == 2);
  CHECK(euler_leading_order(kpr_ring(2, 1, 1), {2, 3, -4}) == 7);
  CHECK(euler_leading_order(kpr_ring(2, 1, 2), {2, 3, -4}) == 21);
  CHECK(euler_leading_order(kpr_ring(3, 1, 1), {9}) == 9);
  CHECK_THROWS(euler_leading_order(kpr_ring(2, 1, 1), {0}));
  CHECK_THROWS(euler_leading_order(bp_truncated(2, 2, 20), {2}));
}

TEST_CASE("leading form certificates") {
  FormalGroupLaw law = k21_law(8);
  RingSpec s = law.spec;

  LeadingFormReport r2 = leading_form(euler_of_weights(law, {2}, 8));
  CHECK(r2.k_expected == 2);
  CHECK(r2.k_found == 2);
  CHECK(r2.lead == coef_gen(s, 1));
  CHECK(r2.pass());

  LeadingFormReport r22 = leading_form(euler_of_weights(law, {2, 2}, 8));
  CHECK(r22.k_found == 4);
  CHECK(r22.lead == coef_gen(s, 1, 2));
  CHECK(r22.pass());

  // odd weight: unit lead at order 1, remainder visibly not in m_0 over Z/p
  LeadingFormReport r3 = leading_form(euler_of_weights(law, {3}, 8));
  CHECK(r3.k_expected == 1);
  CHECK(r3.k_found == 1);
  CHECK(r3.order_ok);
  CHECK(r3.unit_ok);
  CHECK_FALSE(r3.remainder_in_m0);

  LeadingFormReport r6 = leading_form(euler_of_weights(law, {6}, 8));
  CHECK(r6.k_found == 2);
  CHECK(r6.lead == coef_gen(s, 1));

  // height 2
  FormalGroupLaw law2 = reduce_fgl(build_ptypical(2, 6, 2), kpr_ring(2, 1, 2));
  LeadingFormReport rh2 = leading_form(euler_of_weights(law2, {2}, 8));
  CHECK(rh2.k_found == 4);
  CHECK(rh2.lead == coef_gen(law2.spec, 2));
  CHECK(rh2.pass());

  // over the localized integral ring the scalar tail sits inside m_0
  FormalGroupLaw lawe = reduce_fgl(build_ptypical(2, 6), en_ring(2, 1, 14));
  LeadingFormReport re = leading_form(euler_of_weights(lawe, {2}, 6));
  CHECK(re.k_found == 2);
  CHECK(re.lead == coef_gen(lawe.spec, 1));
  CHECK(re.remainder_in_m0);
}

TEST_CASE("injectivity window") {
  FormalGroupLaw law = k21_law(8);

  ABInjectivityReport one = ab_injectivity_check(euler_of_weights(law, {1}, 5), 1, {0});
  CHECK(one.k == 1);
  CHECK(one.injective);

  ABInjectivityReport r = ab_injectivity_check(euler_of_weights(law, {2}, 8), 1, {0});
  CHECK(r.rank == 1);
  CHECK(r.k == 2);
  CHECK(r.window == 6);
  CHECK(r.injective);
  CHECK(r.kernel.empty());

  ABInjectivityReport r2 = ab_injectivity_check(euler_of_weights(law, {2}, 8), 2, {0, 1});
  CHECK(r2.injective);

  // zeroing the claimed leading slot must surface a kernel
  EulerClass bad = euler_of_weights(law, {2}, 8);
  bad.e.c[2] = coef_zero(bad.spec);
  ABInjectivityReport rb = ab_injectivity_check(bad, 1, {0});
  CHECK_FALSE(rb.injective);
  CHECK(rb.kernel.size() == 6);

  CHECK_THROWS_AS(ab_injectivity_check(euler_of_weights(law, {2}, 2), 1, {0}),
                  std::invalid_argument);
  FormalGroupLaw lawe = reduce_fgl(build_ptypical(2, 6), en_ring(2, 1, 14));
  CHECK_THROWS(ab_injectivity_check(euler_of_weights(lawe, {2}, 6), 1, {0}));
}

TEST_SUITE_END();
