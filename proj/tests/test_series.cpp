#include <doctest.h>

#include <fglforge/useries.hpp>

#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace fglforge;
using testutil::naive_mul;
using testutil::random_series;

TEST_SUITE_BEGIN("series");

TEST_CASE("constructors and slots") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK(us_zero(k21, 4).is_zero());
  CHECK(us_lowest_slot(us_zero(k21, 4)) == -1);
  CHECK(us_lowest_slot(us_u(k21, 4)) == 1);
  USeries m = us_monomial(coef_gen(k21, 1), 2, 5);
  CHECK(us_lowest_slot(m) == 2);
  CHECK(m.c[2] == coef_gen(k21, 1));
  CHECK(us_lowest_slot(us_const(coef_one(k21), 3)) == 0);
}

TEST_CASE("products") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  USeries u = us_u(k21, 5);
  CHECK(u * u == us_monomial(coef_one(k21), 2, 5));

  // square of u + v1 u^2 in characteristic 2: cross terms cancel
  USeries f = u + us_monomial(coef_gen(k21, 1), 2, 5);
  CHECK(f * f == us_monomial(coef_one(k21), 2, 5) + us_monomial(coef_gen(k21, 1, 2), 4, 5));

  RingSpec rat = rational_vpoly(2, 1, 20);
  USeries one = us_const(coef_one(rat), 3);
  USeries ur = us_u(rat, 3);
  CHECK((one + ur) * (one - ur) == one - us_monomial(coef_one(rat), 2, 3));

  std::mt19937 rng(11);
  for (int t = 0; t < 6; ++t) {
    USeries a = random_series(kpr_ring(2, 2, 1), 8, rng);
    USeries b = random_series(kpr_ring(2, 2, 1), 8, rng);
    CHECK(a * b == naive_mul(a, b));
    USeries c = random_series(bp_truncated(3, 1, 20), 6, rng, 0);
    USeries d = random_series(bp_truncated(3, 1, 20), 6, rng, 0);
    CHECK(c * d == naive_mul(c, d));
  }

  CHECK_THROWS(us_u(k21, 4) + us_u(k21, 5));
  CHECK_THROWS(us_u(k21, 4) + us_u(kpr_ring(3, 1, 1), 4));
}

TEST_CASE("scaling") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  std::mt19937 rng(12);
  USeries f = random_series(k21, 7, rng);
  CoefElem v = coef_gen(k21, 1);
  CHECK(us_scale(v, f) == us_const(v, 7) * f);
  CHECK(us_scale_int(3, f) == f + f + f);
  CHECK(us_mul_umono(f, v, 2) == f * us_monomial(v, 2, 7));
}

TEST_CASE("composition") {
  RingSpec rat = rational_vpoly(2, 1, 20);
  USeries f = us_u(rat, 4) + us_monomial(coef_one(rat), 2, 4);
  CHECK(us_text(us_compose(f, f)) == "u + 2*u^2 + 2*u^3");

  RingSpec k21 = kpr_ring(2, 1, 1);
  std::mt19937 rng(13);
  for (int t = 0; t < 4; ++t) {
    USeries a = random_series(k21, 8, rng);
    USeries g = random_series(k21, 8, rng);
    USeries h = random_series(k21, 8, rng);
    CHECK(us_compose(us_compose(a, g), h) == us_compose(a, us_compose(g, h)));
    UPowerTable hp(h);
    CHECK(us_compose(g, hp, h.spec, h.T) == us_compose(g, h));
  }
  CHECK_THROWS(us_compose(f, us_const(coef_one(rat), 4)));
}

TEST_CASE("reversion") {
  RingSpec rat = rational_vpoly(2, 1, 20);
  USeries f = us_u(rat, 4) + us_monomial(coef_one(rat), 2, 4);
  CHECK(us_text(us_reversion(f)) == "u - u^2 + 2*u^3");
  CHECK(us_reversion(us_u(rat, 6)) == us_u(rat, 6));

  RingSpec k21 = kpr_ring(2, 1, 1);
  std::mt19937 rng(14);
  for (int t = 0; t < 4; ++t) {
    // unit linear slot plus random junk from u^2 on
    USeries g = us_u(k21, 8) + us_mul_umono(random_series(k21, 8, rng), coef_one(k21), 1);
    USeries rev = us_reversion(g);
    CHECK(us_compose(g, rev) == us_u(k21, 8));
    CHECK(us_compose(rev, g) == us_u(k21, 8));
  }
  CHECK_THROWS(us_reversion(us_scale_int(2, us_u(kpr_ring(2, 2, 1), 4))));
}

TEST_CASE("powers and frobenius") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  std::mt19937 rng(15);
  USeries g = random_series(k21, 8, rng);
  USeries five = g * g;
  five = five * five * g;
  CHECK(us_power(g, 5) == five);
  CHECK(us_power(g, 1) == g);
  CHECK(us_power(g, 0) == us_const(coef_one(k21), 8));
  CHECK(us_frobenius(g) == naive_mul(g, g));
  CHECK_THROWS(us_frobenius(random_series(kpr_ring(2, 2, 1), 6, rng)));
}

TEST_CASE("multiplicative inverse") {
  RingSpec rat = rational_vpoly(2, 1, 20);
  USeries f = us_const(coef_one(rat), 6) + us_u(rat, 6) +
              us_monomial(coef_gen(rat, 1), 3, 6);
  CHECK(f * us_series_inverse(f) == us_const(coef_one(rat), 6));
  CHECK_THROWS(us_series_inverse(us_u(rat, 6)));
  CHECK_THROWS(us_series_inverse(us_const(coef_int(kpr_ring(2, 2, 1), 2), 6)));
}

TEST_CASE("shift and truncation") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  std::mt19937 rng(16);
  USeries g = random_series(k21, 6, rng, 0);
  USeries shifted = us_mul_umono(g, coef_one(k21), 2);
  CHECK(us_shift_div(shifted, 2) == us_truncate(g, shifted.T - 2));
  CHECK_THROWS(us_shift_div(us_u(k21, 4), 2));

  USeries f = random_series(k21, 6, rng);
  USeries cut = us_truncate(f, 3);
  CHECK(cut.T == 3);
  USeries back = us_extend_zero(cut, 6);
  for (long j = 0; j < 3; ++j) CHECK(back.c[j] == f.c[j]);
  for (long j = 3; j < 6; ++j) CHECK(back.c[j].is_zero());
}

TEST_CASE("lowest term mod an ideal") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  USeries g = us_monomial(coef_gen(k21, 1), 2, 6) + us_monomial(coef_one(k21), 5, 6);
  LowestTerm lt = us_lowest_term(g, Ideal::none());
  CHECK(lt.found);
  CHECK(lt.ord == 2);
  CHECK(lt.coef == coef_gen(k21, 1));

  RingSpec k41 = kpr_ring(2, 2, 1);
  USeries h = us_scale_int(2, us_u(k41, 6)) + us_monomial(coef_gen(k41, 1), 2, 6);
  LowestTerm lt2 = us_lowest_term(h, Ideal::m0());
  CHECK(lt2.found);
  CHECK(lt2.ord == 2);
  CHECK(lt2.coef == coef_gen(k41, 1));

  CHECK_FALSE(us_lowest_term(us_scale_int(2, us_u(k41, 6)), Ideal::m0()).found);
}

TEST_CASE("coefficient reduction on series") {
  RingSpec bp = bp_truncated(2, 1, 20);
  RingSpec k21 = kpr_ring(2, 1, 1);
  USeries f = us_monomial(coef_int(bp, 2), 1, 4) + us_monomial(coef_gen(bp, 1), 2, 4);
  USeries red = us_reduce_coef(f, k21);
  CHECK(red.c[1].is_zero());
  CHECK(red.c[2] == coef_gen(k21, 1));
  USeries rid = us_reduce_ideal(us_const(coef_int(kpr_ring(2, 2, 1), 2), 3), Ideal::m0());
  CHECK(rid.is_zero());
}

TEST_CASE("homogeneity check") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  USeries f = us_monomial(coef_gen(k21, 1), 2, 5);
  CHECK_NOTHROW(us_check_homogeneous(f, 2));
  USeries bad = f + us_monomial(coef_one(k21), 3, 5);
  CHECK_THROWS(us_check_homogeneous(bad, 2));
}

TEST_CASE("text forms") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK(us_text(us_zero(k21, 4)) == "0");
  CHECK(us_text(us_u(k21, 4) + us_monomial(coef_gen(k21, 1), 2, 4)) == "u + v1*u^2");
  CHECK(us_text(us_u(k21, 3), "w") == "w");
}

TEST_SUITE_END();
