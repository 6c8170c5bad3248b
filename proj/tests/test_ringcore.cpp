#include <doctest.h>

#include <fglforge/coef.hpp>
#include <fglforge/ringspec.hpp>

#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace fglforge;

TEST_SUITE_BEGIN("ringcore");

TEST_CASE("spec accessors") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK(k21.scalar_modulus() == 2);
  CHECK(k21.charp());
  CHECK(k21.unit_gen() == 1);
  CHECK(k21.low_gen() == 1);
  CHECK(k21.gen_alive(1));
  CHECK_FALSE(k21.gen_alive(2));

  RingSpec k42 = kpr_ring(2, 2, 2);
  CHECK(k42.scalar_modulus() == 4);
  CHECK_FALSE(k42.charp());
  CHECK(k42.unit_gen() == 2);
  CHECK_FALSE(k42.gen_alive(1));

  RingSpec bp = bp_truncated(2, 3, 64);
  CHECK(bp.scalar_modulus() == 0);
  CHECK(bp.p_local_integral());
  CHECK(bp.unit_gen() == 0);
  CHECK(bp.low_gen() == 1);

  RingSpec bpq = bp_mod_ih(2, 2, 3, 64);
  CHECK(bpq.scalar_modulus() == 2);
  CHECK(bpq.low_gen() == 2);
  CHECK_FALSE(bpq.gen_alive(1));
  CHECK(bpq.gen_alive(2));

  RingSpec e2 = en_ring(2, 2, 64);
  CHECK(e2.scalar_modulus() == 0);
  CHECK(e2.p_local_integral());
  CHECK(e2.unit_gen() == 2);
  CHECK(e2.low_gen() == 1);

  RingSpec rat = rational_vpoly(3, 2, 64);
  CHECK(rat.rational_scalars());
  CHECK_FALSE(rat.p_local_integral());
}

TEST_CASE("generator degrees") {
  RingSpec bp2 = bp_truncated(2, 3, 64);
  CHECK(bp2.gen_degree(1) == -2);
  CHECK(bp2.gen_degree(2) == -6);
  CHECK(bp2.gen_degree(3) == -14);
  RingSpec bp3 = bp_truncated(3, 2, 64);
  CHECK(bp3.gen_degree(1) == -4);
  CHECK(bp3.gen_degree(2) == -16);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(kpr_ring(1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(kpr_ring(2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(kpr_ring(2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(en_ring(2, 0, 64), std::invalid_argument);
  CHECK_THROWS_AS(bp_mod_ih(2, 5, 3, 64), std::invalid_argument);

  RingSpec bad = bp_truncated(2, 2, 64);
  bad.r = 2;
  CHECK_THROWS_AS(bad.check_valid(), std::invalid_argument);

  RingSpec badv = bp_truncated(2, 2, 64);
  badv.vkill = 1;
  CHECK_THROWS_AS(badv.check_valid(), std::invalid_argument);

  RingSpec bade = en_ring(2, 2, 64);
  bade.ih = 1;
  CHECK_THROWS_AS(bade.check_valid(), std::invalid_argument);

  RingSpec badc = rational_vpoly(2, 1, 64);
  badc.degree_cutoff = -1;
  CHECK_THROWS_AS(badc.check_valid(), std::invalid_argument);
}

TEST_CASE("truncation helpers") {
  CHECK(gens_for_truncation(2, 2) == 0);
  CHECK(gens_for_truncation(2, 3) == 1);
  CHECK(gens_for_truncation(2, 8) == 2);
  CHECK(gens_for_truncation(2, 9) == 3);
  CHECK(gens_for_truncation(2, 16) == 3);
  CHECK(gens_for_truncation(2, 17) == 4);
  CHECK(gens_for_truncation(3, 9) == 1);
  CHECK(gens_for_truncation(3, 10) == 2);
  CHECK(cutoff_for_truncation(8) == 18);
  CHECK(cutoff_for_truncation(16) == 34);
}

TEST_CASE("degree window") {
  RingSpec e2 = en_ring(2, 2, 6);
  // v1 counts against the window, the inverted v2 does not
  CHECK(coef_gen(e2, 1, 3) == coef_mono(e2, expvec_gen(1, 3), 1));
  CHECK(coef_gen(e2, 1, 4).is_zero());
  CHECK_FALSE(coef_gen(e2, 2, 9).is_zero());
  CHECK(e2.window_degree(expvec_gen(1, 3)) == -6);
  CHECK(e2.in_window(expvec_gen(1, 3)));
  CHECK_FALSE(e2.in_window(expvec_gen(1, 4)));
  CHECK(e2.full_degree(expvec_add(expvec_gen(1, 1), expvec_gen(2, 1))) == -8);

  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK_FALSE(coef_gen(k21, 1, -7).is_zero());
  CHECK_THROWS(coef_gen(e2, 1, -1));
  CHECK_THROWS(coef_gen(k21, 2));
  // generators under the quotient height vanish instead of throwing
  CHECK(coef_gen(bp_mod_ih(2, 2, 3, 64), 1).is_zero());
}

TEST_CASE("arithmetic on pinned values") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK(coef_text(coef_gen(k21, 1) * coef_gen(k21, 1)) == "v1^2");

  RingSpec bp = bp_truncated(2, 2, 64);
  CHECK(coef_gen(bp, 1) + coef_gen(bp, 2) + (-coef_gen(bp, 1)) == coef_gen(bp, 2));
  CoefElem t = coef_int(bp, 2) + coef_gen(bp, 1);
  CHECK(coef_text(t * t) == "4 + 4*v1 + v1^2");
}

TEST_CASE("ring laws on random elements") {
  std::mt19937 rng(20240816);
  for (const RingSpec& s : {kpr_ring(2, 2, 1), bp_truncated(3, 2, 60)}) {
    for (int trial = 0; trial < 25; ++trial) {
      CoefElem a = testutil::random_elem(s, rng);
      CoefElem b = testutil::random_elem(s, rng);
      CoefElem c = testutil::random_elem(s, rng);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == coef_zero(s));
      CHECK(a * coef_one(s) == a);
    }
  }
  CHECK_THROWS(coef_gen(kpr_ring(2, 1, 1), 1) + coef_gen(kpr_ring(3, 1, 1), 1));
}

TEST_CASE("frobenius is a ring map in prime characteristic") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    CoefElem a = testutil::random_elem(k21, rng);
    CoefElem b = testutil::random_elem(k21, rng);
    CHECK(coef_frobenius(a + b) == coef_frobenius(a) + coef_frobenius(b));
    CHECK(coef_frobenius(a * b) == coef_frobenius(a) * coef_frobenius(b));
    CHECK(coef_frobenius(a) == a * a);
  }
  CHECK(coef_text(coef_frobenius(coef_gen(k21, 1))) == "v1^2");
  CHECK_THROWS(coef_frobenius(coef_gen(kpr_ring(2, 2, 1), 1)));
}

TEST_CASE("ideal reduction") {
  RingSpec k42 = kpr_ring(2, 2, 1);
  CoefElem x = coef_int(k42, 2) + coef_gen(k42, 1);
  CHECK(reduce_mod_ideal(x, Ideal::m0()) == coef_gen(k42, 1));
  CHECK(reduce_mod_ideal(coef_int(k42, 2), Ideal::m0()).is_zero());
  CHECK_THROWS(reduce_mod_ideal(x, Ideal::ih(2)));

  // the inverted generator survives the maximal ideal
  RingSpec e1 = en_ring(2, 1, 20);
  CoefElem y = coef_int(e1, 2) + coef_gen(e1, 1, 3);
  CHECK(reduce_mod_ideal(y, Ideal::m0()) == coef_gen(e1, 1, 3));

  // exact scalars are kept, positive generator exponents die
  RingSpec rat = rational_vpoly(2, 1, 20);
  CoefElem z = coef_mpq(rat, mpq_class(3, 7)) + coef_gen(rat, 1);
  CHECK(reduce_mod_ideal(z, Ideal::m0()) == coef_mpq(rat, mpq_class(3, 7)));
  CHECK_THROWS(reduce_mod_ideal(z, Ideal::ih(1)));

  RingSpec bp = bp_truncated(2, 2, 20);
  CoefElem w = coef_int(bp, 3) + coef_gen(bp, 1) + coef_gen(bp, 2);
  CHECK(reduce_mod_ideal(w, Ideal::ih(2)) == coef_int(bp, 1) + coef_gen(bp, 2));

  RingSpec k21 = kpr_ring(2, 1, 1);
  CoefElem g = coef_gen(k21, 1) + coef_one(k21);
  CHECK(reduce_mod_ideal(g, Ideal::m0()) == g);
}

TEST_CASE("units and inverses") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK(coef_is_unit(coef_gen(k21, 1)));
  CoefInverse iv = coef_inverse(coef_gen(k21, 1));
  CHECK(iv.exact);
  CHECK(coef_text(iv.inv) == "v1^-1");
  CHECK(iv.inv * coef_gen(k21, 1) == coef_one(k21));

  RingSpec k42 = kpr_ring(2, 2, 1);
  CHECK_FALSE(coef_is_unit(coef_int(k42, 2)));
  CHECK_THROWS_AS(coef_inverse(coef_int(k42, 2)), std::domain_error);
  CoefElem vn = coef_gen(k42, 1);
  CoefElem a = vn + coef_scale_int(vn * vn, 2);
  CHECK(coef_is_unit(a));
  CoefInverse ia = coef_inverse(a);
  CHECK(ia.exact);
  CHECK(ia.inv == coef_gen(k42, 1, -1) + coef_int(k42, -2));
  CHECK(ia.inv * a == coef_one(k42));

  // 1 + v1 has no inverse among small Laurent candidates
  CoefElem b = coef_one(k21) + coef_gen(k21, 1);
  CHECK_FALSE(coef_is_unit(b));
  bool found = false;
  for (int e1 = -3; e1 <= 3 && !found; ++e1)
    for (int e2 = -3; e2 <= 3 && !found; ++e2)
      for (int two = 0; two <= 1 && !found; ++two) {
        CoefElem cand = coef_gen(k21, 1, e1);
        if (two && e2 != e1) cand = cand + coef_gen(k21, 1, e2);
        if (cand * b == coef_one(k21)) found = true;
      }
  CHECK_FALSE(found);

  RingSpec bp = bp_truncated(2, 1, 20);
  CHECK(coef_is_unit(coef_int(bp, 3)));
  CoefInverse i3 = coef_inverse(coef_int(bp, 3));
  CHECK(i3.exact);
  CHECK(i3.inv == coef_mpq(bp, mpq_class(1, 3)));
  CHECK_FALSE(coef_is_unit(coef_int(bp, 2)));

  // depth cap cuts the geometric expansion before the window does
  RingSpec rat = rational_vpoly(2, 1, 20);
  CoefInverse ne = coef_inverse(coef_one(rat) + coef_gen(rat, 1), 3);
  CHECK_FALSE(ne.exact);
  CHECK(ne.depth_used == 3);
  CoefInverse we = coef_inverse(coef_one(rat) + coef_gen(rat, 1));
  CHECK(we.exact);
  CHECK(we.inv * (coef_one(rat) + coef_gen(rat, 1)) == coef_one(rat));
}

TEST_CASE("ring change") {
  long c = 60;
  RingSpec rat = rational_vpoly(2, 2, c);
  RingSpec bp = bp_truncated(2, 2, c);
  RingSpec e1 = en_ring(2, 1, c);
  RingSpec k21 = kpr_ring(2, 1, 1);
  RingSpec k41 = kpr_ring(2, 2, 1);

  CHECK(reduce_coef(coef_mpq(rat, mpq_class(1, 3)), bp) == coef_mpq(bp, mpq_class(1, 3)));
  CHECK_THROWS(reduce_coef(coef_mpq(rat, mpq_class(1, 2)), bp));
  CHECK(reduce_coef(coef_gen(bp, 2), e1).is_zero());
  CHECK(reduce_coef(coef_scale_int(coef_gen(e1, 1), 2), k21).is_zero());
  CHECK(reduce_coef(coef_int(bp, 7), k41) == coef_int(k41, 3));
  CHECK(reduce_coef(coef_gen(k41, 1) + coef_int(k41, 2), k21) == coef_gen(k21, 1));
  CHECK_THROWS(reduce_coef(coef_gen(k21, 1), e1));
  CHECK_THROWS(reduce_coef(coef_gen(bp, 1), rat));
  CHECK_THROWS(reduce_coef(coef_gen(en_ring(2, 2, c), 2), k21));
  CHECK_THROWS(reduce_coef(coef_gen(k21, 1), kpr_ring(3, 1, 1)));

  // reductions compose and respect the ring operations
  std::mt19937 rng(99);
  RingSpec e2 = en_ring(2, 2, c);
  RingSpec k22 = kpr_ring(2, 1, 2);
  for (int t = 0; t < 10; ++t) {
    CoefElem a = testutil::random_elem(bp, rng);
    CoefElem b = testutil::random_elem(bp, rng);
    for (const RingSpec& tgt : {e2, k22}) {
      CHECK(reduce_coef(a * b, tgt) == reduce_coef(a, tgt) * reduce_coef(b, tgt));
      CHECK(reduce_coef(a + b, tgt) == reduce_coef(a, tgt) + reduce_coef(b, tgt));
    }
    CHECK(reduce_coef(reduce_coef(a, e2), k22) == reduce_coef(a, k22));
  }
}

TEST_CASE("grading") {
  RingSpec bp = bp_truncated(2, 2, 40);
  HomDegree d = coef_degree(coef_gen(bp, 1) * coef_gen(bp, 2));
  CHECK(d.homogeneous);
  CHECK(d.degree == -8);
  CHECK_FALSE(coef_degree(coef_gen(bp, 1) + coef_gen(bp, 2)).homogeneous);
  CHECK(coef_degree(coef_zero(bp)).zero);
  HomDegree c0 = coef_degree(coef_int(bp, 5));
  CHECK(c0.homogeneous);
  CHECK(c0.degree == 0);
}

TEST_CASE("scalar helpers") {
  CHECK(mpq_from_string("-3/2") == mpq_class(-3, 2));
  CHECK(mpq_from_string("7") == 7);
  CHECK_THROWS_AS(mpq_from_string("x7"), std::invalid_argument);
  CHECK(padic_val_ul(8, 2) == 3);
  CHECK(padic_val_ul(7, 2) == 0);
  CHECK(padic_val_ul(0, 2) == -1);
  CHECK(mod_inv_ppow(3, 2, 2) == 3);
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_sub(1, 3, 4) == 2);
}

TEST_CASE("text forms") {
  RingSpec k21 = kpr_ring(2, 1, 1);
  CHECK(coef_text(coef_zero(k21)) == "0");
  CHECK(coef_text(coef_gen(k21, 1, -1)) == "v1^-1");
  RingSpec rat = rational_vpoly(2, 1, 20);
  CHECK(coef_text(coef_mpq(rat, mpq_class(-3, 2))) == "-3/2");
  CHECK(coef_text(coef_scale(coef_gen(rat, 1), mpq_class(1, 2))) == "1/2*v1");
}

TEST_SUITE_END();
