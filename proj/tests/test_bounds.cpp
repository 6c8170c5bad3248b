#include <doctest.h>

#include <fglforge/bounds.hpp>

#include <stdexcept>
#include <vector>

using namespace fglforge;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("unit-led cofactor of the p-series") {
  USeries pi = pi_series(2, 1, 0, 8);
  CHECK(us_text(pi) == "v1 + v2*u^2 + v1^2*v2*u^4 + (v3 + v1^4*v2)*u^6");
  CHECK(pi.c[0] == coef_gen(pi.spec, 1));
  CHECK(pi.c[1].is_zero());
  CHECK(pi.c[2] == coef_gen(pi.spec, 2));

  USeries pi2 = pi_series(2, 2, 0, 4);
  CHECK(pi2.c[0] == coef_gen(pi2.spec, 2));

  USeries pi3 = pi_series(3, 1, 0, 7);
  CHECK(pi3.c[0] == coef_gen(pi3.spec, 1));
  for (long j = 1; j < 6; ++j) CHECK(pi3.c[j].is_zero());
  CHECK(pi3.c[6] == coef_gen(pi3.spec, 2));
}

TEST_CASE("p-series factors through its shift") {
  USeries ps = pseries_mod_ih(2, 1, 8);
  CHECK(us_shift_div(ps, 2) == us_truncate(pi_series(2, 1, 0, 8), 6));
  // composing with [p] once more advances the tower index
  CHECK(pi_series(2, 1, 1, 8) == us_compose(pi_series(2, 1, 0, 8), ps));
}

TEST_CASE("p-power factorization certificates") {
  UPowersCertificate c1 = verify_upowers(2, 1, 1, 10);
  CHECK(c1.pass);
  CHECK(c1.shift == 2);
  CHECK(c1.first_mismatch == -1);

  UPowersCertificate c2 = verify_upowers(2, 1, 2, 20);
  CHECK(c2.pass);
  CHECK(c2.shift == 4);

  UPowersCertificate c3 = verify_upowers(2, 2, 2, 40);
  CHECK(c3.pass);
  CHECK(c3.shift == 16);

  UPowersCertificate c4 = verify_upowers(3, 1, 2, 12);
  CHECK(c4.pass);
  CHECK(c4.shift == 9);

  CHECK_THROWS(verify_upowers(2, 1, 2, 4));
}

TEST_CASE("double-sum constant") {
  CHECK(bound_B(2, {0}, {{1}}) == 1);
  CHECK(bound_B(2, {0, 1}, {{1, 1, 2}}) == 11);
  CHECK(bound_B(2, {}, {{1, 2}}) == 0);

  // monotone in each weight exponent and in each height
  LandweberFiltration f{{1, 2}};
  for (long w = 0; w < 5; ++w)
    CHECK(bound_B(2, {w, 1}, f) < bound_B(2, {w + 1, 1}, f));
  for (long h = 0; h < 4; ++h)
    CHECK(bound_B(2, {1, 2}, {{h, 1}}) < bound_B(2, {1, 2}, {{h + 1, 1}}));
}

TEST_CASE("lens-space bound") {
  LensBound lb = lens_bound(2, 3, 1, {{1, 2}});
  CHECK(lb.C == 6);
  CHECK(lb.r == 36);
  CHECK(lens_bound(2, 1, 1, {{1, 2}}).r == 0);
  CHECK(lens_bound(2, 4, 0, {{1, 2, 3}}).C == 3);
  for (long q = 2; q < 6; ++q)
    CHECK(lens_bound(2, q, 1, {{1, 2}}).r < lens_bound(2, q + 1, 1, {{1, 2}}).r);
  for (long s = 0; s < 4; ++s)
    CHECK(lens_bound(2, 3, s, {{1, 2}}).r < lens_bound(2, 3, s + 1, {{1, 2}}).r);
}

TEST_CASE("height selection") {
  CHECK(choose_height(0, 2) == 1);
  CHECK(choose_height(5, 2) == 3);
  CHECK(choose_height(5, 3) == 2);
  for (long m = 0; m <= 20; ++m) {
    for (long p : {2L, 3L}) {
      long n = choose_height(m, p);
      long pn = 1;
      for (long i = 0; i < n; ++i) pn *= p;
      CHECK(2 * (pn - 1) > m + 1);
      if (n > 1) CHECK(2 * (pn / p - 1) <= m + 1);
    }
  }
}

TEST_CASE("scalar diagonal series") {
  std::vector<unsigned long> d1 = euler_scalar_series(2, 1, 1, {2}, 6);
  CHECK(d1 == std::vector<unsigned long>{0, 0, 1, 0, 0, 0});
  std::vector<unsigned long> d0 = euler_scalar_series(2, 2, 0, {3}, 8);
  CHECK(d0 == std::vector<unsigned long>{0, 3, 3, 1, 0, 2, 2, 2});
  CHECK_THROWS(euler_scalar_series(2, 2, 1, {2}, 6));
}

TEST_CASE("kernel vanishing certificates") {
  FilteredModuleModel single;
  single.p = 2;
  single.r = 1;
  single.heights = {1};
  single.weights = {2};
  single.eplus = {{{}}};
  KernelVanishingCertificate kc = kernel_vanishing_check(single, 3, 1);
  CHECK(kc.B == 2);
  CHECK(kc.window == 5);
  CHECK(kc.intertwine_ok);
  CHECK(kc.nilpotent_ok);
  CHECK(kc.geometric_ok);
  CHECK(kc.kernel_empty_mod_A);
  CHECK(kc.kernel_min_order == 3);
  CHECK(kc.pass());

  FilteredModuleModel two;
  two.p = 2;
  two.r = 1;
  two.heights = {1, 2};
  two.weights = {2};
  two.eplus.assign(2, std::vector<std::vector<unsigned long>>(2));
  two.eplus[0][1] = {0, 0, 0, 1};  // u^3 connects slice 1 into slice 0
  KernelVanishingCertificate k2 = kernel_vanishing_check(two, 4, 2);
  CHECK(k2.B == 6);
  CHECK(k2.window == 16);
  CHECK(k2.pass());

  // connecting data must step down in the filtration
  FilteredModuleModel badshape = two;
  badshape.eplus[0][1].clear();
  badshape.eplus[1][0] = {0, 0, 1};
  CHECK_THROWS(kernel_vanishing_check(badshape, 4, 2));

  // q = 1 leaves no room for a nilpotent part
  KernelVanishingCertificate kq1 = kernel_vanishing_check(two, 4, 1);
  CHECK_FALSE(kq1.nilpotent_ok);
  CHECK_FALSE(kq1.pass());

  // p-divisible weight on a height-0 slice shifts the lead below the bound
  FilteredModuleModel corrupt;
  corrupt.p = 2;
  corrupt.r = 1;
  corrupt.heights = {0};
  corrupt.weights = {2};
  corrupt.eplus = {{{}}};
  KernelVanishingCertificate kx = kernel_vanishing_check(corrupt, 3, 1);
  CHECK(kx.intertwine_ok);
  CHECK(kx.nilpotent_ok);
  CHECK(kx.geometric_ok);
  CHECK_FALSE(kx.kernel_empty_mod_A);
  CHECK(kx.kernel_gens == 2);
  CHECK(kx.kernel_min_order == 2);
  CHECK_FALSE(kx.pass());

  // deeper scalars on height-0 slices stay exact
  FilteredModuleModel deep;
  deep.p = 2;
  deep.r = 2;
  deep.heights = {0, 0};
  deep.weights = {3};
  deep.eplus.assign(2, std::vector<std::vector<unsigned long>>(2));
  deep.eplus[0][1] = {0, 0, 0, 1};
  KernelVanishingCertificate kd = kernel_vanishing_check(deep, 4, 2);
  CHECK(kd.B == 2);
  CHECK(kd.window == 8);
  CHECK(kd.pass());
}

TEST_SUITE_END();
