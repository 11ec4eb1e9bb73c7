#include <cmath>
#include <numbers>
#include <random>

#include "backflow/case_catalog.hpp"
#include "backflow/error.hpp"
#include "doctest.h"

using namespace backflow;
using std::numbers::pi;

namespace {

CaseSpec make(int id, double a, double phi, Helicity l, double k,
              EnergySign s = EnergySign::positive) {
  CaseSpec spec;
  spec.case_id = id;
  spec.a = a;
  spec.phi = phi;
  spec.lambda = l;
  spec.k = k;
  spec.energy_sign = s;
  return spec;
}

}  // namespace

TEST_CASE("build_case shapes") {
  const auto one = build_case(make(1, 0.0, 0.0, Helicity::up, 1.0));
  CHECK(one.terms().size() == 1);

  const auto two = build_case(make(2, 1.0, pi, Helicity::up, 1.0));
  REQUIRE(two.terms().size() == 2);
  CHECK(std::abs(two.terms()[0].coefficient) == doctest::Approx(std::abs(two.terms()[1].coefficient)));
  CHECK(two.terms()[0].mode.k == two.terms()[1].mode.k);
  CHECK(two.terms()[1].mode.energy_sign == EnergySign::negative);

  const auto four = build_case(make(4, 0.5, 0.0, Helicity::up, 1.0));
  REQUIRE(four.terms().size() == 2);
  CHECK(four.terms()[1].mode.helicity == Helicity::down);
  CHECK(four.terms()[1].mode.energy_sign == EnergySign::negative);
  CHECK(four.terms()[1].mode.k == 1.0);

  const auto seven = build_case(make(7, 0.5, 0.0, Helicity::up, 1.0));
  CHECK(seven.terms()[1].mode.k == -1.0);
  CHECK(seven.terms()[0].mode.k == 0.0);
}

TEST_CASE("build_case rejects invalid specs") {
  try {
    static_cast<void>(build_case(make(9, 0.5, 0.0, Helicity::up, 1.0)));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_case);
  }
  CHECK_THROWS_AS(static_cast<void>(build_case(make(2, 0.5, 0.0, Helicity::up, 0.0))), Error);
  CHECK_THROWS_AS(static_cast<void>(build_case(make(2, -0.5, 0.0, Helicity::up, 1.0))), Error);
}

TEST_CASE("closed-form values") {
  // gamma = 2 instance of case 2 at a = 1, phi = pi
  const auto c2 = closed_form_current(make(2, 1.0, pi, Helicity::up, std::sqrt(3.0)));
  CHECK(c2.jz(0.0) == doctest::Approx(-0.5).epsilon(1e-15));

  for (double a : {0.0, 0.3, 0.9}) {
    const double k = 1.4;
    const auto c4 = closed_form_current(make(4, a, 0.7, Helicity::down, k));
    const double e = std::hypot(k, 1.0);
    CHECK(c4.jz(2.0) == doctest::Approx(k / e * (1 - a * a) / (1 + a * a)));
    CHECK(c4.jz(2.0) > 0.0);
  }

  const double a = 0.4;
  const double k = 1.1;
  const double phi = 0.9;
  const auto c5 = closed_form_current(make(5, a, phi, Helicity::up, k));
  const Vec3 j = c5(phi / (2.0 * k));
  CHECK(j[0] == doctest::Approx(2.0 * a / ((1 + a * a) * std::hypot(k, 1.0))));
  CHECK(j[1] == doctest::Approx(0.0));
}

TEST_CASE("verify_case: eigenstates fit with scale 1") {
  const auto zs = linspace(-10.0, 10.0, 201);
  for (auto s : {EnergySign::positive, EnergySign::negative}) {
    const auto v = verify_case(make(1, 0.0, 0.0, Helicity::up, 1.3, s), zs);
    CHECK(v.fitted_scale == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.max_residual < 1e-12);
    CHECK(v.passed);
  }
}

TEST_CASE("verify_case: case 3 on a fine grid") {
  const auto v = verify_case(make(3, 0.3, pi / 3.0, Helicity::up, 1.0), linspace(-10.0, 10.0, 1001));
  CHECK(v.max_residual < 1e-10);
  CHECK(v.fitted_scale == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verify_case: unnormalized families carry a factor of two") {
  const auto zs = linspace(-10.0, 10.0, 301);
  for (auto s : {EnergySign::positive, EnergySign::negative}) {
    const auto v6 = verify_case(make(6, 1.0 / std::sqrt(2.0), pi, Helicity::up, 1.0, s), zs);
    CHECK(v6.fitted_scale == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(v6.passed);
  }
  const auto v7 = verify_case(make(7, 0.5, 0.3, Helicity::down, 2.0), zs);
  CHECK(v7.fitted_scale == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(expected_scale(6) == 2.0);
  CHECK(expected_scale(3) == 1.0);
}

TEST_CASE("verify_case: every family, randomized, under non-unit constants") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> amp(0.01, 0.99);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> wave(0.05, 3.0);
  std::uniform_real_distribution<double> constant(0.5, 2.0);
  std::bernoulli_distribution coin(0.5);
  const auto zs = linspace(-10.0, 10.0, 101);
  for (int id = 1; id <= 7; ++id)
    for (int n = 0; n < 20; ++n) {
      CaseSpec spec = make(id, amp(rng), phase(rng), coin(rng) ? Helicity::up : Helicity::down, wave(rng),
                           coin(rng) ? EnergySign::positive : EnergySign::negative);
      spec.params = {constant(rng), constant(rng), constant(rng)};
      const auto v = verify_case(spec, zs);
      CHECK(v.passed);
      CHECK(v.fitted_scale == doctest::Approx(expected_scale(id)).epsilon(1e-10));
    }
}

TEST_CASE("verify_case with an empty grid") {
  CHECK_THROWS_AS(static_cast<void>(verify_case(make(1, 0, 0, Helicity::up, 1.0), {})), Error);
}

TEST_CASE("critical amplitude") {
  CHECK(critical_amplitude(1.0) == 0.0);
  CHECK(critical_amplitude(3.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(static_cast<void>(critical_amplitude(0.9)), Error);

  const double gamma = 2.0;
  const double k = std::sqrt(gamma * gamma - 1.0);
  const double ac = critical_amplitude(gamma);
  CHECK(std::abs(closed_form_current(make(2, ac, pi, Helicity::up, k)).jz(0.0)) < 1e-15);
  CHECK(closed_form_current(make(2, ac + 0.01, pi, Helicity::up, k)).jz(0.0) < 0.0);
}

TEST_CASE("case 2: j_z < 0 exactly above the critical amplitude") {
  for (double gamma : {1.05, 1.5, 3.0, 10.0}) {
    const double k = std::sqrt(gamma * gamma - 1.0);
    auto jz = [&](double a) { return closed_form_current(make(2, a, pi, Helicity::up, k)).jz(0.0); };
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (jz(mid) < 0.0 ? hi : lo) = mid;
    }
    CHECK(std::abs(lo - critical_amplitude(gamma)) < 1e-10);
  }
}

TEST_CASE("case 3 with v = ac backflows at z = 0 for every a") {
  for (double a = 0.05; a < 1.0; a += 0.05) {
    const double k = a / std::sqrt(1.0 - a * a);  // v = c^2 hbar k / |E| = a c
    const CaseSpec spec = make(3, a, pi, Helicity::up, k);
    CHECK(closed_form_current(spec).jz(0.0) < 0.0);
    CHECK(current(build_case(spec).evaluate(0.0), spec.params)[2] < 0.0);
  }
}

TEST_CASE("cases 4 and 5: forward j_z, transverse current despite zero transverse momentum") {
  const auto zs = linspace(-5.0, 5.0, 101);
  for (int id : {4, 5})
    for (double a = 0.0; a <= 0.99; a += 0.03) {
      const CaseSpec spec = make(id, a, 0.8, Helicity::up, 1.2);
      const auto state = build_case(spec);
      double transverse = 0.0;
      for (double z : zs) {
        const Vec3 j = current(state.evaluate(z), spec.params);
        CHECK(j[2] > 0.0);
        transverse = std::max({transverse, std::abs(j[0]), std::abs(j[1])});
      }
      if (a > 0.0) CHECK(transverse > 0.0);
    }
}

TEST_CASE("cases 6 and 7: sign and zeros follow a + cos(kz +- phi)") {
  const double a = 0.6;
  const double k = 1.3;
  const double phi = 0.4;
  struct Variant {
    int id;
    EnergySign s;
    double overall;
    double phase_sign;
  };
  for (const Variant var : {Variant{6, EnergySign::positive, 1.0, 1.0}, Variant{6, EnergySign::negative, -1.0, 1.0},
                            Variant{7, EnergySign::negative, 1.0, -1.0}}) {
    const CaseSpec spec = make(var.id, a, phi, Helicity::up, k, var.s);
    const auto state = build_case(spec);
    auto jz = [&](double z) { return current(state.evaluate(z), spec.params)[2]; };
    auto shape = [&](double z) { return var.overall * (a + std::cos(k * z + var.phase_sign * phi)); };
    for (double z : linspace(-6.0, 6.0, 241))
      if (std::abs(shape(z)) > 1e-9) CHECK((jz(z) > 0.0) == (shape(z) > 0.0));

    // zero of j_z between a positive and a negative bracket, versus cos(th) = -a
    const double th_zero = std::acos(-a);  // first root of a + cos(th) on (0, pi)
    const double z_zero = (th_zero - var.phase_sign * phi) / k;
    double lo = z_zero - 0.3;
    double hi = z_zero + 0.3;
    const bool lo_positive = jz(lo) > 0.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      ((jz(mid) > 0.0) == lo_positive ? lo : hi) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - z_zero) < 1e-10);
  }
}

TEST_CASE("case 6 positive energy matches the nonrelativistic sign pattern at small k") {
  const double a = 0.7;
  const double k = 0.01;
  const auto state = build_case(make(6, a, 0.0, Helicity::up, k));
  for (double z : linspace(-700.0, 700.0, 501)) {
    const double berry = a + std::cos(k * z);
    if (std::abs(berry) < 1e-9) continue;
    const double v = nr_velocity(a, k, z, 0.0, {});
    CHECK((current(state.evaluate(z), {})[2] < 0.0) == (v < 0.0));
  }
}
