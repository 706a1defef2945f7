#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "reference.hpp"
#include "spinent/closedform.hpp"
#include "spinent/errors.hpp"
#include "spinent/model.hpp"
#include "spinent/oracle.hpp"

using namespace spinent;

TEST_CASE("x_max_schedule matches 1/(2 S^n)") {
  CHECK(x_max_schedule(2, 1) == 0.5);
  CHECK(x_max_schedule(4, 2) == 0.125);
  CHECK(x_max_schedule(20, 3) == doctest::Approx(0.0005).epsilon(1e-15));
  CHECK(x_max_schedule(1, 1) == 1.0);  // S = 1/2
  CHECK(x_max_schedule(1, 3) == 4.0);

  CHECK_THROWS_AS(x_max_schedule(0, 1), DomainError);
  CHECK_THROWS_AS(x_max_schedule(2, 0), DomainError);
  CHECK_THROWS_AS(x_max_schedule(2, 4), DomainError);
}

TEST_CASE("x_max_schedule is strictly decreasing in two_s and n") {
  for (int n = 1; n <= 3; ++n) {
    for (int two_s = 1; two_s < 2000; ++two_s) {
      CHECK(x_max_schedule(two_s + 1, n) < x_max_schedule(two_s, n));
    }
  }
  // At S = 1/2 and S = 1 the n-dependence is not decreasing (S^n >= S only for S >= 1).
  for (int two_s = 3; two_s < 2000; two_s += 7) {
    CHECK(x_max_schedule(two_s, 2) < x_max_schedule(two_s, 1));
    CHECK(x_max_schedule(two_s, 3) < x_max_schedule(two_s, 2));
  }
}

TEST_CASE("SpinDims") {
  const SpinDims d(4);
  CHECK(d.m_a() == 5);
  CHECK(d.m_b() == 5);
  CHECK(d.total_dim() == 100);
  const SpinDims u(0, 3);
  CHECK(u.m_a() == 1);
  CHECK(u.m_b() == 4);
  CHECK_THROWS_AS(SpinDims(-1), DomainError);
  CHECK_THROWS_AS(SpinDims(2, -2), DomainError);
}

TEST_CASE("sample_coefficients respects support and layout") {
  RandomStream rng(42);
  const SpinDims dims(2);
  const auto set = sample_coefficients(dims, 0.5, 0.25, bell_weights(), rng);
  for (std::size_t d : {kLevel01, kLevel10}) {
    for (const auto& v : set.x[d]) CHECK(v == cplx{});
    for (const auto& v : set.y[d]) CHECK(v == cplx{});
  }
  for (std::size_t d : {kLevel00, kLevel11}) {
    REQUIRE(set.x[d].size() == 3);
    for (const auto& v : set.x[d]) {
      CHECK(v.imag() == 0.0);
      CHECK(v.real() > 0.0);
      CHECK(v.real() <= 0.5);
    }
    for (const auto& v : set.y[d]) {
      CHECK(v.real() > 0.0);
      CHECK(v.real() <= 0.25);
    }
  }
  CHECK(set.is_two_level());
  CHECK_NOTHROW(set.validate());
}

TEST_CASE("sample_coefficients is a pure function of the seed") {
  RandomStream a(7);
  RandomStream b(7);
  const auto s1 = sample_coefficients(SpinDims(5, 3), 0.1, 0.1, bell_weights(), a);
  const auto s2 = sample_coefficients(SpinDims(5, 3), 0.1, 0.1, bell_weights(), b);
  CHECK(s1.x == s2.x);
  CHECK(s1.y == s2.y);

  RandomStream c(8);
  const auto s3 = sample_coefficients(SpinDims(5, 3), 0.1, 0.1, bell_weights(), c);
  CHECK(s1.x != s3.x);
}

TEST_CASE("sample_coefficients draw order: x3, x4, y3, y4") {
  RandomStream rng(99);
  const auto set = sample_coefficients(SpinDims(1), 1.0, 1.0, bell_weights(), rng);
  RandomStream replay(99);
  std::vector<double> draws;
  for (int i = 0; i < 8; ++i) draws.push_back(1.0 - replay.uniform());
  CHECK(set.x[kLevel00][0].real() == draws[0]);
  CHECK(set.x[kLevel00][1].real() == draws[1]);
  CHECK(set.x[kLevel11][0].real() == draws[2]);
  CHECK(set.x[kLevel11][1].real() == draws[3]);
  CHECK(set.y[kLevel00][0].real() == draws[4]);
  CHECK(set.y[kLevel11][1].real() == draws[7]);
}

TEST_CASE("complex mode draws modulus in (0, x_max]") {
  RandomStream rng(3);
  const auto set = sample_coefficients(SpinDims(6), 0.2, 0.2, bell_weights(), rng, {true});
  bool any_imag = false;
  for (std::size_t d : {kLevel00, kLevel11}) {
    for (const auto& v : set.x[d]) {
      CHECK(std::abs(v) > 0.0);
      CHECK(std::abs(v) <= 0.2 * (1 + 1e-15));
      any_imag = any_imag || v.imag() != 0.0;
    }
  }
  CHECK(any_imag);
}

TEST_CASE("tiny perturbations leave the Bell concurrence intact") {
  RandomStream rng(11);
  const auto set = sample_coefficients(SpinDims(6), 1e-9, 1e-9, bell_weights(), rng);
  for (std::size_t d : {kLevel00, kLevel11})
    for (const auto& v : set.x[d]) CHECK(v.real() <= 1e-9);
  CHECK(concurrence_closed(set) >= 1.0 - 1e-12);
}

TEST_CASE("sample_coefficients rejects bad bounds and weights") {
  RandomStream rng(1);
  CHECK_THROWS_AS(sample_coefficients(SpinDims(2), 0.0, 0.1, bell_weights(), rng), DomainError);
  CHECK_THROWS_AS(sample_coefficients(SpinDims(2), 0.1, -1.0, bell_weights(), rng), DomainError);
  const DeviceWeights bad{cplx{}, cplx{}, cplx{1.0}, cplx{1.0}};
  CHECK_THROWS_AS(sample_coefficients(SpinDims(2), 0.1, 0.1, bad, rng), InvalidStateError);
}

TEST_CASE("normalization") {
  SUBCASE("unperturbed Bell, m = 2") {
    const auto s = CoefficientSet::unperturbed(SpinDims(1), bell_weights());
    CHECK(normalization(s) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("product device, m = 1") {
    const auto s = CoefficientSet::unperturbed(SpinDims(0), {cplx{}, cplx{}, cplx{1.0}, cplx{}});
    CHECK(normalization(s) == 1.0);
  }
  SUBCASE("worked example against direct <Psi|Psi>") {
    const auto s = testing::worked_example();
    const long double direct = reference::norm_squared(s);
    CHECK(static_cast<double>(direct) == doctest::Approx(5.78).epsilon(1e-14));
    CHECK(normalization_squared(s) == doctest::Approx(5.78).epsilon(1e-14));
    CHECK(normalization(s) == doctest::Approx(2.4041630560342617).epsilon(1e-14));
  }
  SUBCASE("zero weights") {
    const auto s = CoefficientSet::unperturbed(SpinDims(1), DeviceWeights{});
    CHECK_THROWS_AS(normalization(s), DegenerateError);
  }
}

TEST_CASE("normalize rescales device weights") {
  const auto c = normalized({cplx{}, cplx{}, cplx{3.0}, cplx{0.0, 4.0}});
  CHECK(std::abs(c[kLevel00]) == doctest::Approx(0.6));
  CHECK(std::abs(c[kLevel11]) == doctest::Approx(0.8));
  CHECK_THROWS_AS(normalized(DeviceWeights{}), DegenerateError);
}

TEST_CASE("assembled states have unit norm for random sets") {
  RandomStream rng(2024);
  for (int k = 0; k < 200; ++k) {
    const int ta = static_cast<int>(rng.uniform_int(0, 12));
    const int tb = static_cast<int>(rng.uniform_int(0, 12));
    const double xm = 0.5 * (1.0 - rng.uniform());
    CoefficientSet s = testing::random_set(rng, ta, tb, xm, k % 2 == 1);
    if (k % 3 == 0) {
      // general mode: populate rows d = 1, 2 as well
      s.c = normalized({cplx{0.3}, cplx{0.0, 0.2}, cplx{0.6}, cplx{-0.5}});
      for (std::size_t d : {kLevel01, kLevel10}) {
        for (auto& v : s.x[d]) v = rng.uniform_open_closed(xm);
        for (auto& v : s.y[d]) v = rng.uniform_open_closed(xm);
      }
    }
    const PureState psi = assemble_state(s);
    CHECK(std::abs(psi.amp.norm() - 1.0) <= 1e-12);
  }
}
