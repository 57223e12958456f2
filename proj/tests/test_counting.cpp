#include <doctest.h>

#include <cmath>
#include <set>

#include "mixsum/counting.hpp"
#include "oracle.hpp"

using namespace mixsum;

namespace {
const oracle::PlainSieve& plain() {
  static const oracle::PlainSieve s(1000000);
  return s;
}
}  // namespace

TEST_CASE("small counts") {
  // With P_0 = 0 allowed: (5,3,0), (7,1,1), (3,3,1), (5,1,2).
  const auto zero = representation_count(builtin_form("pP2P_count0"), 10);
  CHECK(zero.r == 4);
  const auto pos = representation_count(builtin_form("pP2P_count"), 10);
  CHECK(pos.r == 3);
  CHECK(pos.ln_n == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK(pos.s * pos.ln_n == doctest::Approx(3.0).epsilon(1e-12));

  std::set<std::tuple<long, unsigned, unsigned>> got;
  for (const auto& w : representation_witnesses(builtin_form("pP2P_count0"), 10)) {
    got.emplace(w.p.get_si(), w.term_indices[0], w.term_indices[1]);
  }
  CHECK(got == std::set<std::tuple<long, unsigned, unsigned>>{{5, 3, 0}, {7, 1, 1}, {3, 3, 1}, {5, 1, 2}});

  const auto tiny = representation_count(builtin_form("pP2P_count"), 1);
  CHECK(tiny.r == 0);
  CHECK(tiny.ln_n == 0.0);
  CHECK(tiny.s == 0.0);
}

TEST_CASE("index tuples are counted, not values") {
  // Q_0 = Q_1 = 2, so 3 + Q_0 and 3 + Q_1 are two representations of 5.
  const Form f = parse_form("prime + Q[i>=0]");
  CHECK(representation_count(f, 5).r == 2);
  CHECK(representation_count(parse_form("prime + F[i>=1] + F[j>=1]"), 4).r == 4);
}

TEST_CASE("counting forms match the brute-force oracle") {
  for (const auto& name : counting_form_names()) {
    const Form f = builtin_form(name);
    for (std::uint64_t n = 0; n <= 3000; ++n) {
      const auto expect = oracle::count(f, n, plain());
      const auto got = representation_count(f, n);
      INFO(name, " n=", n);
      REQUIRE(got.r == expect);
    }
  }
}

TEST_CASE("general forms match the brute-force oracle") {
  for (const char* name : {"pT1", "pFF", "pFF4", "pLL2", "pFLe", "p2FC", "pPQ", "p222", "pF5mod6", "pFU"}) {
    const Form f = builtin_form(name);
    for (std::uint64_t n = 0; n <= 20000; n += 13) {
      INFO(name, " n=", n);
      REQUIRE(representation_count(f, n).r == oracle::count(f, n, plain()));
    }
  }
}

TEST_CASE("parallel and serial counts agree") {
  const BigInt base = pow_ui(10, 30);
  for (const auto& name : counting_form_names()) {
    const Form f = builtin_form(name);
    for (int off = 0; off < 20; ++off) {
      const BigInt n = base + off;
      const auto serial = representation_count_serial(f, n);
      for (unsigned w : {1u, 2u, 5u}) {
        CountPolicy p;
        p.workers = w;
        CHECK(representation_count(f, n, p).r == serial.r);
      }
      CHECK(representation_witnesses(f, n).size() == serial.r);
    }
  }
}

TEST_CASE("strict domain") {
  CountPolicy p;
  p.ignore_domain = false;
  CHECK_THROWS_AS(representation_count(builtin_form("pFF"), 4, p), Error);
  CHECK_NOTHROW(representation_count(builtin_form("pFF"), 4));
}

TEST_CASE("window_stats") {
  const Form f = builtin_form("pP2P_count0");
  const auto offsets = offset_range(0, 10);
  REQUIRE(offsets.size() == 10);
  const auto ws = window_stats(f, 100, offsets);
  REQUIRE(ws.rows.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(ws.rows[i].offset == std::int64_t(i));
    CHECK(ws.rows[i].result.r == oracle::count(f, 100 + i, plain()));
    CHECK(ws.rows[ws.argmin].result.s <= ws.rows[i].result.s);
    CHECK(ws.rows[ws.argmax].result.s >= ws.rows[i].result.s);
  }
  CHECK(offset_range(5, 20, 5) == std::vector<std::int64_t>{5, 10, 15});
  CHECK_THROWS_AS(offset_range(0, 10, 0), Error);
}

TEST_CASE("ln_big") {
  CHECK(ln_big(pow_ui(10, 50)) == doctest::Approx(115.12925464970229).epsilon(1e-14));
  CHECK(ln_big(2) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(ln_big(pow_ui(10, 200)) == doctest::Approx(460.51701859880914).epsilon(1e-14));
  CHECK(ln_big(pow_ui(2, 100000)) == doctest::Approx(100000 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("Hardy-Littlewood constant") {
  CHECK(hardy_littlewood_constant(3).value == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(hardy_littlewood_constant(2), Error);
  const auto c6 = hardy_littlewood_constant(1000000);
  CHECK(std::abs(c6.value - 1.3203) < 1e-4);
  const auto c8 = hardy_littlewood_constant(100000000);
  CHECK(std::abs(c8.value - 1.32032) < 1e-5);
  CHECK(c8.value < c6.value);
  CHECK(c6.value - c8.value <= c6.truncation_error);
}

TEST_CASE("Hardy-Littlewood estimate") {
  const double c = hardy_littlewood_constant(1000).value;
  const double l4 = std::log(4.0);
  CHECK(hardy_littlewood_estimate(4, 1000) == doctest::Approx(c * 4 / (l4 * l4)));
  const double n = 300000, l = std::log(n);
  // 300000 = 2^5 3 5^5: factors 2 for p = 3 and 4/3 for p = 5.
  CHECK(hardy_littlewood_estimate(300000, 1000) == doctest::Approx(c * n / (l * l) * 2 * 4 / 3));
  CHECK_THROWS_AS(hardy_littlewood_estimate(7, 1000), Error);
  std::uint64_t brute = 0;
  for (std::uint64_t p = 2; p <= 998; ++p) brute += plain().is_prime(p) && plain().is_prime(1000 - p);
  CHECK(goldbach_ordered_count(1000) == brute);
}
