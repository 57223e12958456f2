#include <doctest.h>

#include <map>

#include "mixsum/sequences.hpp"
#include "mixsum/theorems.hpp"

using namespace mixsum;

TEST_CASE("d_value") {
  CHECK(d_value(2, 3) == 119);
  CHECK(d_value(2, 4) == 32751);
  CHECK(d_value(6, 3) == 55771);
  CHECK(repunit_power2(3, 3) == (pow_ui(3, 8) - 1) / 2);
}

TEST_CASE("Theorem 1 part i") {
  const auto v = check_thm1_part_i(2, 3);
  CHECK(v.value == 119);
  CHECK(v.k == 2);
  CHECK(v.divisor_witness == 17);
  CHECK(v.witness_divides);
  CHECK(v.prime_power == PrimePowerStatus::not_prime_power);
  CHECK(v.consistent());

  const auto v4 = check_thm1_part_i(2, 4);
  CHECK(v4.value == 32751);
  CHECK(v4.prime_power == PrimePowerStatus::not_prime_power);

  const auto v6 = check_thm1_part_i(6, 3);
  CHECK(v6.k == 2);
  CHECK(v6.divisor_witness == 1297);
  CHECK(v6.witness_divides);
  CHECK(6 * v6.value == 1297 * 258);

  // d_n for m = 2 fits 128 bits up to n = 7; beyond that only divisibility is checked.
  CHECK(check_thm1_part_i(2, 7).prime_power == PrimePowerStatus::not_prime_power);
  const auto big = check_thm1_part_i(2, 8);
  CHECK(big.prime_power == PrimePowerStatus::unchecked);
  CHECK(big.witness_divides);
  CHECK(big.consistent());
  CHECK_THROWS_AS(check_thm1_part_i(1, 3), Error);
  CHECK_THROWS_AS(check_thm1_part_i(2, 2), Error);
}

TEST_CASE("Theorem 1 part ii") {
  auto v = check_thm1_part_ii(2, 3, 5, 2);
  CHECK(v.value == 219);
  CHECK(v.k == 0);
  CHECK(v.divisor_witness == 3);
  CHECK(v.proper_divisor);
  v = check_thm1_part_ii(2, 3, 4, 2);
  CHECK(v.value == 235);
  CHECK(v.k == 1);
  CHECK(v.divisor_witness == 5);
  CHECK(v.proper_divisor);
  v = check_thm1_part_ii(3, 3, 6, 1);
  CHECK(v.value == (pow_ui(3, 8) - 1) / 2 - 729 - 3);
  CHECK(v.divisor_witness == 4);
  CHECK(v.proper_divisor);
  for (unsigned long m : {2ul, 3ul, 5ul})
    for (unsigned long n : {3ul, 4ul, 5ul})
      for (const auto& r : check_thm1_part_ii_all(m, n, 10, false)) CHECK(r.consistent());
}

TEST_CASE("Theorem 1 part ii fails at n = 2") {
  CHECK_THROWS_AS(check_thm1_part_ii(2, 2, 3, 1), Error);
  const auto v = check_thm1_part_ii(2, 2, 3, 1, true);
  CHECK(v.value == 5);  // 15 - 8 - 2
  CHECK(v.outside_claimed_range);
  CHECK(v.value_is_prime);
  CHECK_FALSE(v.proper_divisor);
  const auto all = check_thm1_part_ii_all(2, 2, 3, true);
  CHECK(std::any_of(all.begin(), all.end(), [](const Thm1Verdict& r) { return r.value_is_prime; }));
}

TEST_CASE("telescoping identity") {
  CHECK(telescoping_identity_check(2, 2));
  CHECK(telescoping_identity_check(3, 3));
  CHECK(telescoping_identity_check(10, 4));
  for (unsigned long m = 2; m <= 10; ++m)
    for (unsigned long n = 2; n <= 6; ++n) CHECK(telescoping_identity_check(m, n));
}

TEST_CASE("distinct sums") {
  const auto two = distinct_sums_check(2, 30);
  REQUIRE(two.size() == 1);
  CHECK(two[0].x == 4);
  CHECK(two[0].representations == std::vector<std::pair<unsigned, unsigned>>{{0, 2}, {2, 1}});
  CHECK(distinct_sums_check(3, 30).empty());
  CHECK(distinct_sums_check(10, 20).empty());
  CHECK(recurrence_terms(2, 5) == std::vector<BigInt>{0, 1, 2, 5, 12, 29});
}

TEST_CASE("Pell pair codec") {
  CHECK(*pell_pair_decode(3) == std::pair<unsigned, unsigned>{1, 1});
  CHECK(*pell_pair_decode(7) == std::pair<unsigned, unsigned>{3, 1});
  CHECK(*pell_pair_decode(6) == std::pair<unsigned, unsigned>{2, 2});  // P_2 + 2 P_2
  CHECK_FALSE(pell_pair_decode(8));
  CHECK_FALSE(pell_pair_decode(0));
  for (unsigned m = 1; m <= 25; ++m) {
    for (unsigned n = 1; n <= 25; ++n) {
      const BigInt x = pell_pair_encode(m, n);
      CHECK(x == nth_term("P", m) + 2 * nth_term("P", n));
      const auto back = pell_pair_decode(x);
      REQUIRE(back);
      CHECK(back->first == m);
      CHECK(back->second == n);
    }
  }
}

TEST_CASE("Fibonacci sum coincidences") {
  const auto small = fib_sum_coincidences(3);
  bool found = false;
  for (const auto& c : small) {
    if (c.value == 2) {
      found = true;
      CHECK(c.pairs == std::vector<std::pair<unsigned, unsigned>>{{0, 3}, {1, 1}, {1, 2}, {2, 2}});
    }
  }
  CHECK(found);

  std::map<std::string, std::vector<std::pair<unsigned, unsigned>>> brute;
  for (unsigned k = 1; k <= 30; ++k)
    for (unsigned l = k; l <= 30; ++l) brute[to_string(nth_term("F", k) + nth_term("F", l))].emplace_back(k, l);
  std::erase_if(brute, [](const auto& kv) { return kv.second.size() < 2; });
  const auto got = fib_sum_coincidences(30, 1);
  REQUIRE(got.size() == brute.size());
  for (const auto& c : got) CHECK(brute.at(to_string(c.value)) == c.pairs);
}
