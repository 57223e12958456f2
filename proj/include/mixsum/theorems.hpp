#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mixsum/bigint.hpp"

namespace mixsum {

enum class PrimePowerStatus { not_prime_power, prime_power, unchecked };

/// Outcome of checking one instance of either part of the Mersenne-type non-representation theorem.
struct Thm1Verdict {
  int part = 1;  // 1 or 2
  unsigned long m = 0, n = 0;
  unsigned long a = 0, b = 0;  // part 2 only
  BigInt value;                // d_n (part 1) or D (part 2)
  unsigned k = 0;              // 2^k exactly divides n+1 (part 1) or a-b (part 2)
  BigInt divisor_witness;      // m^{2^k} + 1
  bool witness_divides = false;  // divides m*d_n (part 1) or D (part 2)
  // Part 1.
  PrimePowerStatus prime_power = PrimePowerStatus::unchecked;
  bool residue_ok = false;  // d_n = 1 + m + m^2 (mod m^3)
  // Part 2.
  bool proper_divisor = false;     // witness divides D and witness < D
  bool value_is_prime = false;     // only interesting outside the theorem's range
  bool outside_claimed_range = false;

  /// The checked instance agrees with the theorem.
  bool consistent() const;
};

/// (m^{2^n - 1} - 1)/(m - 1) - m^n.
BigInt d_value(unsigned long m, unsigned long n);
/// (m^{2^n} - 1)/(m - 1).
BigInt repunit_power2(unsigned long m, unsigned long n);

/// Requires m = 2 (mod 4), m+1 prime, n >= 3. Prime-power status is decided for d_n < 2^128.
Thm1Verdict check_thm1_part_i(unsigned long m, unsigned long n);

/// Requires a > b >= 0, m^a + m^b < (m^{2^n}-1)/(m-1), n >= 3 (n = 2 only with allow_n2).
Thm1Verdict check_thm1_part_ii(unsigned long m, unsigned long n, unsigned long a, unsigned long b,
                               bool allow_n2 = false);

/// Every valid (a, b) with b < a <= max_exp for the given m, n.
std::vector<Thm1Verdict> check_thm1_part_ii_all(unsigned long m, unsigned long n, unsigned long max_exp,
                                                bool allow_n2 = false);

/// (m-1) * prod_{k<n} (m^{2^k}+1) == m^{2^n} - 1.
bool telescoping_identity_check(unsigned long m, unsigned long n);

/// u_0 = 0, u_1 = 1, u_{i+1} = a u_i + u_{i-1}.
std::vector<BigInt> recurrence_terms(unsigned long a, unsigned max_index);

struct CollisionRecord {
  unsigned long a = 0;
  BigInt x;
  std::vector<std::pair<unsigned, unsigned>> representations;  // (m, n) with u_m + a u_n = x
};

/// Values of u_m + a u_n (0 <= m <= max_index, 1 <= n <= max_index) hit by more than one pair.
std::vector<CollisionRecord> distinct_sums_check(unsigned long a, unsigned max_index);

/// P_m + 2 P_n for m, n >= 1.
BigInt pell_pair_encode(unsigned m, unsigned n);
/// The unique (m, n), m, n >= 1, with P_m + 2 P_n = x. Throws if two candidates exist.
std::optional<std::pair<unsigned, unsigned>> pell_pair_decode(const BigInt& x);

struct Coincidence {
  BigInt value;
  std::vector<std::pair<unsigned, unsigned>> pairs;  // index multisets {k <= l}
};

/// Values F_k + F_l (min_index <= k <= l <= max_index) realised by at least two index multisets.
std::vector<Coincidence> fib_sum_coincidences(unsigned max_index, unsigned min_index = 0);

}  // namespace mixsum
