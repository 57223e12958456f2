#include "mixsum/theorems.hpp"

#include <algorithm>
#include <map>

#include "mixsum/primality.hpp"
#include "mixsum/sequences.hpp"

namespace mixsum {

namespace {

unsigned two_adic(unsigned long v) {
  unsigned k = 0;
  while (v % 2 == 0) v /= 2, ++k;
  return k;
}

BigInt power2_plus_one(unsigned long m, unsigned k) {
  return pow_ui(m, 1UL << k) + 1;
}

bool divides(const BigInt& d, const BigInt& v) { return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0; }

}  // namespace

bool Thm1Verdict::consistent() const {
  if (!witness_divides) return false;
  if (part == 1) return prime_power != PrimePowerStatus::prime_power && residue_ok;
  return proper_divisor && !value_is_prime;
}

BigInt d_value(unsigned long m, unsigned long n) {
  if (m < 2 || n < 1 || n > 40) throw Error("d_value needs m >= 2 and 1 <= n <= 40");
  BigInt rep = pow_ui(m, (1UL << n) - 1) - 1;
  mpz_divexact_ui(rep.get_mpz_t(), rep.get_mpz_t(), m - 1);
  return rep - pow_ui(m, n);
}

BigInt repunit_power2(unsigned long m, unsigned long n) {
  if (m < 2 || n > 40) throw Error("repunit_power2 needs m >= 2 and n <= 40");
  BigInt rep = pow_ui(m, 1UL << n) - 1;
  mpz_divexact_ui(rep.get_mpz_t(), rep.get_mpz_t(), m - 1);
  return rep;
}

Thm1Verdict check_thm1_part_i(unsigned long m, unsigned long n) {
  if (m % 4 != 2) throw Error("part (i) needs m = 2 (mod 4)");
  if (!is_prime_64(m + 1)) throw Error("part (i) needs m+1 prime");
  if (n < 3) throw Error("part (i) needs n >= 3");
  Thm1Verdict v;
  v.part = 1;
  v.m = m;
  v.n = n;
  v.value = d_value(m, n);
  v.k = two_adic(n + 1);
  v.divisor_witness = power2_plus_one(m, v.k);
  v.witness_divides = divides(v.divisor_witness, v.value * m);
  const BigInt m3 = pow_ui(m, 3);
  const BigInt target = BigInt(1) + m + BigInt(m) * m;
  v.residue_ok = BigInt(v.value % m3) == target % m3;
  if (fits_u128(v.value) && v.value >= 1) {
    v.prime_power = prime_power_form(to_u128(v.value)) ? PrimePowerStatus::prime_power
                                                        : PrimePowerStatus::not_prime_power;
  }
  return v;
}

Thm1Verdict check_thm1_part_ii(unsigned long m, unsigned long n, unsigned long a, unsigned long b,
                               bool allow_n2) {
  if (m < 2) throw Error("part (ii) needs m >= 2");
  if (n < 2 || (n == 2 && !allow_n2)) throw Error("part (ii) is checked for n >= 3 (n = 2 needs the override)");
  if (a <= b) throw Error("part (ii) needs a > b");
  const BigInt total = repunit_power2(m, n);
  const BigInt used = pow_ui(m, a) + pow_ui(m, b);
  if (used >= total) throw Error("part (ii) needs m^a + m^b < (m^{2^n}-1)/(m-1)");
  Thm1Verdict v;
  v.part = 2;
  v.m = m;
  v.n = n;
  v.a = a;
  v.b = b;
  v.value = total - used;
  v.k = two_adic(a - b);
  v.divisor_witness = power2_plus_one(m, v.k);
  v.witness_divides = divides(v.divisor_witness, v.value);
  v.proper_divisor = v.witness_divides && v.divisor_witness < v.value;
  v.value_is_prime = is_prime_any(v.value);
  v.outside_claimed_range = n < 3;
  return v;
}

std::vector<Thm1Verdict> check_thm1_part_ii_all(unsigned long m, unsigned long n, unsigned long max_exp,
                                                bool allow_n2) {
  std::vector<Thm1Verdict> out;
  const BigInt total = repunit_power2(m, n);
  for (unsigned long a = 1; a <= max_exp; ++a) {
    for (unsigned long b = 0; b < a; ++b) {
      if (pow_ui(m, a) + pow_ui(m, b) >= total) continue;
      out.push_back(check_thm1_part_ii(m, n, a, b, allow_n2));
    }
  }
  return out;
}

bool telescoping_identity_check(unsigned long m, unsigned long n) {
  if (m < 2 || n < 1 || n > 30) throw Error("telescoping_identity_check needs m >= 2 and 1 <= n <= 30");
  BigInt prod = m - 1;
  for (unsigned k = 0; k < n; ++k) prod *= power2_plus_one(m, k);
  return prod == pow_ui(m, 1UL << n) - 1;
}

std::vector<BigInt> recurrence_terms(unsigned long a, unsigned max_index) {
  std::vector<BigInt> u{0, 1};
  while (u.size() <= max_index) u.push_back(BigInt(a) * u[u.size() - 1] + u[u.size() - 2]);
  u.resize(max_index + 1);
  return u;
}

std::vector<CollisionRecord> distinct_sums_check(unsigned long a, unsigned max_index) {
  if (a < 2 || max_index < 2) throw Error("distinct_sums_check needs a >= 2 and max_index >= 2");
  const auto u = recurrence_terms(a, max_index);
  struct Entry {
    BigInt x;
    unsigned m, n;
  };
  std::vector<Entry> sums;
  sums.reserve(static_cast<std::size_t>(max_index + 1) * max_index);
  for (unsigned m = 0; m <= max_index; ++m) {
    for (unsigned n = 1; n <= max_index; ++n) sums.push_back({u[m] + BigInt(a) * u[n], m, n});
  }
  std::sort(sums.begin(), sums.end(), [](const Entry& l, const Entry& r) {
    const int c = cmp(l.x, r.x);
    return c != 0 ? c < 0 : std::pair{l.m, l.n} < std::pair{r.m, r.n};
  });
  std::vector<CollisionRecord> out;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i + 1;
    while (j < sums.size() && sums[j].x == sums[i].x) ++j;
    if (j - i > 1) {
      CollisionRecord rec{a, sums[i].x, {}};
      for (std::size_t t = i; t < j; ++t) rec.representations.emplace_back(sums[t].m, sums[t].n);
      out.push_back(std::move(rec));
    }
    i = j;
  }
  return out;
}

BigInt pell_pair_encode(unsigned m, unsigned n) {
  if (m < 1 || n < 1) throw Error("Pell pair code needs m, n >= 1");
  const SeqId pell{SeqKind::pell, 0};
  return nth_term(pell, m) + 2 * nth_term(pell, n);
}

std::optional<std::pair<unsigned, unsigned>> pell_pair_decode(const BigInt& x) {
  if (sgn(x) < 0) return std::nullopt;
  const TermTable table = terms_below({SeqKind::pell, 0}, x, 1);
  std::optional<std::pair<unsigned, unsigned>> found;
  for (const Term& tn : table.entries()) {
    const BigInt rest = x - 2 * tn.value;
    if (sgn(rest) <= 0) break;
    for (const Term& tm : table.entries()) {
      if (tm.value > rest) break;
      if (tm.value == rest) {
        if (found) throw Error("two Pell pairs share the code " + to_string(x));
        found = std::pair{tm.index, tn.index};
      }
    }
  }
  return found;
}

std::vector<Coincidence> fib_sum_coincidences(unsigned max_index, unsigned min_index) {
  const SeqId fib{SeqKind::fibonacci, 0};
  std::vector<BigInt> f;
  for (TermGenerator g(fib); g.index() <= max_index; g.advance()) f.push_back(g.current());
  std::map<BigInt, std::vector<std::pair<unsigned, unsigned>>> by_value;
  for (unsigned k = min_index; k <= max_index; ++k) {
    for (unsigned l = k; l <= max_index; ++l) by_value[f[k] + f[l]].emplace_back(k, l);
  }
  std::vector<Coincidence> out;
  for (auto& [value, pairs] : by_value) {
    if (pairs.size() > 1) out.push_back({value, std::move(pairs)});
  }
  return out;
}

}  // namespace mixsum
