// Brute-force reference implementations used by the tests. Nothing here calls the
// library's enumeration, sieve or primality code; only the Form data type is shared.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mixsum/forms.hpp"

namespace oracle {

using mixsum::BigInt;

class PlainSieve {
 public:
  explicit PlainSieve(std::uint64_t limit) : composite_(limit + 1, false) {
    composite_[0] = true;
    if (limit >= 1) composite_[1] = true;
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
      if (composite_[p]) continue;
      for (std::uint64_t q = p * p; q <= limit; q += p) composite_[q] = true;
    }
  }
  std::uint64_t limit() const { return composite_.size() - 1; }
  bool is_prime(std::uint64_t n) const {
    if (n > limit()) throw std::out_of_range("oracle sieve too small");
    return !composite_[n];
  }
  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit(); ++n)
      if (!composite_[n]) out.push_back(n);
    return out;
  }

 private:
  std::vector<bool> composite_;
};

inline bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct IndexedValue {
  unsigned index;
  std::uint64_t value;
};

// Terms with value <= bound, written out from the textbook definitions.
inline std::vector<IndexedValue> sequence_upto(mixsum::SeqId id, std::uint64_t bound) {
  using mixsum::SeqKind;
  std::vector<IndexedValue> out;
  auto keep = [&](unsigned i, std::uint64_t v) {
    if (v <= bound) out.push_back({i, v});
  };
  switch (id.kind) {
    case SeqKind::fibonacci:
    case SeqKind::lucas:
    case SeqKind::pell:
    case SeqKind::companion_pell:
    case SeqKind::half_even_fib: {
      unsigned __int128 x, y, mult, add = 1;
      if (id.kind == SeqKind::fibonacci) x = 0, y = 1, mult = 1;
      else if (id.kind == SeqKind::lucas) x = 2, y = 1, mult = 1;
      else if (id.kind == SeqKind::pell) x = 0, y = 1, mult = 2;
      else if (id.kind == SeqKind::companion_pell) x = 2, y = 2, mult = 2;
      else x = 0, y = 1, mult = 4;
      for (unsigned i = 0; i < 200; ++i) {
        if (i >= 3 && x > bound) break;
        if (x <= bound) keep(i, static_cast<std::uint64_t>(x));
        const unsigned __int128 z = mult * y + add * x;
        x = y;
        y = z;
      }
      break;
    }
    case SeqKind::catalan: {
      // Catalan numbers through the convolution C_{n+1} = sum C_i C_{n-i}.
      std::vector<std::uint64_t> c{1};
      for (unsigned i = 0; i < 36; ++i) {
        if (i >= 2 && c[i] > bound) break;
        keep(i, c[i]);
        std::uint64_t next = 0;
        for (unsigned j = 0; j <= i; ++j) next += c[j] * c[i - j];
        c.push_back(next);
      }
      break;
    }
    case SeqKind::power: {
      std::uint64_t v = 1;
      for (unsigned i = 0; i < 64 && v <= bound; ++i) {
        keep(i, v);
        if (v > bound / id.base) break;
        v *= id.base;
      }
      break;
    }
    case SeqKind::triangular:
      for (std::uint64_t x = 0; x * (x + 1) / 2 <= bound; ++x) keep(unsigned(x), x * (x + 1) / 2);
      break;
  }
  return out;
}

inline std::uint64_t ipow(std::uint64_t v, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= v;
  return r;
}

inline bool prime_ok(const mixsum::PrimeConstraint& c, std::uint64_t p, const PlainSieve& sieve) {
  using mixsum::PrimeKind;
  switch (c.kind) {
    case PrimeKind::zero_or_prime: return p == 0 || sieve.is_prime(p);
    case PrimeKind::prime: return sieve.is_prime(p);
    case PrimeKind::odd_prime: return p != 2 && sieve.is_prime(p);
    case PrimeKind::prime_in_class: return sieve.is_prime(p) && p % c.modulus == c.residue;
  }
  return false;
}

// Calls visit(p, values) for every admissible index tuple, walking the last term outermost.
template <class Visit>
void for_each_representation(const mixsum::Form& form, std::uint64_t n, const PlainSieve& sieve, Visit&& visit) {
  const std::size_t k = form.terms.size();
  std::vector<std::vector<std::uint64_t>> contrib(k);
  std::vector<std::vector<bool>> odd(k);
  for (std::size_t t = 0; t < k; ++t) {
    const auto& spec = form.terms[t];
    for (const auto& iv : sequence_upto(spec.seq, n)) {
      if (iv.index < spec.min_index) continue;
      if (spec.value_parity && (iv.value % 2 == 1) != (*spec.value_parity == mixsum::Parity::odd)) continue;
      if (spec.exponent > 1 && iv.value > 0 && ipow(iv.value, spec.exponent - 1) > n / iv.value) continue;
      const std::uint64_t c = spec.coefficient * ipow(iv.value, spec.exponent);
      if (c > n) continue;
      contrib[t].push_back(c);
      odd[t].push_back(iv.value % 2 == 1);
    }
  }
  std::vector<std::size_t> pos(k, 0);
  for (std::size_t t = 0; t < k; ++t)
    if (contrib[t].empty()) return;
  while (true) {
    std::uint64_t sum = 0;
    for (std::size_t t = 0; t < k; ++t) sum += contrib[t][pos[t]];
    bool disj = form.odd_disjunction.empty();
    for (unsigned d : form.odd_disjunction) disj = disj || odd[d - 1][pos[d - 1]];
    if (sum <= n && disj && prime_ok(form.prime, n - sum, sieve)) visit(n - sum);
    // odometer with the first term fastest
    std::size_t t = 0;
    while (t < k && ++pos[t] == contrib[t].size()) pos[t++] = 0;
    if (t == k) break;
  }
}

inline std::uint64_t count(const mixsum::Form& form, std::uint64_t n, const PlainSieve& sieve) {
  std::uint64_t r = 0;
  for_each_representation(form, n, sieve, [&](std::uint64_t) { ++r; });
  return r;
}

inline bool representable(const mixsum::Form& form, std::uint64_t n, const PlainSieve& sieve) {
  return count(form, n, sieve) > 0;
}

inline bool applicable(const mixsum::Form& form, std::uint64_t n) {
  if (form.domain.greater_than && BigInt(n) <= *form.domain.greater_than) return false;
  return !(form.domain.odd_only && n % 2 == 0);
}

}  // namespace oracle
