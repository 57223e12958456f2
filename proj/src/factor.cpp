#include <algorithm>
#include <numeric>

#include "mixsum/primality.hpp"

namespace mixsum {

namespace {

using u64 = std::uint64_t;

u64 mulmod64(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

// Brent's variant of Pollard rho with batched gcds. n odd composite.
u64 rho64(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return static_cast<u64>((static_cast<u128>(mulmod64(x, x, n)) + c) % n); };
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    const u64 m = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

BigInt rho_big(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const BigInt& x) { return BigInt((x * x + c) % n); };
    BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    const unsigned long m = 128;
    for (unsigned long r = 1; g == 1; r <<= 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          diff = abs(x - y);
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

// Exact k-th root of n if n is a perfect k-th power with k >= 2, smallest root first.
std::optional<std::pair<u128, unsigned>> perfect_power(u128 n) {
  const BigInt big = from_u128(n);
  const auto bits = mpz_sizeinbase(big.get_mpz_t(), 2);
  BigInt root;
  for (unsigned k = static_cast<unsigned>(bits); k >= 2; --k) {
    if (mpz_root(root.get_mpz_t(), big.get_mpz_t(), k) != 0 && root > 1) return std::pair{to_u128(root), k};
  }
  return std::nullopt;
}

void split(u128 n, std::vector<u128>& out) {
  if (n == 1) return;
  if (is_prime_128(n)) {
    out.push_back(n);
    return;
  }
  if (auto pw = perfect_power(n)) {
    std::vector<u128> inner;
    split(pw->first, inner);
    for (unsigned i = 0; i < pw->second; ++i) out.insert(out.end(), inner.begin(), inner.end());
    return;
  }
  u128 d;
  if ((n >> 64) == 0) {
    d = rho64(static_cast<u64>(n));
  } else {
    d = to_u128(rho_big(from_u128(n)));
  }
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<u128> factor_small(u128 n) {
  if (n < 2) throw Error("factor_small requires n >= 2");
  std::vector<u128> out;
  while ((n & 1) == 0) {
    out.push_back(2);
    n >>= 1;
  }
  static const std::vector<std::uint32_t> trial = small_primes(1 << 12);
  for (const auto p : trial) {
    if (static_cast<u128>(p) * p > n) break;
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  split(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PrimePower> prime_power_form(u128 n) {
  if (n < 2) return std::nullopt;
  if (is_prime_128(n)) return PrimePower{n, 1};
  const BigInt big = from_u128(n);
  const auto bits = mpz_sizeinbase(big.get_mpz_t(), 2);
  BigInt root;
  for (unsigned k = 2; k <= bits; ++k) {
    if (mpz_root(root.get_mpz_t(), big.get_mpz_t(), k) != 0) {
      if (is_prime_any(root)) return PrimePower{to_u128(root), k};
    }
  }
  return std::nullopt;
}

}  // namespace mixsum
