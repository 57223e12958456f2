#include <array>

#include "mixsum/primality.hpp"

namespace mixsum {

namespace {

using u64 = std::uint64_t;

// Montgomery arithmetic modulo an odd 64-bit n, R = 2^64.
class Mont64 {
 public:
  explicit Mont64(u64 n) : n_(n) {
    inv_ = n;
    for (int i = 0; i < 5; ++i) inv_ *= 2 - n * inv_;
    const u64 r = (0 - n) % n;
    r2_ = static_cast<u64>(static_cast<u128>(r) * r % n);
    one_ = to(1);
  }
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * inv_;
    const u64 hi = static_cast<u64>(t >> 64);
    const u64 mn = static_cast<u64>((static_cast<u128>(m) * n_) >> 64);
    return hi >= mn ? hi - mn : hi - mn + n_;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a % n_, r2_); }
  u64 one() const { return one_; }
  u64 modulus() const { return n_; }
  u64 pow(u64 base, u64 e) const {
    u64 acc = one_;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

 private:
  u64 n_, inv_, r2_, one_;
};

bool strong_test_64(const Mont64& m, u64 a, u64 d, unsigned s) {
  const u64 n = m.modulus();
  a %= n;
  if (a == 0) return true;
  const u64 minus_one = n - m.one();  // Montgomery form of n-1
  u64 x = m.pow(m.to(a), d);
  if (x == m.one() || x == minus_one) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = m.mul(x, x);
    if (x == minus_one) return true;
    if (x == m.one()) return false;
  }
  return false;
}

constexpr std::array<u64, 15> kTinyPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = small_primes(1000);
  return primes;
}

bool strong_test_big(const BigInt& n, const BigInt& base) {
  BigInt d = n - 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const BigInt n1 = n - 1;
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

void halve_mod(BigInt& x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

// Strong Lucas probable-prime test with Selfridge's method A parameters.
// Precondition: n odd, n > 1000^2, no prime factor below 1000.
bool strong_lucas_test(const BigInt& n) {
  long D = 5;
  for (int iter = 0;; ++iter) {
    const BigInt d_big = D;
    const int j = mpz_jacobi(d_big.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) return false;  // |D| < n shares a factor with n
    if (iter == 16 && mpz_perfect_square_p(n.get_mpz_t())) return false;
    D = D > 0 ? -(D + 2) : -D + 2;
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  BigInt k = n + 1;
  const auto s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  BigInt q_mod = Q;
  mpz_mod(q_mod.get_mpz_t(), q_mod.get_mpz_t(), n.get_mpz_t());
  BigInt U = 1, V = P, Qk = q_mod, tmp;
  const auto bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (long b = static_cast<long>(bits) - 2; b >= 0; --b) {
    U = U * V % n;
    V = V * V - 2 * Qk;
    mpz_mod(V.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
    Qk = Qk * Qk % n;
    if (mpz_tstbit(k.get_mpz_t(), b)) {
      tmp = P * U + V;
      V = D * U + P * V;
      U = tmp;
      mpz_mod(U.get_mpz_t(), U.get_mpz_t(), n.get_mpz_t());
      mpz_mod(V.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
      halve_mod(U, n);
      halve_mod(V, n);
      Qk = Qk * q_mod % n;
    }
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = V * V - 2 * Qk;
    mpz_mod(V.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

}  // namespace

bool is_prime_64(std::uint64_t n) {
  if (n < 2) return false;
  for (const u64 p : kTinyPrimes) {
    if (n % p == 0) return n == p;
  }
  if (n < 53 * 53) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  const Mont64 m(n);
  // Jim Sinclair's base set: deterministic for all n < 2^64.
  for (const u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!strong_test_64(m, a, d, s)) return false;
  }
  return true;
}

bool is_probable_prime(const BigInt& n, unsigned extra_rounds) {
  if (n < 2) return false;
  if (mpz_even_p(n.get_mpz_t())) return n == 2;
  for (const auto p : trial_primes()) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return n == p;
  }
  if (n < 1000 * 1000) return true;
  if (!strong_test_big(n, 2)) return false;
  if (!strong_lucas_test(n)) return false;
  if (extra_rounds > 0) {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0x5eed1234UL);
    const BigInt span = n - 4;
    for (unsigned i = 0; i < extra_rounds; ++i) {
      const BigInt base = rng.get_z_range(span) + 2;
      if (!strong_test_big(n, base)) return false;
    }
  }
  return true;
}

bool is_prime_any(const BigInt& n, unsigned extra_rounds) {
  if (auto v = try_u64(n)) return is_prime_64(*v);
  return is_probable_prime(n, extra_rounds);
}

bool is_prime_128(u128 n) {
  if ((n >> 64) == 0) return is_prime_64(static_cast<std::uint64_t>(n));
  return is_probable_prime(from_u128(n));
}

std::string primality_policy(unsigned extra_rounds) {
  return "deterministic-mr7 below 2^64; bpsw(strong-2,strong-lucas-selfridge)+" + std::to_string(extra_rounds) +
         " random-base rounds above";
}

}  // namespace mixsum
