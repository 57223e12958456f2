#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixsum/bigint.hpp"

namespace mixsum {

/// Raised when a request exceeds the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Exact primality over [lo, hi): one bit per odd number, 2 handled separately.
class SieveSegment {
 public:
  SieveSegment() = default;
  SieveSegment(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  bool contains(std::uint64_t n) const { return n >= lo_ && n < hi_; }

  /// Precondition: contains(n).
  bool is_prime(std::uint64_t n) const {
    if ((n & 1) == 0) return n == 2;
    const std::uint64_t bit = (n - first_odd_) >> 1;
    return (bits_[bit >> 6] >> (bit & 63)) & 1;
  }

  std::uint64_t count() const;
  std::vector<std::uint64_t> primes() const;

  // Used by the sieving kernels.
  std::span<std::uint64_t> words() { return bits_; }
  std::uint64_t first_odd() const { return first_odd_; }
  std::uint64_t odd_count() const { return odd_count_; }

 private:
  std::uint64_t lo_ = 0, hi_ = 0;
  std::uint64_t first_odd_ = 1, odd_count_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct SieveConfig {
  /// log2 of the number of integers sieved per chunk.
  unsigned segment_bits = 20;
  /// Upper bound on the bitmap size in bytes.
  std::size_t memory_budget = std::size_t{1} << 30;
  unsigned workers = 1;
};

/// Odd primes p <= limit in ascending order (simple sieve).
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

SieveSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg = {});
/// Same as sieve_range but reuses odd base primes covering sqrt(hi).
SieveSegment sieve_range(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base_primes,
                         const SieveConfig& cfg = {});
/// Serial byte-per-number sieve kept as a reference for the segmented kernel.
std::vector<bool> sieve_range_reference(std::uint64_t lo, std::uint64_t hi);

/// Deterministic for every n < 2^64 (strong tests to the 7 bases of Sinclair).
bool is_prime_64(std::uint64_t n);

/// Strong base-2 test + strong Lucas test (Selfridge parameters), plus
/// `extra_rounds` strong tests to pseudo-random bases from a fixed seed.
bool is_probable_prime(const BigInt& n, unsigned extra_rounds = 0);

/// Dispatches to is_prime_64 when n fits, otherwise is_probable_prime.
bool is_prime_any(const BigInt& n, unsigned extra_rounds = 0);

bool is_prime_128(u128 n);

/// Prime factors of n >= 2 with multiplicity, ascending.
std::vector<u128> factor_small(u128 n);

struct PrimePower {
  u128 p = 0;
  unsigned a = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// (p, a) with n = p^a, or empty. n = 1 yields empty.
std::optional<PrimePower> prime_power_form(u128 n);

/// Short human-readable description of the primality policy.
std::string primality_policy(unsigned extra_rounds);

}  // namespace mixsum
