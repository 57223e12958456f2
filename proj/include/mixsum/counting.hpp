#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mixsum/forms.hpp"

namespace mixsum {

struct CountPolicy {
  unsigned workers = 1;
  unsigned extra_rounds = 0;
  /// Count even when n is outside the form's claimed domain.
  bool ignore_domain = true;
};

/// r = number of index tuples (p is determined by them); s = r / ln n.
struct CountResult {
  std::string form;
  BigInt n;
  std::uint64_t r = 0;
  double ln_n = 0.0;  // 0 when n < 2
  double s = 0.0;
  std::string policy;
};

CountResult representation_count(const Form& form, const BigInt& n, const CountPolicy& policy = {});
/// Single-threaded reference for representation_count.
CountResult representation_count_serial(const Form& form, const BigInt& n, unsigned extra_rounds = 0);
/// Every counted tuple, as witnesses in enumeration order (diagnostic dumps).
std::vector<Witness> representation_witnesses(const Form& form, const BigInt& n, unsigned extra_rounds = 0);

struct WindowRow {
  std::int64_t offset = 0;
  CountResult result;
};

struct WindowStats {
  std::vector<WindowRow> rows;
  std::size_t argmin = 0;  // row positions
  std::size_t argmax = 0;
};

WindowStats window_stats(const Form& form, const BigInt& base, std::span<const std::int64_t> offsets,
                         const CountPolicy& policy = {});
/// Offsets from, from+stride, ... < to.
std::vector<std::int64_t> offset_range(std::int64_t from, std::int64_t to, std::int64_t stride = 1);

/// Natural logarithm from the leading bits and the bit length. n >= 1.
double ln_big(const BigInt& n);

struct HardyLittlewoodConstant {
  double value = 0.0;
  /// The full infinite product lies in [value - truncation_error, value].
  double truncation_error = 0.0;
  std::uint64_t prime_bound = 0;
};

/// 2 * prod over odd primes p <= prime_bound of (1 - 1/(p-1)^2).
HardyLittlewoodConstant hardy_littlewood_constant(std::uint64_t prime_bound);

/// c n / ln^2 n * prod over odd p | n of (1 + 1/(p-2)). n even, n >= 4.
double hardy_littlewood_estimate(std::uint64_t n, std::uint64_t prime_bound);

/// Number of ordered prime pairs (p, q) with p + q = n, via a sieve.
std::uint64_t goldbach_ordered_count(std::uint64_t n);

}  // namespace mixsum
