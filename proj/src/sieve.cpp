#include <algorithm>
#include <bit>
#include <cmath>

#include <omp.h>

#include "mixsum/primality.hpp"

namespace mixsum {

namespace {

std::uint64_t isqrt64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Clears composite bits for odd numbers whose bit index lies in [bit_begin, bit_end).
void sieve_chunk(SieveSegment& seg, std::uint64_t bit_begin, std::uint64_t bit_end,
                 std::span<const std::uint32_t> base_primes) {
  auto words = seg.words();
  const std::uint64_t chunk_lo = seg.first_odd() + 2 * bit_begin;
  const std::uint64_t chunk_hi = seg.first_odd() + 2 * bit_end;  // exclusive, odd
  for (const std::uint32_t p32 : base_primes) {
    const std::uint64_t p = p32;
    const std::uint64_t sq = p * p;
    if (sq >= chunk_hi) break;
    std::uint64_t start = std::max(sq, (chunk_lo + p - 1) / p * p);
    if ((start & 1) == 0) start += p;
    for (std::uint64_t bit = (start - seg.first_odd()) >> 1; bit < bit_end; bit += p) {
      words[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
    }
  }
  if (chunk_lo <= 1 && 1 < chunk_hi) {
    const std::uint64_t bit = (1 - seg.first_odd()) >> 1;
    words[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
  }
}

}  // namespace

SieveSegment::SieveSegment(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw Error("sieve range has lo > hi");
  first_odd_ = lo | 1;
  odd_count_ = hi > first_odd_ ? (hi - first_odd_ + 1) / 2 : 0;
  bits_.assign((odd_count_ + 63) / 64, ~std::uint64_t{0});
  if (odd_count_ % 64 != 0) bits_.back() = (std::uint64_t{1} << (odd_count_ % 64)) - 1;
}

std::uint64_t SieveSegment::count() const {
  std::uint64_t c = (lo_ <= 2 && 2 < hi_) ? 1 : 0;
  for (const auto w : bits_) c += std::popcount(w);
  return c;
}

std::vector<std::uint64_t> SieveSegment::primes() const {
  std::vector<std::uint64_t> out;
  if (lo_ <= 2 && 2 < hi_) out.push_back(2);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    for (std::uint64_t word = bits_[w]; word != 0; word &= word - 1) {
      out.push_back(first_odd_ + 2 * (64 * w + std::countr_zero(word)));
    }
  }
  return out;
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit / 2 + 1, false);  // index i <-> 2i+1
  for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
  }
  return out;
}

SieveSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
  if (hi > (std::uint64_t{1} << 63)) throw Error("sieve range exceeds 2^63");
  const auto base = small_primes(static_cast<std::uint32_t>(isqrt64(hi == 0 ? 0 : hi - 1)));
  return sieve_range(lo, hi, base, cfg);
}

SieveSegment sieve_range(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base_primes,
                         const SieveConfig& cfg) {
  if (lo > hi) throw Error("sieve range has lo > hi");
  if (hi > (std::uint64_t{1} << 63)) throw Error("sieve range exceeds 2^63");
  if ((hi - lo) / 16 > cfg.memory_budget) {
    throw ResourceError("sieve range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        ") exceeds the memory budget of " + std::to_string(cfg.memory_budget) + " bytes");
  }
  SieveSegment seg(lo, hi);
  const unsigned seg_bits = std::clamp(cfg.segment_bits, 7u, 40u);
  const std::uint64_t bits_per_chunk = std::uint64_t{1} << (seg_bits - 1);
  const std::uint64_t total = seg.odd_count();
  const auto chunks = static_cast<std::int64_t>((total + bits_per_chunk - 1) / bits_per_chunk);
  const int workers = static_cast<int>(std::max(1u, cfg.workers));

#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1 && chunks > 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t b0 = static_cast<std::uint64_t>(c) * bits_per_chunk;
    const std::uint64_t b1 = std::min(total, b0 + bits_per_chunk);
    sieve_chunk(seg, b0, b1, base_primes);
  }
  return seg;
}

std::vector<bool> sieve_range_reference(std::uint64_t lo, std::uint64_t hi) {
  std::vector<bool> prime(hi > lo ? hi - lo : 0, true);
  for (std::uint64_t n = lo; n < hi && n < 2; ++n) prime[n - lo] = false;
  for (std::uint64_t d = 2; d * d < hi; ++d) {
    std::uint64_t start = std::max(d * d, (lo + d - 1) / d * d);
    for (std::uint64_t m = start; m < hi; m += d) prime[m - lo] = false;
  }
  return prime;
}

}  // namespace mixsum
