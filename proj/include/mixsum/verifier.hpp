#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixsum/forms.hpp"

namespace mixsum {

/// Worker count from MIXSUM_WORKERS, else the OpenMP default.
unsigned default_workers();

struct RunPolicy {
  unsigned workers = 1;
  /// log2 of the integers handled per segment.
  unsigned segment_bits = 20;
  unsigned extra_rounds = 0;
  bool emit_witnesses = false;
  std::string checkpoint_path;
  /// Integers processed between checkpoint writes.
  std::uint64_t checkpoint_every = 100'000'000;
  bool resume = false;
};

enum class Status { exception, witness };

struct ExceptionRecord {
  std::string form;
  BigInt n;
  std::uint64_t candidates_checked = 0;
  Status status = Status::exception;
  /// Lexicographically smallest witness when status == witness.
  std::optional<Witness> witness;
};

struct VerifyReport {
  std::string form;
  std::uint64_t lo = 0, hi = 0;
  std::vector<ExceptionRecord> exceptions;  // ascending n
  std::vector<Witness> witnesses;           // only with emit_witnesses
  std::uint64_t verified_count = 0;
  double elapsed_s = 0.0;
  std::string policy;
  unsigned workers = 1;
  bool resumed = false;
};

/// Called once per processed batch, in ascending order, with the new records only.
using BatchSink = std::function<void(const std::vector<ExceptionRecord>&, const std::vector<Witness>&)>;

/// Canonical (lexicographically smallest index tuple) witness, if any.
std::optional<Witness> find_witness(const Form& form, const BigInt& n, unsigned extra_rounds = 0);

/// Exhaustive enumeration of every tuple; never short-circuits.
ExceptionRecord confirm_exception(const Form& form, const BigInt& n, unsigned extra_rounds = 0);

/// Classifies every applicable n in [lo, hi). Output does not depend on workers or segment size.
VerifyReport verify_range(const Form& form, std::uint64_t lo, std::uint64_t hi, const RunPolicy& policy = {},
                          const BatchSink& sink = {});

/// One n at a time through find_witness; reference for verify_range.
VerifyReport verify_range_serial(const Form& form, std::uint64_t lo, std::uint64_t hi);

/// Odd n in (5, bound] that are not p + 2^a + 2^b with a, b >= min_exponent.
std::vector<std::uint64_t> crocker_scan(std::uint64_t bound, unsigned min_exponent, const RunPolicy& policy = {});

/// For each even n in [max(lo,4), hi): smallest prime p with n - p prime and p <= n - p.
VerifyReport goldbach_check(std::uint64_t lo, std::uint64_t hi, const RunPolicy& policy = {},
                            const BatchSink& sink = {});

struct Checkpoint {
  std::string kind;  // "verify" or "goldbach"
  std::string form;
  std::string expression;
  std::uint64_t lo = 0, hi = 0, next_n = 0, verified_count = 0;
  std::vector<ExceptionRecord> exceptions;
};

void write_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace mixsum
