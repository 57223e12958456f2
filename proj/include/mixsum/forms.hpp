#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixsum/bigint.hpp"
#include "mixsum/sequences.hpp"

namespace mixsum {

enum class PrimeKind { zero_or_prime, prime, odd_prime, prime_in_class };

struct PrimeConstraint {
  PrimeKind kind = PrimeKind::prime;
  std::uint64_t residue = 0;  // prime_in_class only
  std::uint64_t modulus = 0;

  /// True when no prime satisfies the constraint (e.g. prime%4=0).
  bool vacuous() const;
  bool admits(const BigInt& value, unsigned extra_rounds = 0) const;
  bool admits(std::uint64_t value) const;

  friend bool operator==(const PrimeConstraint&, const PrimeConstraint&) = default;
};

enum class Parity { odd, even };

/// One summand c * (term of `seq`)^exponent with index >= min_index.
struct TermSpec {
  SeqId seq;
  std::uint64_t coefficient = 1;
  unsigned exponent = 1;
  unsigned min_index = 0;
  std::optional<Parity> value_parity;
  std::string var = "i";  // index variable name, cosmetic

  BigInt contribution(const BigInt& value) const;

  bool same_shape(const TermSpec& o) const {
    return seq == o.seq && coefficient == o.coefficient && exponent == o.exponent && min_index == o.min_index &&
           value_parity == o.value_parity;
  }
};

/// Which n a form is claimed for: n > greater_than (if set) and n odd (if odd_only).
struct Domain {
  std::optional<BigInt> greater_than;
  bool odd_only = false;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.odd_only == b.odd_only && a.greater_than == b.greater_than;
  }
};

struct Form {
  std::string name;
  PrimeConstraint prime;
  std::vector<TermSpec> terms;
  /// 1-based term positions; at least one of those term values must be odd.
  std::vector<unsigned> odd_disjunction;
  Domain domain;
};

/// Semantic equality: ignores the form name and index variable names.
bool same_form(const Form& a, const Form& b);

struct Witness {
  BigInt n;
  BigInt p;
  std::vector<unsigned> term_indices;
  std::vector<BigInt> term_values;
};

/// Registered names, e.g. "pFF", "pP2P_count", "p2k2(63)" (any odd k >= 3).
Form builtin_form(std::string_view name);
std::vector<std::string> builtin_form_names();
/// Forms whose index-tuple count is a published statistic.
std::vector<std::string> counting_form_names();

/// Grammar: <prime> ('+' <term>)* [':' <parity>] [';' <domain>]
Form parse_form(std::string_view expression, std::string name = "custom");
/// Resolves a builtin name first, then falls back to parse_form.
Form resolve_form(std::string_view name_or_expression);
std::string print_form(const Form& form);

bool applicable(const Form& form, const BigInt& n);

/// Empty string when the witness certifies n under the form, otherwise the first violated condition.
std::string witness_violation(const Form& form, const Witness& w);
inline bool validate_witness(const Form& form, const Witness& w) { return witness_violation(form, w).empty(); }

/// Throws Error if the form cannot be verified (vacuous prime class, bad disjunction positions).
void check_verifiable(const Form& form);

}  // namespace mixsum
