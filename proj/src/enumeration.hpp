#pragma once

// Tuple enumeration shared by the verifier and the counter. Tuples are visited
// in ascending lexicographic order of term indices.

#include <array>
#include <cstdint>
#include <vector>

#include "mixsum/forms.hpp"

namespace mixsum::detail {

inline constexpr std::size_t kMaxTerms = 6;

struct CompiledTerm {
  TermSpec spec;
  std::vector<unsigned> index;
  std::vector<BigInt> value;
  std::vector<BigInt> contrib;
  std::vector<std::uint64_t> contrib64;
  std::vector<std::uint8_t> odd;
  std::vector<std::uint8_t> monotone;
  bool in_disjunction = false;
  /// Same shape as the previous term (eligible for index-sorted dedupe).
  bool mirrors_previous = false;
};

struct CompiledForm {
  Form form;
  BigInt bound;
  std::vector<CompiledTerm> terms;
  bool fits64 = true;
};

/// Tabulates every term that can contribute to a sum <= bound.
CompiledForm compile_form(const Form& form, const BigInt& bound);

using Pick = std::array<std::uint32_t, kMaxTerms>;

/// Visits tuples whose contribution sum is <= n. `leaf(residual, pick, disjunction_ok)`
/// returns true to stop. With `dedupe`, mirrored adjacent terms use non-decreasing
/// entry positions. Returns true when stopped early.
template <class Leaf>
bool walk64(const CompiledForm& cf, std::size_t depth, std::uint64_t remaining, bool disj_ok, std::size_t start,
            Pick& pick, bool dedupe, Leaf& leaf) {
  if (depth == cf.terms.size()) return leaf(remaining, pick, disj_ok || cf.form.odd_disjunction.empty());
  const CompiledTerm& t = cf.terms[depth];
  const std::size_t first = (dedupe && t.mirrors_previous) ? start : 0;
  for (std::size_t j = first; j < t.contrib64.size(); ++j) {
    const std::uint64_t c = t.contrib64[j];
    if (c > remaining) {
      if (t.monotone[j]) break;
      continue;
    }
    pick[depth] = static_cast<std::uint32_t>(j);
    const bool next_ok = disj_ok || (t.in_disjunction && t.odd[j]);
    if (walk64(cf, depth + 1, remaining - c, next_ok, j, pick, dedupe, leaf)) return true;
  }
  return false;
}

/// Big-integer counterpart of walk64. `scratch` must hold terms.size()+1 values;
/// scratch[0] is the target n.
template <class Leaf>
bool walk_big(const CompiledForm& cf, std::size_t depth, std::vector<BigInt>& scratch, bool disj_ok,
              std::size_t start, Pick& pick, bool dedupe, Leaf& leaf) {
  if (depth == cf.terms.size()) return leaf(scratch[depth], pick, disj_ok || cf.form.odd_disjunction.empty());
  const CompiledTerm& t = cf.terms[depth];
  const std::size_t first = (dedupe && t.mirrors_previous) ? start : 0;
  for (std::size_t j = first; j < t.contrib.size(); ++j) {
    if (t.contrib[j] > scratch[depth]) {
      if (t.monotone[j]) break;
      continue;
    }
    pick[depth] = static_cast<std::uint32_t>(j);
    mpz_sub(scratch[depth + 1].get_mpz_t(), scratch[depth].get_mpz_t(), t.contrib[j].get_mpz_t());
    const bool next_ok = disj_ok || (t.in_disjunction && t.odd[j]);
    if (walk_big(cf, depth + 1, scratch, next_ok, j, pick, dedupe, leaf)) return true;
  }
  return false;
}

Witness make_witness(const CompiledForm& cf, const BigInt& n, const BigInt& p, const Pick& pick);

/// Cheap parity screen before a primality test: residual r can satisfy the constraint only if this holds.
inline bool parity_admissible(PrimeKind kind, std::uint64_t r) {
  if (r & 1) return true;
  return r == 2 ? kind != PrimeKind::odd_prime : (r == 0 && kind == PrimeKind::zero_or_prime);
}

inline bool parity_admissible(PrimeKind kind, const BigInt& r) {
  if (mpz_odd_p(r.get_mpz_t())) return true;
  return mpz_cmp_ui(r.get_mpz_t(), 2) == 0 ? kind != PrimeKind::odd_prime
                                           : (sgn(r) == 0 && kind == PrimeKind::zero_or_prime);
}

}  // namespace mixsum::detail
