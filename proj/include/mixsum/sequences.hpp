#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mixsum/bigint.hpp"

namespace mixsum {

enum class SeqKind {
  fibonacci,       // F
  lucas,           // L
  pell,            // P
  companion_pell,  // Q
  catalan,         // C
  half_even_fib,   // U: u_n = F_{3n}/2
  power,           // POWm: m^a
  triangular,      // TRI: x(x+1)/2
};

/// Identifies one sequence. `base` is only meaningful for powers.
struct SeqId {
  SeqKind kind = SeqKind::fibonacci;
  std::uint32_t base = 0;

  friend bool operator==(const SeqId&, const SeqId&) = default;
};

/// Parses "F", "L", "P", "Q", "C", "U", "TRI", "POW2", "POW<m>". Throws on unknown ids.
SeqId parse_seq_id(std::string_view id);
/// Canonical id string ("F", ..., "POW2").
std::string seq_name(SeqId id);

enum class RuleKind { recurrence, polynomial, power, catalan };

struct SequenceDef {
  SeqId id;
  std::string name;
  RuleKind rule = RuleKind::recurrence;
  // Recurrence data: a_{n+1} = alpha*a_n + beta*a_{n-1}, seeded by (a0, a1).
  std::int64_t a0 = 0, a1 = 0, alpha = 0, beta = 0;
  /// Smallest index used when a conjecture says "positive".
  unsigned min_enumeration_index = 0;
  /// Terms are strictly increasing from this index on.
  unsigned monotone_from = 0;
  double growth_ratio = 0.0;
};

SequenceDef sequence_def(SeqId id);

BigInt nth_term(SeqId id, unsigned n);
BigInt nth_term(std::string_view id, unsigned n);

struct Term {
  unsigned index = 0;
  BigInt value;
};

/// Immutable table of every term with index >= min_index and value <= bound.
class TermTable {
 public:
  TermTable(SequenceDef def, BigInt bound, unsigned min_index, std::vector<Term> entries);

  const SequenceDef& sequence() const { return def_; }
  const BigInt& bound() const { return bound_; }
  unsigned min_index() const { return min_index_; }
  const std::vector<Term>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// True when every value fits into 64 bits; values64() is then populated.
  bool fits_u64() const { return fits64_; }
  const std::vector<std::uint64_t>& values64() const { return values64_; }

 private:
  SequenceDef def_;
  BigInt bound_;
  unsigned min_index_;
  std::vector<Term> entries_;
  std::vector<std::uint64_t> values64_;
  bool fits64_ = true;
};

TermTable terms_below(SeqId id, const BigInt& bound, unsigned min_index = 0);

/// Produces terms in index order starting at index 0. Exact, no caching.
class TermGenerator {
 public:
  explicit TermGenerator(SeqId id);
  const BigInt& current() const { return cur_; }
  unsigned index() const { return index_; }
  void advance();

 private:
  SequenceDef def_;
  unsigned index_ = 0;
  BigInt prev_, cur_;
};

}  // namespace mixsum
