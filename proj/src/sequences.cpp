#include "mixsum/sequences.hpp"

#include <charconv>
#include <cmath>

namespace mixsum {

std::string to_string_u128(u128 v) { return from_u128(v).get_str(10); }

SeqId parse_seq_id(std::string_view id) {
  if (id == "F") return {SeqKind::fibonacci, 0};
  if (id == "L") return {SeqKind::lucas, 0};
  if (id == "P") return {SeqKind::pell, 0};
  if (id == "Q") return {SeqKind::companion_pell, 0};
  if (id == "C") return {SeqKind::catalan, 0};
  if (id == "U") return {SeqKind::half_even_fib, 0};
  if (id == "TRI") return {SeqKind::triangular, 0};
  if (id.starts_with("POW")) {
    std::uint32_t base = 0;
    const auto digits = id.substr(3);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), base);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && base >= 2) {
      return {SeqKind::power, base};
    }
  }
  throw Error("unknown sequence id '" + std::string(id) + "'");
}

std::string seq_name(SeqId id) {
  switch (id.kind) {
    case SeqKind::fibonacci: return "F";
    case SeqKind::lucas: return "L";
    case SeqKind::pell: return "P";
    case SeqKind::companion_pell: return "Q";
    case SeqKind::catalan: return "C";
    case SeqKind::half_even_fib: return "U";
    case SeqKind::triangular: return "TRI";
    case SeqKind::power: return "POW" + std::to_string(id.base);
  }
  return "?";
}

SequenceDef sequence_def(SeqId id) {
  SequenceDef d;
  d.id = id;
  d.name = seq_name(id);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  switch (id.kind) {
    case SeqKind::fibonacci:
      d.a0 = 0, d.a1 = 1, d.alpha = 1, d.beta = 1;
      d.min_enumeration_index = 2, d.monotone_from = 2, d.growth_ratio = phi;
      break;
    case SeqKind::lucas:
      // L0=2 > L1=1, increasing afterwards.
      d.a0 = 2, d.a1 = 1, d.alpha = 1, d.beta = 1;
      d.min_enumeration_index = 0, d.monotone_from = 1, d.growth_ratio = phi;
      break;
    case SeqKind::pell:
      d.a0 = 0, d.a1 = 1, d.alpha = 2, d.beta = 1;
      d.min_enumeration_index = 1, d.monotone_from = 0, d.growth_ratio = 1.0 + std::sqrt(2.0);
      break;
    case SeqKind::companion_pell:
      d.a0 = 2, d.a1 = 2, d.alpha = 2, d.beta = 1;
      d.min_enumeration_index = 0, d.monotone_from = 1, d.growth_ratio = 1.0 + std::sqrt(2.0);
      break;
    case SeqKind::half_even_fib:
      d.a0 = 0, d.a1 = 1, d.alpha = 4, d.beta = 1;
      d.min_enumeration_index = 1, d.monotone_from = 0, d.growth_ratio = phi * phi * phi;
      break;
    case SeqKind::catalan:
      d.rule = RuleKind::catalan;
      d.min_enumeration_index = 0, d.monotone_from = 1, d.growth_ratio = 4.0;
      break;
    case SeqKind::power:
      if (id.base < 2) throw Error("power sequence needs base >= 2");
      d.rule = RuleKind::power;
      d.min_enumeration_index = 1, d.monotone_from = 0, d.growth_ratio = id.base;
      break;
    case SeqKind::triangular:
      d.rule = RuleKind::polynomial;
      d.min_enumeration_index = 1, d.monotone_from = 0, d.growth_ratio = 1.0;
      break;
  }
  return d;
}

TermGenerator::TermGenerator(SeqId id) : def_(sequence_def(id)) {
  switch (def_.rule) {
    case RuleKind::recurrence:
      prev_ = 0;  // unused until index 1
      cur_ = static_cast<long>(def_.a0);
      break;
    case RuleKind::catalan:
    case RuleKind::power:
      cur_ = 1;
      break;
    case RuleKind::polynomial:
      cur_ = 0;
      break;
  }
}

void TermGenerator::advance() {
  switch (def_.rule) {
    case RuleKind::recurrence:
      if (index_ == 0) {
        prev_ = cur_;
        cur_ = static_cast<long>(def_.a1);
      } else {
        BigInt next = def_.alpha * cur_ + def_.beta * prev_;
        prev_.swap(cur_);
        cur_.swap(next);
      }
      break;
    case RuleKind::catalan:
      // C_{n+1} = C_n * 2(2n+1) / (n+2), exact.
      cur_ *= 2 * (2 * static_cast<unsigned long>(index_) + 1);
      mpz_divexact_ui(cur_.get_mpz_t(), cur_.get_mpz_t(), index_ + 2);
      break;
    case RuleKind::power:
      cur_ *= def_.id.base;
      break;
    case RuleKind::polynomial:
      cur_ += index_ + 1;
      break;
  }
  ++index_;
}

BigInt nth_term(SeqId id, unsigned n) {
  TermGenerator gen(id);
  while (gen.index() < n) gen.advance();
  return gen.current();
}

BigInt nth_term(std::string_view id, unsigned n) { return nth_term(parse_seq_id(id), n); }

TermTable::TermTable(SequenceDef def, BigInt bound, unsigned min_index, std::vector<Term> entries)
    : def_(std::move(def)), bound_(std::move(bound)), min_index_(min_index), entries_(std::move(entries)) {
  values64_.reserve(entries_.size());
  for (const auto& t : entries_) {
    if (!mixsum::fits_u64(t.value)) {
      fits64_ = false;
      values64_.clear();
      break;
    }
    values64_.push_back(to_u64(t.value));
  }
}

TermTable terms_below(SeqId id, const BigInt& bound, unsigned min_index) {
  const SequenceDef def = sequence_def(id);
  std::vector<Term> entries;
  if (sgn(bound) >= 0) {
    for (TermGenerator gen(id);; gen.advance()) {
      const bool past_prefix = gen.index() >= def.monotone_from;
      if (gen.current() > bound) {
        if (past_prefix) break;
        continue;
      }
      if (gen.index() >= min_index) entries.push_back({gen.index(), gen.current()});
    }
  }
  return TermTable(def, bound, min_index, std::move(entries));
}

}  // namespace mixsum
