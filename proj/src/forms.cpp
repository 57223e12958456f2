#include <charconv>
#include <map>
#include <numeric>

#include "mixsum/forms.hpp"
#include "mixsum/primality.hpp"

namespace mixsum {

bool PrimeConstraint::vacuous() const {
  if (kind != PrimeKind::prime_in_class) return false;
  if (modulus == 0 || residue >= modulus) return true;
  const std::uint64_t g = std::gcd(residue, modulus);
  if (g == 1) return false;
  // Every member is a multiple of g; only g itself could be prime.
  return !(is_prime_64(g) && g % modulus == residue);
}

bool PrimeConstraint::admits(std::uint64_t v) const {
  switch (kind) {
    case PrimeKind::zero_or_prime: return v == 0 || is_prime_64(v);
    case PrimeKind::prime: return is_prime_64(v);
    case PrimeKind::odd_prime: return v != 2 && is_prime_64(v);
    case PrimeKind::prime_in_class: return v % modulus == residue && is_prime_64(v);
  }
  return false;
}

bool PrimeConstraint::admits(const BigInt& v, unsigned extra_rounds) const {
  if (auto small = try_u64(v)) return admits(*small);
  if (sgn(v) < 0) return false;
  if (kind == PrimeKind::prime_in_class && mpz_fdiv_ui(v.get_mpz_t(), modulus) != residue) return false;
  return is_probable_prime(v, extra_rounds);
}

BigInt TermSpec::contribution(const BigInt& value) const {
  BigInt out = pow_ui(value, exponent);
  out *= coefficient;
  return out;
}

bool same_form(const Form& a, const Form& b) {
  if (!(a.prime == b.prime) || a.odd_disjunction != b.odd_disjunction || !(a.domain == b.domain)) return false;
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!a.terms[i].same_shape(b.terms[i])) return false;
  }
  return true;
}

namespace {

const std::map<std::string, std::string, std::less<>>& registry() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"pT1", "zero_or_prime + TRI[x>=0]"},
      {"pT2", "prime + 2*TRI[x>=1] ; n>3, odd(n)"},
      {"polignac", "prime + 2^[a>=0] ; n>1, odd(n)"},
      {"crocker0", "prime + 2^[a>=0] + 2^[b>=0] ; n>5, odd(n)"},
      {"crocker1", "prime + 2^[a>=1] + 2^[b>=1] ; n>5, odd(n)"},
      {"p222", "odd_prime + 2^[a>=1] + 2^[b>=1] + 2^[c>=1] ; n>8, odd(n)"},
      {"p2_3x2", "prime + 2^[a>=1] + 3*2^[b>=1] ; n>10, odd(n)"},
      {"pFF", "odd_prime + F[s>=2] + F[t>=2] : odd(1)|odd(2) ; n>4"},
      {"pFF_strict", "odd_prime + F[s>=2] + F[t>=2] : odd(1)|odd(2) ; n>4"},
      {"pFF_weak", "odd_prime + F[s>=2] + F[t>=2] ; n>4"},
      {"pFF1_count", "odd_prime + F[s>=2] + F[t>=2] : odd(1)|odd(2)"},
      {"pFF2", "odd_prime + F[s>=2] + F[t>=2]^2 : odd(1)|odd(2) ; n>4"},
      {"pFF2_count", "odd_prime + F[s>=2] + F[t>=2]^2 : odd(1)|odd(2)"},
      {"pFF3", "odd_prime + F[s>=2] + F[t>=2]^3 : odd(1)|odd(2) ; n>4"},
      {"pFF3_count", "odd_prime + F[s>=2] + F[t>=2]^3 : odd(1)|odd(2)"},
      {"pFF4", "prime + F[s>=0] + F[t>=0]^4 ; n>4"},
      {"pLL", "odd_prime + L[s>=0] + L[t>=0] : odd(1)|odd(2) ; n>4"},
      {"pLL2", "odd_prime + L[s>=0] + L[t>=0]^2 : odd(1)|odd(2) ; n>4"},
      {"pLL3", "odd_prime + L[s>=0] + L[t>=0]^3 : odd(1)|odd(2) ; n>4"},
      {"pLL4", "prime + L[s>=0] + L[t>=0]^4 ; n>4"},
      {"pF2F", "odd_prime + F[s>=2] + 2*F[t>=2] ; n>4"},
      {"pFU", "odd_prime + F[s>=2] + U[t>=1] ; n>4"},
      {"p2FF2", "odd_prime + 2*F[s>=2] + F[t>=2]^2 ; n>4"},
      {"pFL", "odd_prime + F[s>=1] + L[t>=0] : odd(1)|odd(2) ; n>4"},
      {"pFLe", "prime + F[s>=0] + L[t>=0]@even ; n>4"},
      {"pFC", "odd_prime + F[s>=2] + C[t>=0] ; n>4"},
      {"pLC", "odd_prime + L[s>=0] + C[t>=0] ; n>4"},
      {"p2FC", "prime + 2*F[s>=0] + C[t>=0] ; n>4"},
      {"p2LC", "prime + 2*L[s>=0] + C[t>=0] ; n>4"},
      {"pP2P", "odd_prime + P[s>=0] + 2*P[t>=0] ; n>5"},
      {"pP2P_strict", "odd_prime + P[s>=1] + 2*P[t>=1] ; n>5"},
      {"pP2P_count", "prime + P[s>=1] + 2*P[t>=1]"},
      {"pP2P_count0", "prime + P[s>=0] + 2*P[t>=0]"},
      {"pPP", "prime + P[s>=0] + P[t>=0] ; n>1"},
      {"pP3P", "prime + P[s>=0] + 3*P[t>=0] ; n>1"},
      {"pP4P", "prime + P[s>=0] + 4*P[t>=0] ; n>7"},
      {"pPQ", "prime + P[s>=0] + Q[t>=0] ; n>5"},
      {"pF5mod6", "prime%6=5 + F[s>=0] + F[t>=0] ; n>4"},
  };
  return table;
}

// "p2k2(<k>)" for odd k >= 3: p + 2^a + k*2^b, claimed for odd n > 2k+3.
std::optional<Form> family_p2k2(std::string_view name) {
  if (!name.starts_with("p2k2(") || !name.ends_with(")")) return std::nullopt;
  const auto digits = name.substr(5, name.size() - 6);
  std::uint64_t k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 3 || k % 2 == 0 || k > (1ULL << 40)) {
    throw Error("p2k2 family needs an odd k >= 3, got '" + std::string(name) + "'");
  }
  const std::string expr = "odd_prime + 2^[a>=1] + " + std::to_string(k) + "*2^[b>=1] ; n>" +
                           std::to_string(2 * k + 3) + ", odd(n)";
  return parse_form(expr, std::string(name));
}

}  // namespace

Form builtin_form(std::string_view name) {
  const auto& table = registry();
  if (auto it = table.find(name); it != table.end()) return parse_form(it->second, it->first);
  if (auto f = family_p2k2(name)) return *f;
  throw Error("unknown form '" + std::string(name) + "'");
}

std::vector<std::string> builtin_form_names() {
  std::vector<std::string> out;
  for (const auto& [name, expr] : registry()) out.push_back(name);
  return out;
}

std::vector<std::string> counting_form_names() {
  return {"pP2P_count", "pP2P_count0", "pFF1_count", "pFF2_count", "pFF3_count"};
}

Form resolve_form(std::string_view text) {
  const auto& table = registry();
  if (table.find(text) != table.end() || text.starts_with("p2k2(")) return builtin_form(text);
  return parse_form(text);
}

bool applicable(const Form& form, const BigInt& n) {
  if (sgn(n) < 0) return false;
  if (form.domain.greater_than && !(n > *form.domain.greater_than)) return false;
  if (form.domain.odd_only && mpz_even_p(n.get_mpz_t())) return false;
  return true;
}

std::string witness_violation(const Form& form, const Witness& w) {
  if (w.term_indices.size() != form.terms.size() || w.term_values.size() != form.terms.size()) {
    return "term count does not match the form";
  }
  BigInt sum = w.p;
  bool any_odd = false;
  for (std::size_t i = 0; i < form.terms.size(); ++i) {
    const TermSpec& t = form.terms[i];
    const unsigned idx = w.term_indices[i];
    if (idx < t.min_index) return "term " + std::to_string(i + 1) + " index below minimum";
    if (nth_term(t.seq, idx) != w.term_values[i]) return "term " + std::to_string(i + 1) + " value mismatch";
    const bool odd = mpz_odd_p(w.term_values[i].get_mpz_t());
    if (t.value_parity && (*t.value_parity == Parity::odd) != odd) {
      return "term " + std::to_string(i + 1) + " parity";
    }
    for (const unsigned pos : form.odd_disjunction) {
      if (pos == i + 1 && odd) any_odd = true;
    }
    sum += t.contribution(w.term_values[i]);
  }
  if (!form.odd_disjunction.empty() && !any_odd) return "no odd term among the disjunction";
  if (!form.prime.admits(w.p)) return "p violates the prime constraint";
  if (sum != w.n) return "sum mismatch";
  return {};
}

void check_verifiable(const Form& form) {
  if (form.prime.vacuous()) throw Error("form '" + form.name + "' has a vacuous prime constraint");
  for (const unsigned pos : form.odd_disjunction) {
    if (pos == 0 || pos > form.terms.size()) {
      throw Error("form '" + form.name + "' references term position " + std::to_string(pos));
    }
  }
  for (const auto& t : form.terms) {
    if (t.coefficient == 0) throw Error("form '" + form.name + "' has a zero coefficient");
    if (t.exponent < 1 || t.exponent > 4) throw Error("form '" + form.name + "' has an exponent outside [1,4]");
  }
}

}  // namespace mixsum
