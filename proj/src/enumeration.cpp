#include "enumeration.hpp"

namespace mixsum::detail {

CompiledForm compile_form(const Form& form, const BigInt& bound) {
  check_verifiable(form);
  if (form.terms.size() > kMaxTerms) throw Error("form '" + form.name + "' has too many terms");
  CompiledForm cf;
  cf.form = form;
  cf.bound = bound;
  cf.fits64 = fits_u64(bound);
  for (std::size_t i = 0; i < form.terms.size(); ++i) {
    const TermSpec& spec = form.terms[i];
    CompiledTerm ct;
    ct.spec = spec;
    for (const unsigned pos : form.odd_disjunction) ct.in_disjunction |= (pos == i + 1);
    ct.mirrors_previous = i > 0 && spec.same_shape(form.terms[i - 1]) &&
                          ct.in_disjunction == cf.terms[i - 1].in_disjunction;
    // Largest admissible sequence value: floor((bound / c)^(1/e)).
    BigInt value_bound = sgn(bound) > 0 ? BigInt(bound / BigInt(from_u64(spec.coefficient))) : BigInt(0);
    mpz_root(value_bound.get_mpz_t(), value_bound.get_mpz_t(), spec.exponent);
    const TermTable table = terms_below(spec.seq, value_bound, spec.min_index);
    const unsigned monotone_from = table.sequence().monotone_from;
    for (const Term& term : table.entries()) {
      const bool odd = mpz_odd_p(term.value.get_mpz_t());
      if (spec.value_parity && (*spec.value_parity == Parity::odd) != odd) continue;
      ct.index.push_back(term.index);
      ct.value.push_back(term.value);
      ct.contrib.push_back(spec.contribution(term.value));
      ct.odd.push_back(odd);
      ct.monotone.push_back(term.index >= monotone_from);
    }
    for (const BigInt& c : ct.contrib) {
      if (!fits_u64(c)) {
        cf.fits64 = false;
        break;
      }
    }
    if (cf.fits64) {
      for (const BigInt& c : ct.contrib) ct.contrib64.push_back(to_u64(c));
    }
    cf.terms.push_back(std::move(ct));
  }
  if (!cf.fits64) {
    for (auto& t : cf.terms) t.contrib64.clear();
  }
  return cf;
}

Witness make_witness(const CompiledForm& cf, const BigInt& n, const BigInt& p, const Pick& pick) {
  Witness w;
  w.n = n;
  w.p = p;
  for (std::size_t i = 0; i < cf.terms.size(); ++i) {
    w.term_indices.push_back(cf.terms[i].index[pick[i]]);
    w.term_values.push_back(cf.terms[i].value[pick[i]]);
  }
  return w;
}

}  // namespace mixsum::detail
