#include <cctype>

#include "mixsum/forms.hpp"

namespace mixsum {

namespace {

class FormParser {
 public:
  explicit FormParser(std::string_view text) : text_(text) {}

  Form parse(std::string name) {
    Form form;
    form.name = std::move(name);
    form.prime = prime();
    while (peek('+')) {
      ++pos_;
      form.terms.push_back(term());
    }
    if (peek(':')) {
      ++pos_;
      form.odd_disjunction = parity(form.terms.size());
    }
    if (peek(';')) {
      ++pos_;
      form.domain = domain();
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return form;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    skip_ws();
    if (!peek_digit()) fail("expected number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const unsigned d = static_cast<unsigned>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  PrimeConstraint prime() {
    PrimeConstraint pc;
    if (accept_word("zero_or_prime")) {
      pc.kind = PrimeKind::zero_or_prime;
    } else if (accept_word("odd_prime")) {
      pc.kind = PrimeKind::odd_prime;
    } else if (accept_word("prime")) {
      pc.kind = PrimeKind::prime;
      if (peek('%')) {
        ++pos_;
        pc.kind = PrimeKind::prime_in_class;
        pc.modulus = number();
        expect('=');
        pc.residue = number();
        if (pc.modulus < 1 || pc.residue >= pc.modulus) fail("residue class needs 0 <= r < m");
      }
    } else {
      fail("expected prime constraint (prime, odd_prime, zero_or_prime, prime%m=r)");
    }
    return pc;
  }

  TermSpec term() {
    TermSpec t;
    skip_ws();
    if (peek_digit()) {
      const std::size_t at = pos_;
      const std::uint64_t v = number();
      if (peek('*')) {
        ++pos_;
        if (v == 0) {
          pos_ = at;
          fail("coefficient must be positive");
        }
        t.coefficient = v;
      } else if (peek('^')) {
        ++pos_;
        if (v < 2 || v > UINT32_MAX) {
          pos_ = at;
          fail("power base must be >= 2");
        }
        t.seq = {SeqKind::power, static_cast<std::uint32_t>(v)};
        return term_tail(t);
      } else {
        fail("expected '*' or '^' after number");
      }
    }
    if (peek_digit()) {
      const std::size_t at = pos_;
      const std::uint64_t v = number();
      expect('^');
      if (v < 2 || v > UINT32_MAX) {
        pos_ = at;
        fail("power base must be >= 2");
      }
      t.seq = {SeqKind::power, static_cast<std::uint32_t>(v)};
      return term_tail(t);
    }
    const std::size_t at = pos_;
    const std::string seq = identifier();
    if (seq == "F" || seq == "L" || seq == "P" || seq == "Q" || seq == "C" || seq == "U" || seq == "TRI") {
      t.seq = parse_seq_id(seq);
    } else {
      pos_ = at;
      fail("unknown sequence '" + seq + "'");
    }
    return term_tail(t);
  }

  TermSpec term_tail(TermSpec t) {
    expect('[');
    t.var = identifier();
    expect('>');
    expect('=');
    const std::uint64_t k = number();
    if (k > 100000) fail("minimum index too large");
    t.min_index = static_cast<unsigned>(k);
    expect(']');
    if (peek('^')) {
      ++pos_;
      const std::size_t at = pos_;
      const std::uint64_t e = number();
      if (e < 1 || e > 4) {
        pos_ = at;
        fail("exponent out of range [1,4]");
      }
      t.exponent = static_cast<unsigned>(e);
    }
    if (peek('@')) {
      ++pos_;
      if (accept_word("odd")) {
        t.value_parity = Parity::odd;
      } else if (accept_word("even")) {
        t.value_parity = Parity::even;
      } else {
        fail("expected 'odd' or 'even'");
      }
    }
    return t;
  }

  std::vector<unsigned> parity(std::size_t term_count) {
    std::vector<unsigned> out;
    do {
      if (!out.empty()) ++pos_;  // '|'
      if (!accept_word("odd")) fail("expected odd(<pos>)");
      expect('(');
      const std::size_t at = pos_;
      const std::uint64_t p = number();
      if (p < 1 || p > term_count) {
        pos_ = at;
        fail("term position out of range");
      }
      out.push_back(static_cast<unsigned>(p));
      expect(')');
    } while (peek('|'));
    return out;
  }

  Domain domain() {
    Domain d;
    bool first = true;
    while (first || peek(',') || peek('&')) {
      if (!first) ++pos_;
      first = false;
      if (accept_word("odd")) {
        expect('(');
        if (!accept_word("n")) fail("expected odd(n)");
        expect(')');
        d.odd_only = true;
      } else if (accept_word("n")) {
        expect('>');
        d.greater_than = from_u64(number());
      } else {
        fail("expected n><k> or odd(n)");
      }
    }
    return d;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string print_term(const TermSpec& t) {
  std::string out;
  if (t.coefficient != 1) out += std::to_string(t.coefficient) + "*";
  out += t.seq.kind == SeqKind::power ? std::to_string(t.seq.base) + "^" : seq_name(t.seq);
  out += "[" + t.var + ">=" + std::to_string(t.min_index) + "]";
  if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
  if (t.value_parity) out += *t.value_parity == Parity::odd ? "@odd" : "@even";
  return out;
}

}  // namespace

Form parse_form(std::string_view expression, std::string name) {
  return FormParser(expression).parse(std::move(name));
}

std::string print_form(const Form& form) {
  std::string out;
  switch (form.prime.kind) {
    case PrimeKind::zero_or_prime: out = "zero_or_prime"; break;
    case PrimeKind::prime: out = "prime"; break;
    case PrimeKind::odd_prime: out = "odd_prime"; break;
    case PrimeKind::prime_in_class:
      out = "prime%" + std::to_string(form.prime.modulus) + "=" + std::to_string(form.prime.residue);
      break;
  }
  for (const auto& t : form.terms) out += " + " + print_term(t);
  if (!form.odd_disjunction.empty()) {
    out += " :";
    for (std::size_t i = 0; i < form.odd_disjunction.size(); ++i) {
      out += (i == 0 ? " odd(" : "|odd(") + std::to_string(form.odd_disjunction[i]) + ")";
    }
  }
  if (form.domain.greater_than || form.domain.odd_only) {
    out += " ;";
    if (form.domain.greater_than) out += " n>" + to_string(*form.domain.greater_than);
    if (form.domain.odd_only) out += form.domain.greater_than ? ", odd(n)" : " odd(n)";
  }
  return out;
}

}  // namespace mixsum
