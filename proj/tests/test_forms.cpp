#include <doctest.h>

#include <random>

#include "mixsum/forms.hpp"
#include "mixsum/verifier.hpp"

using namespace mixsum;

TEST_CASE("builtin forms") {
  const Form ff = builtin_form("pFF");
  CHECK(ff.prime.kind == PrimeKind::odd_prime);
  REQUIRE(ff.terms.size() == 2);
  CHECK(ff.terms[0].seq == parse_seq_id("F"));
  CHECK(ff.terms[0].min_index == 2);
  CHECK(ff.terms[1].min_index == 2);
  CHECK(ff.odd_disjunction == std::vector<unsigned>{1, 2});
  CHECK(*ff.domain.greater_than == 4);

  const Form pp = builtin_form("pP2P");
  CHECK(pp.terms[0].min_index == 0);
  CHECK(pp.terms[1].coefficient == 2);
  CHECK(*pp.domain.greater_than == 5);
  CHECK(builtin_form("pP2P_strict").terms[1].min_index == 1);

  const Form t1 = builtin_form("pT1");
  CHECK(t1.prime.kind == PrimeKind::zero_or_prime);
  CHECK(t1.terms[0].seq.kind == SeqKind::triangular);
  CHECK_FALSE(t1.domain.greater_than);

  CHECK_THROWS_AS(builtin_form("nope"), Error);
  CHECK_THROWS_AS(builtin_form("p2k2(4)"), Error);
}

TEST_CASE("every builtin round-trips through print and parse") {
  auto names = builtin_form_names();
  names.push_back("p2k2(63)");
  for (const auto& name : names) {
    const Form f = builtin_form(name);
    const std::string text = print_form(f);
    INFO(name, ": ", text);
    const Form g = parse_form(text, name);
    CHECK(same_form(f, g));
    CHECK(print_form(g) == text);
  }
}

TEST_CASE("parse_form examples") {
  CHECK(same_form(parse_form("odd_prime + F[i>=2] + F[i>=2] : odd(1)|odd(2) ; n>4"), builtin_form("pFF")));
  const Form f = parse_form("prime + P[i>=0] + 2*P[i>=0]");
  CHECK(f.prime.kind == PrimeKind::prime);
  CHECK(f.terms[1].coefficient == 2);
  CHECK(f.odd_disjunction.empty());

  const Form k63 = parse_form("odd_prime + 2^[a>=1] + 63*2^[b>=1] ; odd(n)");
  const Form fam = builtin_form("p2k2(63)");
  CHECK(k63.prime == fam.prime);
  REQUIRE(k63.terms.size() == fam.terms.size());
  for (std::size_t i = 0; i < k63.terms.size(); ++i) CHECK(k63.terms[i].same_shape(fam.terms[i]));
  CHECK(k63.domain.odd_only);

  const Form cls = parse_form("prime%6=5 + F[s>=0]^3 ; n>4");
  CHECK(cls.prime.kind == PrimeKind::prime_in_class);
  CHECK(cls.prime.modulus == 6);
  CHECK(cls.prime.residue == 5);
  CHECK(cls.terms[0].exponent == 3);
  CHECK(same_form(parse_form("  prime+P[ s >= 0 ]+2 * P[t>=0]  "), f));
}

TEST_CASE("parse_form errors carry a position") {
  for (const char* bad : {"", "prime +", "prime + X[i>=0]", "prime + F[i>0]", "prime + F[i>=0]^9", "prime + F[i>=0] : odd(3)",
                          "prime%0=0 + F[i>=0]", "prime%4=4 + F[i>=0]", "prime + 0*F[i>=0]", "odd_prime + F[i>=0] ; n>"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_form(bad), ParseError);
  }
  try {
    parse_form("prime + F[i>=0] + Z[j>=1]");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 18);
  }
}

TEST_CASE("vacuous forms are constructible but not verifiable") {
  const Form f = parse_form("prime%4=0 + F[i>=0]");
  CHECK(f.prime.vacuous());
  CHECK_THROWS_AS(check_verifiable(f), Error);
  CHECK_THROWS_AS(verify_range(f, 0, 10), Error);
  CHECK_NOTHROW(check_verifiable(builtin_form("pF5mod6")));
  CHECK(parse_form("prime%4=2 + F[i>=0]").prime.admits(2));
}

TEST_CASE("applicable") {
  CHECK(applicable(builtin_form("p222"), 9));
  CHECK_FALSE(applicable(builtin_form("p222"), 10));
  CHECK_FALSE(applicable(builtin_form("pFF"), 4));
  CHECK(applicable(builtin_form("pFF"), 5));
  CHECK(applicable(builtin_form("pT1"), 0));
  CHECK_FALSE(applicable(builtin_form("p2k2(63)"), 129));
  CHECK(applicable(builtin_form("p2k2(63)"), 131));
}

TEST_CASE("witness validation rejects every single-field mutation") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (const auto& name : builtin_form_names()) {
    const Form f = builtin_form(name);
    for (std::uint64_t n = 20; n < 400; n += 7) {
      if (!applicable(f, n)) continue;
      const auto w = find_witness(f, n);
      if (!w) continue;
      INFO(name, " n=", n);
      REQUIRE(validate_witness(f, *w));
      ++checked;
      std::vector<Witness> mutants;
      Witness m = *w;
      m.n += 1 + rng() % 5;
      mutants.push_back(m);
      m = *w;
      m.p += 1 + rng() % 3;
      mutants.push_back(m);
      for (std::size_t i = 0; i < w->term_indices.size(); ++i) {
        // An index move that lands on an equal value (F_1 = F_2, C_0 = C_1) is another valid witness.
        auto move_index = [&](unsigned to) {
          if (to >= f.terms[i].min_index && nth_term(f.terms[i].seq, to) == w->term_values[i]) return;
          m = *w;
          m.term_indices[i] = to;
          mutants.push_back(m);
        };
        move_index(w->term_indices[i] + 1 + rng() % 3);
        if (w->term_indices[i] > 0) move_index(w->term_indices[i] - 1);
        m = *w;
        m.term_values[i] += 1;
        mutants.push_back(m);
      }
      m = *w;
      m.term_indices.pop_back();
      mutants.push_back(m);
      for (const auto& bad : mutants) CHECK_FALSE(validate_witness(f, bad));
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("witness validation checks constraints") {
  const Form ff = builtin_form("pFF");
  // 3 + F_3 + F_3 = 7, but both Fibonacci values are even.
  Witness w{7, 3, {3, 3}, {2, 2}};
  CHECK_FALSE(validate_witness(ff, w));
  Witness ok{5, 3, {2, 2}, {1, 1}};
  CHECK(validate_witness(ff, ok));
  Witness low{5, 3, {1, 2}, {1, 1}};  // index below min_index
  CHECK_FALSE(validate_witness(ff, low));
  Witness two{6, 2, {2, 3}, {1, 2}};  // p = 2 is not an odd prime
  CHECK_FALSE(validate_witness(builtin_form("pFF"), two));
  CHECK(validate_witness(builtin_form("pFF4"), Witness{5, 2, {3, 1}, {2, 1}}));
  CHECK_FALSE(validate_witness(builtin_form("pFLe"), Witness{5, 3, {0, 1}, {0, 1}}));
}
