#include "mixsum/counting.hpp"

#include <cmath>

#include "enumeration.hpp"
#include "mixsum/primality.hpp"

namespace mixsum {

using detail::CompiledForm;
using detail::Pick;

namespace {

bool admits64(const PrimeConstraint& pc, std::uint64_t r) {
  return detail::parity_admissible(pc.kind, r) && pc.admits(r);
}

bool admits_big(const PrimeConstraint& pc, const BigInt& r, unsigned extra_rounds) {
  return detail::parity_admissible(pc.kind, r) && pc.admits(r, extra_rounds);
}

// Counts tuples whose first-term entry is `j0` (or all tuples when the form has no terms).
std::uint64_t count_from_entry(const CompiledForm& cf, const BigInt& n, std::size_t j0, unsigned extra_rounds) {
  std::uint64_t r = 0;
  Pick pick{};
  if (cf.terms.empty()) {
    return admits_big(cf.form.prime, n, extra_rounds) ? 1 : 0;
  }
  const auto& first = cf.terms[0];
  const bool ok0 = first.in_disjunction && first.odd[j0];
  pick[0] = static_cast<std::uint32_t>(j0);
  if (cf.fits64) {
    const std::uint64_t n64 = to_u64(n);
    if (first.contrib64[j0] > n64) return 0;
    auto leaf = [&](std::uint64_t res, const Pick&, bool ok) {
      if (ok && admits64(cf.form.prime, res)) ++r;
      return false;
    };
    detail::walk64(cf, 1, n64 - first.contrib64[j0], ok0, j0, pick, false, leaf);
    return r;
  }
  if (first.contrib[j0] > n) return 0;
  std::vector<BigInt> scratch(cf.terms.size() + 1);
  scratch[0] = n;
  scratch[1] = n - first.contrib[j0];
  auto leaf = [&](const BigInt& res, const Pick&, bool ok) {
    if (ok && admits_big(cf.form.prime, res, extra_rounds)) ++r;
    return false;
  };
  detail::walk_big(cf, 1, scratch, ok0, j0, pick, false, leaf);
  return r;
}

CountResult finish(const Form& form, const BigInt& n, std::uint64_t r, unsigned extra_rounds) {
  CountResult out;
  out.form = form.name;
  out.n = n;
  out.r = r;
  if (n >= 2) {
    out.ln_n = ln_big(n);
    out.s = static_cast<double>(r) / out.ln_n;
  }
  out.policy = primality_policy(extra_rounds);
  return out;
}

void check_count_inputs(const Form& form, const BigInt& n, bool ignore_domain) {
  check_verifiable(form);
  if (sgn(n) < 0) throw Error("representation_count needs n >= 0");
  if (!ignore_domain && !applicable(form, n)) {
    throw Error("n = " + to_string(n) + " is outside the domain of form '" + form.name + "'");
  }
}

}  // namespace

CountResult representation_count(const Form& form, const BigInt& n, const CountPolicy& policy) {
  check_count_inputs(form, n, policy.ignore_domain);
  const CompiledForm cf = detail::compile_form(form, n);
  if (cf.terms.empty()) return finish(form, n, count_from_entry(cf, n, 0, policy.extra_rounds), policy.extra_rounds);
  const auto entries = static_cast<std::int64_t>(cf.terms[0].contrib.size());
  std::uint64_t total = 0;
  const int workers = static_cast<int>(std::max(1u, policy.workers));
#pragma omp parallel for schedule(dynamic) reduction(+ : total) num_threads(workers) if (workers > 1)
  for (std::int64_t j = 0; j < entries; ++j) {
    total += count_from_entry(cf, n, static_cast<std::size_t>(j), policy.extra_rounds);
  }
  return finish(form, n, total, policy.extra_rounds);
}

CountResult representation_count_serial(const Form& form, const BigInt& n, unsigned extra_rounds) {
  check_count_inputs(form, n, true);
  const CompiledForm cf = detail::compile_form(form, n);
  std::vector<BigInt> scratch(cf.terms.size() + 1);
  scratch[0] = n;
  Pick pick{};
  std::uint64_t r = 0;
  auto leaf = [&](const BigInt& res, const Pick&, bool ok) {
    if (ok && admits_big(cf.form.prime, res, extra_rounds)) ++r;
    return false;
  };
  detail::walk_big(cf, 0, scratch, false, 0, pick, false, leaf);
  return finish(form, n, r, extra_rounds);
}

std::vector<Witness> representation_witnesses(const Form& form, const BigInt& n, unsigned extra_rounds) {
  check_count_inputs(form, n, true);
  const CompiledForm cf = detail::compile_form(form, n);
  std::vector<BigInt> scratch(cf.terms.size() + 1);
  scratch[0] = n;
  Pick pick{};
  std::vector<Witness> out;
  auto leaf = [&](const BigInt& res, const Pick& pk, bool ok) {
    if (ok && admits_big(cf.form.prime, res, extra_rounds)) out.push_back(detail::make_witness(cf, n, res, pk));
    return false;
  };
  detail::walk_big(cf, 0, scratch, false, 0, pick, false, leaf);
  return out;
}

std::vector<std::int64_t> offset_range(std::int64_t from, std::int64_t to, std::int64_t stride) {
  if (stride <= 0) throw Error("offset stride must be positive");
  std::vector<std::int64_t> out;
  for (std::int64_t o = from; o < to; o += stride) out.push_back(o);
  return out;
}

WindowStats window_stats(const Form& form, const BigInt& base, std::span<const std::int64_t> offsets,
                         const CountPolicy& policy) {
  if (offsets.empty()) throw Error("window_stats needs at least one offset");
  WindowStats ws;
  for (const std::int64_t off : offsets) {
    const BigInt n = base + BigInt(static_cast<long>(off));
    ws.rows.push_back({off, representation_count(form, n, policy)});
  }
  for (std::size_t i = 1; i < ws.rows.size(); ++i) {
    if (ws.rows[i].result.s < ws.rows[ws.argmin].result.s) ws.argmin = i;
    if (ws.rows[i].result.s > ws.rows[ws.argmax].result.s) ws.argmax = i;
  }
  return ws;
}

double ln_big(const BigInt& n) {
  if (n < 1) throw Error("ln_big needs n >= 1");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());  // n = mant * 2^exp, mant in [0.5, 1)
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

HardyLittlewoodConstant hardy_littlewood_constant(std::uint64_t prime_bound) {
  if (prime_bound < 3) throw Error("hardy_littlewood_constant needs prime_bound >= 3");
  const SieveSegment seg = sieve_range(3, prime_bound + 1);
  // Accumulate log terms to keep the long product accurate.
  long double log_sum = 0.0L;
  for (const std::uint64_t p : seg.primes()) {
    const long double q = static_cast<long double>(p - 1);
    log_sum += std::log1p(-1.0L / (q * q));
  }
  HardyLittlewoodConstant out;
  out.prime_bound = prime_bound;
  out.value = static_cast<double>(2.0L * std::exp(log_sum));
  // Missing factors have p - 1 >= prime_bound: their product is >= 1 - sum_{k >= prime_bound} 1/k^2.
  out.truncation_error = out.value / static_cast<double>(prime_bound - 1);
  return out;
}

double hardy_littlewood_estimate(std::uint64_t n, std::uint64_t prime_bound) {
  if (n < 4 || (n & 1)) throw Error("hardy_littlewood_estimate needs an even n >= 4");
  const double c = hardy_littlewood_constant(prime_bound).value;
  double correction = 1.0;
  u128 last = 0;
  for (const u128 p : factor_small(n)) {
    if (p == 2 || p == last) continue;
    last = p;
    correction *= 1.0 + 1.0 / static_cast<double>(p - 2);
  }
  const double ln = std::log(static_cast<double>(n));
  return c * static_cast<double>(n) / (ln * ln) * correction;
}

std::uint64_t goldbach_ordered_count(std::uint64_t n) {
  if (n < 4) return 0;
  const SieveSegment seg = sieve_range(0, n + 1);
  std::uint64_t count = 0;
  for (std::uint64_t p = 2; p <= n - 2; ++p) {
    if (seg.is_prime(p) && seg.is_prime(n - p)) ++count;
  }
  return count;
}

}  // namespace mixsum
