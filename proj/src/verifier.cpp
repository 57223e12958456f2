#include "mixsum/verifier.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "enumeration.hpp"
#include "mixsum/primality.hpp"

namespace mixsum {

using detail::CompiledForm;
using detail::Pick;

unsigned default_workers() {
  if (const char* env = std::getenv("MIXSUM_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max(1, omp_get_max_threads()));
}

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

template <class PrimeTest>
bool constraint_holds(const PrimeConstraint& pc, std::uint64_t r, PrimeTest&& is_prime) {
  if (!detail::parity_admissible(pc.kind, r)) return false;
  switch (pc.kind) {
    case PrimeKind::zero_or_prime: return r == 0 || is_prime(r);
    case PrimeKind::prime: return is_prime(r);
    case PrimeKind::odd_prime: return r != 2 && is_prime(r);
    case PrimeKind::prime_in_class: return r % pc.modulus == pc.residue && is_prime(r);
  }
  return false;
}

std::optional<Witness> search(const CompiledForm& cf, const BigInt& n, unsigned extra_rounds) {
  Pick pick{};
  if (cf.fits64) {
    const std::uint64_t n64 = to_u64(n);
    std::uint64_t found_p = 0;
    auto leaf = [&](std::uint64_t r, const Pick&, bool ok) {
      if (!ok || !constraint_holds(cf.form.prime, r, is_prime_64)) return false;
      found_p = r;
      return true;
    };
    if (detail::walk64(cf, 0, n64, false, 0, pick, true, leaf)) return detail::make_witness(cf, n, from_u64(found_p), pick);
    return std::nullopt;
  }
  std::vector<BigInt> scratch(cf.terms.size() + 1);
  scratch[0] = n;
  BigInt found_p;
  auto leaf = [&](const BigInt& r, const Pick&, bool ok) {
    if (!ok || !detail::parity_admissible(cf.form.prime.kind, r)) return false;
    if (!cf.form.prime.admits(r, extra_rounds)) return false;
    found_p = r;
    return true;
  };
  if (detail::walk_big(cf, 0, scratch, false, 0, pick, true, leaf)) return detail::make_witness(cf, n, found_p, pick);
  return std::nullopt;
}

ExceptionRecord exhaust(const CompiledForm& cf, const BigInt& n, unsigned extra_rounds) {
  ExceptionRecord rec;
  rec.form = cf.form.name;
  rec.n = n;
  Pick pick{};
  if (cf.fits64) {
    auto leaf = [&](std::uint64_t r, const Pick& pk, bool ok) {
      ++rec.candidates_checked;
      if (!rec.witness && ok && constraint_holds(cf.form.prime, r, is_prime_64)) {
        rec.witness = detail::make_witness(cf, n, from_u64(r), pk);
      }
      return false;
    };
    detail::walk64(cf, 0, to_u64(n), false, 0, pick, false, leaf);
  } else {
    std::vector<BigInt> scratch(cf.terms.size() + 1);
    scratch[0] = n;
    auto leaf = [&](const BigInt& r, const Pick& pk, bool ok) {
      ++rec.candidates_checked;
      if (!rec.witness && ok && detail::parity_admissible(cf.form.prime.kind, r) &&
          cf.form.prime.admits(r, extra_rounds)) {
        rec.witness = detail::make_witness(cf, n, r, pk);
      }
      return false;
    };
    detail::walk_big(cf, 0, scratch, false, 0, pick, false, leaf);
  }
  rec.status = rec.witness ? Status::witness : Status::exception;
  return rec;
}

// Applicable n in [a, b) are first, first+step, ...
struct Stride {
  std::uint64_t first, step;
};

Stride applicable_stride(const Form& form, std::uint64_t a) {
  std::uint64_t first = a;
  if (form.domain.greater_than) {
    const BigInt& g = *form.domain.greater_than;
    if (sgn(g) >= 0) {
      if (!fits_u64(g) || to_u64(g) == UINT64_MAX) return {UINT64_MAX, 1};
      first = std::max(first, to_u64(g) + 1);
    }
  }
  std::uint64_t step = 1;
  if (form.domain.odd_only) {
    first |= 1;
    step = 2;
  }
  return {first, step};
}

struct SegmentResult {
  std::uint64_t verified = 0;
  std::vector<ExceptionRecord> exceptions;
  std::vector<Witness> witnesses;
};

SegmentResult process_segment(const CompiledForm& cf, std::uint64_t a, std::uint64_t b,
                              std::span<const std::uint32_t> base, const RunPolicy& policy) {
  SegmentResult out;
  const std::uint64_t slack = b - a;
  const std::uint64_t wlo = a > slack ? a - slack : 0;
  const SieveSegment window = sieve_range(wlo, b, base);
  auto is_prime = [&](std::uint64_t r) { return r >= wlo ? window.is_prime(r) : is_prime_64(r); };
  const Stride st = applicable_stride(cf.form, a);
  Pick pick{};
  std::uint64_t found_p = 0;
  auto leaf = [&](std::uint64_t r, const Pick&, bool ok) {
    if (!ok || !constraint_holds(cf.form.prime, r, is_prime)) return false;
    found_p = r;
    return true;
  };
  for (std::uint64_t n = st.first; n < b; n += st.step) {
    if (detail::walk64(cf, 0, n, false, 0, pick, true, leaf)) {
      ++out.verified;
      if (policy.emit_witnesses) out.witnesses.push_back(detail::make_witness(cf, from_u64(n), from_u64(found_p), pick));
      continue;
    }
    ExceptionRecord rec = exhaust(cf, from_u64(n), policy.extra_rounds);
    if (rec.status != Status::exception) throw Error("range kernel and exhaustive check disagree at n=" + std::to_string(n));
    out.exceptions.push_back(std::move(rec));
  }
  return out;
}

// Shared batch driver for verify_range and goldbach_check.
template <class Kernel>
VerifyReport drive(const std::string& kind, const std::string& form_name, const std::string& expression,
                   std::uint64_t lo, std::uint64_t hi, const RunPolicy& policy, const BatchSink& sink,
                   Kernel&& kernel) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.form = form_name;
  rep.lo = lo;
  rep.hi = hi;
  rep.workers = std::max(1u, policy.workers);
  rep.policy = "segment_bits=" + std::to_string(policy.segment_bits) + "; " + primality_policy(policy.extra_rounds);
  std::uint64_t start = lo;
  if (policy.resume && !policy.checkpoint_path.empty() && std::filesystem::exists(policy.checkpoint_path)) {
    Checkpoint cp = read_checkpoint(policy.checkpoint_path);
    if (cp.kind != kind || cp.expression != expression || cp.lo != lo || cp.hi != hi) {
      throw Error("checkpoint " + policy.checkpoint_path + " does not match this run");
    }
    start = cp.next_n;
    rep.verified_count = cp.verified_count;
    rep.exceptions = std::move(cp.exceptions);
    rep.resumed = true;
  }
  if (start >= hi) {
    rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
  const unsigned seg_bits = std::clamp(policy.segment_bits, 7u, 36u);
  const std::uint64_t seg = std::uint64_t{1} << seg_bits;
  const auto base = small_primes(static_cast<std::uint32_t>(isqrt_u64(hi)));
  const std::uint64_t per_batch = std::max<std::uint64_t>(1, std::uint64_t{rep.workers} * 4);
  std::uint64_t since_checkpoint = 0;

  while (start < hi) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> segs;
    std::uint64_t cursor = start;
    while (cursor < hi && segs.size() < per_batch) {
      const std::uint64_t end = hi - cursor > seg ? cursor + seg : hi;
      segs.emplace_back(cursor, end);
      cursor = end;
    }
    std::vector<SegmentResult> results(segs.size());
    const auto count = static_cast<std::int64_t>(segs.size());
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(rep.workers)) if (rep.workers > 1)
    for (std::int64_t i = 0; i < count; ++i) {
      results[i] = kernel(segs[i].first, segs[i].second, std::span<const std::uint32_t>(base));
    }
    std::vector<ExceptionRecord> new_exc;
    std::vector<Witness> new_wit;
    for (auto& r : results) {
      rep.verified_count += r.verified;
      for (auto& e : r.exceptions) new_exc.push_back(std::move(e));
      for (auto& w : r.witnesses) new_wit.push_back(std::move(w));
    }
    if (sink) sink(new_exc, new_wit);
    rep.exceptions.insert(rep.exceptions.end(), new_exc.begin(), new_exc.end());
    if (policy.emit_witnesses) rep.witnesses.insert(rep.witnesses.end(), new_wit.begin(), new_wit.end());
    since_checkpoint += cursor - start;
    start = cursor;
    if (!policy.checkpoint_path.empty() && (since_checkpoint >= policy.checkpoint_every || start >= hi)) {
      write_checkpoint(policy.checkpoint_path,
                       Checkpoint{kind, form_name, expression, lo, hi, start, rep.verified_count, rep.exceptions});
      since_checkpoint = 0;
    }
  }
  rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

std::optional<Witness> find_witness(const Form& form, const BigInt& n, unsigned extra_rounds) {
  if (sgn(n) < 0) return std::nullopt;
  return search(detail::compile_form(form, n), n, extra_rounds);
}

ExceptionRecord confirm_exception(const Form& form, const BigInt& n, unsigned extra_rounds) {
  if (sgn(n) < 0) throw Error("confirm_exception needs n >= 0");
  return exhaust(detail::compile_form(form, n), n, extra_rounds);
}

VerifyReport verify_range(const Form& form, std::uint64_t lo, std::uint64_t hi, const RunPolicy& policy,
                          const BatchSink& sink) {
  check_verifiable(form);
  if (hi > (std::uint64_t{1} << 63)) throw Error("verify_range needs hi <= 2^63");
  if (lo >= hi) {
    VerifyReport rep;
    rep.form = form.name;
    rep.lo = lo;
    rep.hi = hi;
    return rep;
  }
  const CompiledForm cf = detail::compile_form(form, from_u64(hi - 1));
  if (!cf.fits64) throw Error("term contributions overflow 64 bits; use the single-value path");
  return drive("verify", form.name, print_form(form), lo, hi, policy, sink,
               [&](std::uint64_t a, std::uint64_t b, std::span<const std::uint32_t> base) {
                 return process_segment(cf, a, b, base, policy);
               });
}

VerifyReport verify_range_serial(const Form& form, std::uint64_t lo, std::uint64_t hi) {
  check_verifiable(form);
  VerifyReport rep;
  rep.form = form.name;
  rep.lo = lo;
  rep.hi = hi;
  for (std::uint64_t n = lo; n < hi; ++n) {
    const BigInt big = from_u64(n);
    if (!applicable(form, big)) continue;
    if (find_witness(form, big)) {
      ++rep.verified_count;
    } else {
      rep.exceptions.push_back(confirm_exception(form, big));
    }
  }
  return rep;
}

std::vector<std::uint64_t> crocker_scan(std::uint64_t bound, unsigned min_exponent, const RunPolicy& policy) {
  if (min_exponent > 1) throw Error("crocker_scan supports min_exponent 0 or 1");
  if (bound >= (std::uint64_t{1} << 63)) throw Error("crocker_scan needs bound < 2^63");
  const Form form = builtin_form(min_exponent == 0 ? "crocker0" : "crocker1");
  const VerifyReport rep = verify_range(form, 0, bound + 1, policy);
  std::vector<std::uint64_t> out;
  for (const auto& e : rep.exceptions) out.push_back(to_u64(e.n));
  return out;
}

VerifyReport goldbach_check(std::uint64_t lo, std::uint64_t hi, const RunPolicy& policy, const BatchSink& sink) {
  if (hi > (std::uint64_t{1} << 63)) throw Error("goldbach_check needs hi <= 2^63");
  lo = std::max<std::uint64_t>(lo, 4);
  if (lo >= hi) {
    VerifyReport rep;
    rep.form = "goldbach";
    rep.lo = lo;
    rep.hi = std::max(lo, hi);
    return rep;
  }
  static const std::vector<std::uint32_t> odd_small = small_primes(1u << 20);
  auto kernel = [&](std::uint64_t a, std::uint64_t b, std::span<const std::uint32_t> base) {
    SegmentResult out;
    const std::uint64_t slack = std::max<std::uint64_t>(b - a, 1u << 20);
    const std::uint64_t wlo = a > slack ? a - slack : 0;
    const SieveSegment window = sieve_range(wlo, b, base);
    auto is_prime = [&](std::uint64_t r) { return r >= wlo ? window.is_prime(r) : is_prime_64(r); };
    for (std::uint64_t n = a + (a & 1); n < b; n += 2) {
      std::uint64_t found = 0;
      if (is_prime(n - 2)) {
        found = 2;
      } else {
        for (const std::uint32_t p : odd_small) {
          if (p > n / 2) break;
          if (is_prime(n - p)) {
            found = p;
            break;
          }
        }
        if (found == 0 && odd_small.back() <= n / 2) {
          for (std::uint64_t p = odd_small.back() + 2; p <= n / 2; p += 2) {
            if (is_prime_64(p) && is_prime(n - p)) {
              found = p;
              break;
            }
          }
        }
      }
      if (found != 0) {
        ++out.verified;
        if (policy.emit_witnesses) {
          out.witnesses.push_back(Witness{from_u64(n), from_u64(found), {0}, {from_u64(n - found)}});
        }
      } else {
        ExceptionRecord rec;
        rec.form = "goldbach";
        rec.n = from_u64(n);
        out.exceptions.push_back(std::move(rec));
      }
    }
    return out;
  };
  return drive("goldbach", "goldbach", "goldbach", lo, hi, policy, sink, kernel);
}

}  // namespace mixsum
