#include "mixsum/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mixsum/counting.hpp"
#include "mixsum/forms.hpp"
#include "mixsum/number_expr.hpp"
#include "mixsum/primality.hpp"
#include "mixsum/sequences.hpp"
#include "mixsum/theorems.hpp"
#include "mixsum/verifier.hpp"

namespace mixsum::cli {

namespace {

using nlohmann::json;

struct Common {
  bool json_out = false;
  unsigned workers = 0;
  std::string checkpoint;
  bool resume = false;
  bool stable = false;
  unsigned extra_rounds = 0;
  unsigned segment_bits = 20;
  std::string checkpoint_every = "10^8";

  RunPolicy policy() const {
    RunPolicy p;
    p.workers = workers == 0 ? default_workers() : workers;
    p.segment_bits = segment_bits;
    p.extra_rounds = extra_rounds;
    p.checkpoint_path = checkpoint;
    p.checkpoint_every = parse_u64_expr(checkpoint_every);
    p.resume = resume;
    return p;
  }
};

std::string seq_label(const TermSpec& t) { return seq_name(t.seq); }

json witness_json(const Form& form, const Witness& w) {
  json j = {{"form", form.name}, {"n", to_string(w.n)}, {"status", "witness"}, {"p", to_string(w.p)}};
  json terms = json::array();
  for (std::size_t i = 0; i < w.term_indices.size(); ++i) {
    const std::string seq = i < form.terms.size() ? seq_label(form.terms[i]) : "prime";
    terms.push_back({{"seq", seq}, {"index", w.term_indices[i]}, {"value", to_string(w.term_values[i])}});
  }
  j["terms"] = terms;
  return j;
}

json exception_json(const ExceptionRecord& e) {
  return {{"form", e.form},
          {"n", to_string(e.n)},
          {"status", "exception"},
          {"candidates_checked", e.candidates_checked}};
}

json report_json(const VerifyReport& rep, bool stable) {
  json j = {{"record", "report"},
            {"form", rep.form},
            {"lo", rep.lo},
            {"hi", rep.hi},
            {"verified_count", rep.verified_count},
            {"exceptions", rep.exceptions.size()},
            {"policy", rep.policy}};
  if (!stable) {
    j["elapsed_s"] = rep.elapsed_s;
    j["workers"] = rep.workers;
    j["resumed"] = rep.resumed;
  }
  return j;
}

json count_json(const CountResult& c) {
  return {{"form", c.form}, {"n", to_string(c.n)}, {"r", c.r}, {"ln_n", c.ln_n}, {"s", c.s}, {"policy", c.policy}};
}

void emit_summary(const VerifyReport& rep, const Common& common, std::ostream& out, std::ostream& err) {
  if (common.json_out) {
    out << report_json(rep, common.stable).dump() << '\n';
  } else {
    err << rep.form << ": [" << rep.lo << ", " << rep.hi << ") verified " << rep.verified_count << ", exceptions "
        << rep.exceptions.size();
    if (!common.stable) err << ", " << std::fixed << std::setprecision(2) << rep.elapsed_s << " s";
    err << '\n';
  }
}

int run_verify_like(const Form& form, std::uint64_t lo, std::uint64_t hi, bool emit_witnesses, const Common& common,
                    std::ostream& out, std::ostream& err) {
  RunPolicy policy = common.policy();
  policy.emit_witnesses = emit_witnesses;
  auto sink = [&](const std::vector<ExceptionRecord>& exc, const std::vector<Witness>& wit) {
    // Exceptions and witnesses are emitted in ascending n.
    std::size_t i = 0, k = 0;
    while (i < exc.size() || k < wit.size()) {
      if (k == wit.size() || (i < exc.size() && exc[i].n < wit[k].n)) {
        out << exception_json(exc[i++]).dump() << '\n';
      } else {
        out << witness_json(form, wit[k++]).dump() << '\n';
      }
    }
    out.flush();
  };
  const VerifyReport rep = verify_range(form, lo, hi, policy, sink);
  emit_summary(rep, common, out, err);
  return rep.exceptions.empty() ? kExitOk : kExitExceptions;
}

std::string verdict_text(const Thm1Verdict& v) {
  std::ostringstream s;
  if (v.part == 1) {
    s << "part i m=" << v.m << " n=" << v.n << " d_n=" << to_string(v.value) << " k=" << v.k
      << " witness=" << to_string(v.divisor_witness) << (v.witness_divides ? " divides m*d_n" : " DOES NOT divide m*d_n")
      << " prime_power="
      << (v.prime_power == PrimePowerStatus::unchecked
              ? "unchecked"
              : (v.prime_power == PrimePowerStatus::prime_power ? "YES" : "no"))
      << (v.residue_ok ? "" : " residue-mismatch");
  } else {
    s << "part ii m=" << v.m << " n=" << v.n << " a=" << v.a << " b=" << v.b << " D=" << to_string(v.value)
      << " k=" << v.k << " d=" << to_string(v.divisor_witness)
      << (v.proper_divisor ? " proper divisor" : (v.witness_divides ? " divides but not proper" : " does not divide"))
      << (v.value_is_prime ? " D PRIME" : "");
    if (v.outside_claimed_range) s << " (outside claimed range n>=3)";
  }
  s << (v.consistent() ? " [ok]" : " [ANOMALY]");
  return s.str();
}

json verdict_json(const Thm1Verdict& v) {
  json j = {{"theorem", "p22"},
            {"part", v.part == 1 ? "i" : "ii"},
            {"m", v.m},
            {"n", v.n},
            {"value", to_string(v.value)},
            {"k", v.k},
            {"divisor_witness", to_string(v.divisor_witness)},
            {"witness_divides", v.witness_divides},
            {"consistent", v.consistent()}};
  if (v.part == 1) {
    j["prime_power"] = v.prime_power == PrimePowerStatus::unchecked
                           ? "unchecked"
                           : (v.prime_power == PrimePowerStatus::prime_power ? "yes" : "no");
    j["residue_ok"] = v.residue_ok;
  } else {
    j["a"] = v.a;
    j["b"] = v.b;
    j["proper_divisor"] = v.proper_divisor;
    j["value_is_prime"] = v.value_is_prime;
    j["outside_claimed_range"] = v.outside_claimed_range;
  }
  return j;
}

// scan-s progress: offsets below next_offset are done.
struct ScanCheckpoint {
  std::string form, base;
  std::int64_t from = 0, to = 0, stride = 1, next_offset = 0;
};

void write_scan_checkpoint(const std::string& path, const ScanCheckpoint& cp) {
  const json j = {{"kind", "scan-s"}, {"form", cp.form},     {"base", cp.base},
                  {"from", cp.from},  {"to", cp.to},         {"stride", cp.stride},
                  {"next_offset", cp.next_offset}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw Error("cannot write checkpoint " + tmp);
    f << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

ScanCheckpoint read_scan_checkpoint(const std::string& path) {
  std::ifstream f(path);
  json j;
  try {
    f >> j;
    if (j.at("kind") != "scan-s") throw Error("checkpoint " + path + " is not a scan-s checkpoint");
    return {j.at("form"), j.at("base"), j.at("from"), j.at("to"), j.at("stride"), j.at("next_offset")};
  } catch (const json::exception& ex) {
    throw Error("malformed checkpoint " + path + ": " + ex.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed sums of primes and recurrence terms: verification, counting and theorem checks", "mixsum"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json_out, "Machine-readable output");
  app.add_option("--workers", common.workers, "Worker threads (default: MIXSUM_WORKERS or OpenMP default)");
  app.add_option("--checkpoint", common.checkpoint, "Checkpoint file for long scans");
  app.add_option("--checkpoint-every", common.checkpoint_every, "Integers between checkpoint writes");
  app.add_flag("--resume", common.resume, "Continue from --checkpoint");
  app.add_flag("--stable-output", common.stable, "Omit timing and worker fields");
  app.add_option("--pp-extra-rounds", common.extra_rounds, "Extra random-base strong tests above 2^64");
  app.add_option("--segment-bits", common.segment_bits, "log2 of the integers per sieve segment");

  // verify
  auto* verify = app.add_subcommand("verify", "Classify every applicable n in [from, to]");
  std::string v_form, v_from = "0", v_to;
  bool v_witnesses = false;
  verify->add_option("--form,form", v_form, "Builtin form name or form expression")->required();
  verify->add_option("--from", v_from, "Lower bound (inclusive)");
  verify->add_option("--to", v_to, "Upper bound (inclusive)")->required();
  verify->add_flag("--emit-witnesses", v_witnesses, "Emit one JSONL record per witness");

  // confirm
  auto* confirm = app.add_subcommand("confirm", "Exhaustively confirm or refute one exception");
  std::string c_form, c_n;
  confirm->add_option("--form,form", c_form)->required();
  confirm->add_option("--n,n", c_n, "Target (number expression)")->required();

  // count
  auto* count = app.add_subcommand("count", "Exact representation count r(n) and s(n) = r(n)/ln n");
  std::string k_form, k_n;
  bool k_dump = false, k_strict = false;
  count->add_option("--form,form", k_form)->required();
  count->add_option("--n,n", k_n, "Target (number expression)")->required();
  count->add_flag("--dump-witnesses", k_dump, "Also emit every counted representation");
  count->add_flag("--strict-domain", k_strict, "Refuse n outside the form's domain");

  // scan-s
  auto* scan = app.add_subcommand("scan-s", "Window statistics s(base+offset) as CSV");
  std::string s_form, s_base;
  std::int64_t s_from = 0, s_to = 0, s_stride = 1;
  scan->add_option("--form,form", s_form)->required();
  scan->add_option("--base", s_base, "Base value (number expression)")->required();
  scan->add_option("--from", s_from, "First offset (inclusive)");
  scan->add_option("--to", s_to, "Last offset (inclusive)")->required();
  scan->add_option("--stride", s_stride, "Offset stride");

  // crocker
  auto* crocker = app.add_subcommand("crocker", "Odd n in (5, bound] not of the form p + 2^a + 2^b");
  std::string cr_bound;
  unsigned cr_min = 1;
  crocker->add_option("--bound,bound", cr_bound)->required();
  crocker->add_option("--min-exponent", cr_min, "Smallest allowed exponent (0 or 1)")->check(CLI::Range(0, 1));

  // goldbach
  auto* goldbach = app.add_subcommand("goldbach", "Goldbach check for even n in [from, to]");
  std::string g_from = "4", g_to;
  bool g_witnesses = false;
  goldbach->add_option("--from", g_from);
  goldbach->add_option("--to", g_to)->required();
  goldbach->add_flag("--emit-witnesses", g_witnesses);

  // theorem
  auto* theorem = app.add_subcommand("theorem", "Theorem checks");
  theorem->require_subcommand(1);
  auto* p22 = theorem->add_subcommand("p22", "(m^{2^n-1}-1)/(m-1) - m^n and (m^{2^n}-1)/(m-1) - m^a - m^b");
  std::string t_part = "i";
  unsigned long t_m = 2, t_n = 3, t_max_exp = 10;
  std::optional<unsigned long> t_a, t_b;
  bool t_allow_n2 = false;
  p22->add_option("--part", t_part)->check(CLI::IsMember({"i", "ii", "telescoping"}));
  p22->add_option("--m", t_m);
  p22->add_option("--n", t_n);
  p22->add_option("--a", t_a);
  p22->add_option("--b", t_b);
  p22->add_option("--max-exp", t_max_exp, "Part ii: check all a > b with a <= max-exp");
  p22->add_flag("--allow-n2", t_allow_n2, "Part ii: also accept n = 2 (reported, not asserted)");

  auto* uau = theorem->add_subcommand("uau", "Collisions among u_m + a*u_n");
  unsigned long u_a = 2;
  unsigned u_max = 30;
  uau->add_option("--a", u_a)->check(CLI::Range(2ul, 1000000ul));
  uau->add_option("--max-index", u_max);

  auto* coin = theorem->add_subcommand("coincidences", "Coincidences F_k + F_l = F_m + F_n");
  unsigned co_max = 20, co_min = 0;
  coin->add_option("--max-index", co_max);
  coin->add_option("--min-index", co_min);

  auto* pellcode = theorem->add_subcommand("pellcode", "Pell pair code P_m + 2 P_n");
  std::string pc_x;
  std::optional<unsigned> pc_m, pc_n;
  pellcode->add_option("--x", pc_x, "Decode this value");
  pellcode->add_option("--m", pc_m);
  pellcode->add_option("--n", pc_n);

  // seq dump
  auto* seq = app.add_subcommand("seq", "Sequence utilities");
  seq->require_subcommand(1);
  auto* dump = seq->add_subcommand("dump", "List sequence terms");
  std::string d_seq, d_bound;
  unsigned d_min = 0;
  std::optional<unsigned> d_count;
  dump->add_option("--seq,seq", d_seq, "F, L, P, Q, C, U, TRI, POW<m>")->required();
  dump->add_option("--bound", d_bound, "Largest value (number expression)");
  dump->add_option("--count", d_count, "Number of terms from index 0");
  dump->add_option("--min-index", d_min);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) {
      const Form form = resolve_form(v_form);
      const std::uint64_t lo = parse_u64_expr(v_from);
      const std::uint64_t hi = parse_u64_expr(v_to) + 1;
      return run_verify_like(form, lo, hi, v_witnesses, common, out, err);
    }
    if (*crocker) {
      const Form form = builtin_form(cr_min == 0 ? "crocker0" : "crocker1");
      return run_verify_like(form, 0, parse_u64_expr(cr_bound) + 1, false, common, out, err);
    }
    if (*goldbach) {
      RunPolicy policy = common.policy();
      policy.emit_witnesses = g_witnesses;
      Form pseudo;
      pseudo.name = "goldbach";
      auto sink = [&](const std::vector<ExceptionRecord>& exc, const std::vector<Witness>& wit) {
        for (const auto& e : exc) out << exception_json(e).dump() << '\n';
        for (const auto& w : wit) out << witness_json(pseudo, w).dump() << '\n';
      };
      const VerifyReport rep =
          goldbach_check(parse_u64_expr(g_from), parse_u64_expr(g_to) + 1, policy, sink);
      emit_summary(rep, common, out, err);
      return rep.exceptions.empty() ? kExitOk : kExitExceptions;
    }
    if (*confirm) {
      const Form form = resolve_form(c_form);
      const BigInt n = parse_number_expr(c_n);
      if (sgn(n) < 0) throw Error("target must be non-negative");
      if (!applicable(form, n)) err << "note: n is outside the domain of " << form.name << '\n';
      const ExceptionRecord rec = confirm_exception(form, n, common.extra_rounds);
      json j = rec.status == Status::exception ? exception_json(rec) : witness_json(form, *rec.witness);
      j["candidates_checked"] = rec.candidates_checked;
      out << j.dump() << '\n';
      return rec.status == Status::exception ? kExitExceptions : kExitOk;
    }
    if (*count) {
      const Form form = resolve_form(k_form);
      const BigInt n = parse_number_expr(k_n);
      if (sgn(n) < 0) throw Error("count target must be non-negative");
      CountPolicy policy;
      policy.workers = common.policy().workers;
      policy.extra_rounds = common.extra_rounds;
      policy.ignore_domain = !k_strict;
      const CountResult res = representation_count(form, n, policy);
      out << count_json(res).dump() << '\n';
      if (k_dump) {
        for (const auto& w : representation_witnesses(form, n, common.extra_rounds)) {
          out << witness_json(form, w).dump() << '\n';
        }
      }
      return kExitOk;
    }
    if (*scan) {
      const Form form = resolve_form(s_form);
      const BigInt base = parse_number_expr(s_base);
      if (s_stride <= 0 || s_to < s_from) throw Error("scan-s needs from <= to and stride > 0");
      std::int64_t start = s_from;
      if (common.resume && !common.checkpoint.empty() && std::filesystem::exists(common.checkpoint)) {
        const ScanCheckpoint cp = read_scan_checkpoint(common.checkpoint);
        if (cp.form != form.name || cp.base != to_string(base) || cp.from != s_from || cp.to != s_to ||
            cp.stride != s_stride) {
          throw Error("checkpoint " + common.checkpoint + " does not match this run");
        }
        start = cp.next_offset;
      } else if (!common.json_out) {
        out << "offset,r,ln_n,s\n";
      }
      CountPolicy policy;
      policy.workers = common.policy().workers;
      policy.extra_rounds = common.extra_rounds;
      const auto offsets = offset_range(start, s_to + 1, s_stride);
      std::optional<WindowRow> lo_row, hi_row;
      for (const std::int64_t off : offsets) {
        const std::int64_t one[1] = {off};
        const WindowStats ws = window_stats(form, base, one, policy);
        const CountResult& c = ws.rows[0].result;
        if (common.json_out) {
          json j = count_json(c);
          j["offset"] = off;
          out << j.dump() << '\n';
        } else {
          out << off << ',' << c.r << ',' << std::setprecision(15) << c.ln_n << ',' << c.s << '\n';
        }
        out.flush();
        if (!lo_row || c.s < lo_row->result.s) lo_row = ws.rows[0];
        if (!hi_row || c.s > hi_row->result.s) hi_row = ws.rows[0];
        if (!common.checkpoint.empty()) {
          write_scan_checkpoint(common.checkpoint,
                                {form.name, to_string(base), s_from, s_to, s_stride, off + s_stride});
        }
      }
      if (lo_row) {
        err << "min s=" << lo_row->result.s << " at offset " << lo_row->offset << "; max s=" << hi_row->result.s
            << " at offset " << hi_row->offset << '\n';
      }
      return kExitOk;
    }
    if (*theorem) {
      if (*p22) {
        std::vector<Thm1Verdict> verdicts;
        if (t_part == "telescoping") {
          const bool ok = telescoping_identity_check(t_m, t_n);
          if (common.json_out) {
            out << json{{"theorem", "p22"}, {"part", "telescoping"}, {"m", t_m}, {"n", t_n}, {"holds", ok}}.dump()
                << '\n';
          } else {
            out << "telescoping m=" << t_m << " n=" << t_n << (ok ? " holds" : " FAILS") << '\n';
          }
          return ok ? kExitOk : kExitExceptions;
        }
        if (t_part == "i") {
          verdicts.push_back(check_thm1_part_i(t_m, t_n));
        } else if (t_a && t_b) {
          verdicts.push_back(check_thm1_part_ii(t_m, t_n, *t_a, *t_b, t_allow_n2));
        } else {
          verdicts = check_thm1_part_ii_all(t_m, t_n, t_max_exp, t_allow_n2);
        }
        bool all_ok = true;
        for (const auto& v : verdicts) {
          all_ok &= v.consistent();
          if (common.json_out) {
            out << verdict_json(v).dump() << '\n';
          } else {
            out << verdict_text(v) << '\n';
          }
        }
        return all_ok ? kExitOk : kExitExceptions;
      }
      if (*uau) {
        const auto collisions = distinct_sums_check(u_a, u_max);
        bool unexpected = false;
        for (const auto& c : collisions) {
          unexpected |= !(c.a == 2 && c.x == 4);
          if (common.json_out) {
            json reps = json::array();
            for (const auto& [m, n] : c.representations) reps.push_back({m, n});
            out << json{{"theorem", "uau"}, {"a", c.a}, {"x", to_string(c.x)}, {"representations", reps}}.dump()
                << '\n';
          } else {
            out << "a=" << c.a << " x=" << to_string(c.x) << " =";
            for (const auto& [m, n] : c.representations) out << " u_" << m << "+a*u_" << n;
            out << '\n';
          }
        }
        if (!common.json_out) {
          out << collisions.size() << " collision(s) for a=" << u_a << " up to index " << u_max << '\n';
        }
        return unexpected ? kExitExceptions : kExitOk;
      }
      if (*coin) {
        for (const auto& c : fib_sum_coincidences(co_max, co_min)) {
          if (common.json_out) {
            json pairs = json::array();
            for (const auto& [k, l] : c.pairs) pairs.push_back({k, l});
            out << json{{"theorem", "coincidences"}, {"value", to_string(c.value)}, {"pairs", pairs}}.dump() << '\n';
          } else {
            out << to_string(c.value) << " =";
            for (const auto& [k, l] : c.pairs) out << " F" << k << "+F" << l;
            out << '\n';
          }
        }
        return kExitOk;
      }
      if (*pellcode) {
        if (pc_m && pc_n) {
          const BigInt code = pell_pair_encode(*pc_m, *pc_n);
          if (common.json_out) {
            out << json{{"m", *pc_m}, {"n", *pc_n}, {"code", to_string(code)}}.dump() << '\n';
          } else {
            out << to_string(code) << '\n';
          }
          return kExitOk;
        }
        if (pc_x.empty()) throw Error("pellcode needs --x or both --m and --n");
        const auto decoded = pell_pair_decode(parse_number_expr(pc_x));
        if (common.json_out) {
          json j = {{"x", to_string(parse_number_expr(pc_x))}};
          j["pair"] = decoded ? json{decoded->first, decoded->second} : json(nullptr);
          out << j.dump() << '\n';
        } else {
          out << (decoded ? std::to_string(decoded->first) + " " + std::to_string(decoded->second) : "none") << '\n';
        }
        return decoded ? kExitOk : kExitExceptions;
      }
    }
    if (*dump) {
      const SeqId id = parse_seq_id(d_seq);
      std::vector<Term> terms;
      if (d_count) {
        TermGenerator gen(id);
        for (unsigned i = 0; i < *d_count; ++i, gen.advance()) {
          if (gen.index() >= d_min) terms.push_back({gen.index(), gen.current()});
        }
      } else {
        if (d_bound.empty()) throw Error("seq dump needs --bound or --count");
        terms = terms_below(id, parse_number_expr(d_bound), d_min).entries();
      }
      for (const auto& t : terms) {
        if (common.json_out) {
          out << json{{"seq", seq_name(id)}, {"index", t.index}, {"value", to_string(t.value)}}.dump() << '\n';
        } else {
          out << t.index << ' ' << to_string(t.value) << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace mixsum::cli
