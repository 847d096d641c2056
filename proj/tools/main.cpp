#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zswlab/cache.hpp"
#include "zswlab/errors.hpp"
#include "zswlab/lemmas.hpp"
#include "zswlab/search.hpp"
#include "zswlab/serialize.hpp"
#include "zswlab/version.hpp"
#include "zswlab/witness.hpp"

namespace {

using namespace zswlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;        // bad flags, unsupported input
constexpr int kExitCap = 3;          // search hit its length cap
constexpr int kExitCheckpoint = 4;   // checkpoint file unusable
constexpr int kExitMismatch = 5;     // counterexample / invalid / mismatch

enum class Format { Text, Json, Csv };

// Cache entry and fresh recomputation disagree under --recheck.
struct CacheMismatch : Error {
  using Error::Error;
};

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw Error("unknown format: " + s);
}

ResidueSet parse_weight_spec(const std::string& spec, const Modulus& m) {
  if (spec == "qp") return quadratic_residues(m);
  if (spec == "np") return nonresidues(m);
  if (spec == "units") return units(m);
  if (spec == "ones") return ResidueSet::of(m.n(), {1});
  if (spec == "zero") return ResidueSet::of(m.n(), {0});
  std::vector<int> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw Error("weight spec is not a residue list: " + spec);
    }
    if (pos != item.size())
      throw Error("weight spec is not a residue list: " + spec);
    if (v < 0 || v >= m.n())
      throw Error("weight " + item + " outside [0, " +
                  std::to_string(m.n()) + ")");
    vals.push_back(v);
  }
  if (vals.empty()) throw Error("empty weight spec");
  return ResidueSet::from_values(m.n(), vals);
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw Error("bad integer list: " + spec);
    out.push_back(v);
  }
  if (out.empty()) throw Error("empty integer list: " + spec);
  return out;
}

std::string terms_text(const std::vector<int>& v, char sep = ',') {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// Desk-scale gate: which flags unlock a (kind, n) computation.
void check_scale(ConstantKind kind, int n, bool allow_long,
                 bool allow_very_long, bool has_checkpoint) {
  if (n <= 11) return;
  if (n <= 13) {
    if (kind == ConstantKind::C) {
      if (!allow_very_long)
        throw Error("kind C at n > 11 needs --allow-very-long");
      if (!has_checkpoint)
        throw Error("kind C at n > 11 needs --checkpoint PATH");
      return;
    }
    if (!allow_long)
      throw Error("kind D/E at n > 11 needs --allow-long");
    return;
  }
  throw Error("n > 13 is beyond desk scale; refusing");
}

struct CommonFlags {
  std::string format = "text";
  int jobs = 1;
  std::string cache_path;
  bool no_cache = false;
  bool recheck = false;
  bool allow_long = false;
  bool allow_very_long = false;
  std::string checkpoint;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_cache = true) {
  cmd->add_option("--format", f.format, "Output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--jobs", f.jobs, "Worker threads / search shards")
      ->check(CLI::Range(1, 64));
  if (with_cache) {
    cmd->add_option("--cache", f.cache_path,
                    "Result cache file (JSONL); default $ZSWLAB_CACHE");
    cmd->add_flag("--no-cache", f.no_cache, "Skip cache lookup and store");
    cmd->add_flag("--recheck", f.recheck,
                  "Recompute on cache hit and fail on any mismatch");
  }
  cmd->add_flag("--allow-long", f.allow_long,
                "Unlock D/E computations at n in {12, 13}");
  cmd->add_flag("--allow-very-long", f.allow_very_long,
                "Unlock C computations at n in {12, 13}");
}

struct ComputeOutcome {
  ConstantResult result;
  std::string source;  // "computed" or "cache"
};

// Cache-aware compute; throws on mismatch only when recheck demands it.
ComputeOutcome run_compute(ConstantKind kind, const Modulus& m,
                           const WeightPair& w, const CommonFlags& f,
                           int cap, const std::string& checkpoint) {
  const std::string path =
      f.no_cache ? "" : ResultCache::resolve_path(f.cache_path);
  std::optional<ConstantResult> cached;
  if (!path.empty()) cached = ResultCache(path).lookup(kind, m, w);

  if (cached && !f.recheck) return {std::move(*cached), "cache"};

  SearchConfig cfg;
  cfg.cap = cap;
  cfg.shards = f.jobs;
  cfg.checkpoint_path = checkpoint;
  ConstantResult fresh = compute_constant(kind, m, w, cfg);

  if (cached) {
    if (cached->value != fresh.value ||
        cached->witness.terms != fresh.witness.terms)
      throw CacheMismatch("cache entry disagrees with recomputation for kind " +
                  std::string(1, kind_char(kind)) + ", n=" +
                  std::to_string(m.n()));
    return {std::move(fresh), "cache+recheck"};
  }
  if (!path.empty()) ResultCache(path).store(fresh);
  return {std::move(fresh), "computed"};
}

void print_result(const ComputeOutcome& out, Format fmt) {
  const ConstantResult& r = out.result;
  switch (fmt) {
    case Format::Text:
      std::printf("kind %c  n=%d  A=%s  B=%s\n", kind_char(r.kind),
                  r.modulus.n(), r.a_set.to_string().c_str(),
                  r.b_set.to_string().c_str());
      std::printf("value = %d\n", r.value);
      std::printf("witness (length %d): (%s)\n", r.witness.length(),
                  terms_text(r.witness.terms).c_str());
      std::printf("nodes=%llu pruned=%llu wall=%.3fs source=%s\n",
                  (unsigned long long)r.stats.nodes_explored,
                  (unsigned long long)r.stats.orbits_pruned,
                  r.stats.wall_time_s, out.source.c_str());
      break;
    case Format::Json:
      std::printf("%s\n", result_to_json(r).c_str());
      break;
    case Format::Csv:
      std::printf("kind,n,value,witness,nodes_explored,orbits_pruned,"
                  "wall_time_s,source\n");
      std::printf("%c,%d,%d,%s,%llu,%llu,%.3f,%s\n", kind_char(r.kind),
                  r.modulus.n(), r.value,
                  terms_text(r.witness.terms, ' ').c_str(),
                  (unsigned long long)r.stats.nodes_explored,
                  (unsigned long long)r.stats.orbits_pruned,
                  r.stats.wall_time_s, out.source.c_str());
      break;
  }
}

// ---- compute ----------------------------------------------------------------

struct ComputeArgs {
  std::string kind;
  int prime = 0;
  int modulus = 0;
  std::string weights;
  std::string b_weights = "ones";
  int cap = 0;
  std::string emit_cert;
  CommonFlags common;
};

int cmd_compute(const ComputeArgs& a) {
  if ((a.prime == 0) == (a.modulus == 0))
    throw Error("exactly one of --prime or --modulus is required");
  const int n = a.prime ? a.prime : a.modulus;
  if (n < 2 || n > kMaxModulus)
    throw Error("modulus must lie in [2, 64]");
  Modulus m(n);
  if (a.prime && !m.is_odd_prime())
    throw Error("--prime requires an odd prime; use --modulus otherwise");
  ConstantKind kind = kind_from_char(a.kind.empty() ? '?' : a.kind[0]);
  WeightPair w{parse_weight_spec(a.weights, m),
               parse_weight_spec(a.b_weights, m)};
  check_scale(kind, n, a.common.allow_long, a.common.allow_very_long,
              !a.common.checkpoint.empty());

  ComputeOutcome out =
      run_compute(kind, m, w, a.common, a.cap, a.common.checkpoint);
  print_result(out, parse_format(a.common.format));

  if (!a.emit_cert.empty()) {
    std::vector<int> ext = out.result.witness.terms;
    ext.push_back(0);
    Sequence extended(m, std::move(ext));
    auto cert =
        find_zero_sum_subsequence(extended, w, mode_for(kind, m.n()));
    if (!cert)
      throw Error("internal: witness plus zero term found no certificate");
    std::ofstream of(a.emit_cert);
    if (!of) throw Error("cannot write " + a.emit_cert);
    of << bundle_to_json(extended, w, kind, *cert) << "\n";
    std::fprintf(stderr, "certificate bundle written to %s\n",
                 a.emit_cert.c_str());
  }
  return kExitOk;
}

// ---- table ------------------------------------------------------------------

struct TableArgs {
  std::string primes = "3,5,7,11";
  std::string kinds = "C,D,E";
  CommonFlags common;
};

struct TableRow {
  int p;
  char kind;
  int value;
  std::string expected;
  bool pass;
};

std::string expected_text(ConstantKind kind, int p) {
  switch (kind) {
    case ConstantKind::E:
      return std::to_string(p == 3 ? 5 : p == 5 ? 9 : p + 2);
    case ConstantKind::C:
      return std::to_string(p % 4 == 1 ? 6 : 9);
    case ConstantKind::D:
      return p % 4 == 3 ? "5" : "4 or 5";
  }
  return "?";
}

bool matches_expected(ConstantKind kind, int p, int value) {
  switch (kind) {
    case ConstantKind::E:
      return value == (p == 3 ? 5 : p == 5 ? 9 : p + 2);
    case ConstantKind::C:
      return value == (p % 4 == 1 ? 6 : 9);
    case ConstantKind::D:
      return p % 4 == 3 ? value == 5 : (value == 4 || value == 5);
  }
  return false;
}

int cmd_table(const TableArgs& a) {
  std::vector<int> primes = parse_int_list(a.primes);
  std::vector<ConstantKind> kinds;
  {
    std::stringstream ss(a.kinds);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.size() != 1) throw Error("bad kind: " + item);
      kinds.push_back(kind_from_char(item[0]));
    }
  }
  for (int p : primes) {
    if (p < 3 || p > kMaxModulus || !Modulus(p).is_odd_prime())
      throw Error("table needs odd primes, got " + std::to_string(p));
    for (ConstantKind k : kinds)
      check_scale(k, p, a.common.allow_long, a.common.allow_very_long,
                  !a.common.checkpoint.empty());
  }

  std::vector<TableRow> rows;
  for (int p : primes) {
    Modulus m(p);
    WeightPair w{quadratic_residues(m), ResidueSet::of(p, {1})};
    for (ConstantKind k : kinds) {
      std::string ckpt;
      if (!a.common.checkpoint.empty())
        ckpt = a.common.checkpoint + "." + kind_char(k) +
               std::to_string(p) + ".json";
      ComputeOutcome out = run_compute(k, m, w, a.common, 0, ckpt);
      rows.push_back(TableRow{p, kind_char(k), out.result.value,
                              expected_text(k, p),
                              matches_expected(k, p, out.result.value)});
    }
  }

  bool all_pass = true;
  for (const TableRow& r : rows) all_pass = all_pass && r.pass;

  switch (parse_format(a.common.format)) {
    case Format::Text:
      std::printf("%-5s %-5s %-7s %-9s %s\n", "p", "kind", "value",
                  "expected", "status");
      for (const TableRow& r : rows)
        std::printf("%-5d %-5c %-7d %-9s %s\n", r.p, r.kind, r.value,
                    r.expected.c_str(), r.pass ? "PASS" : "FAIL");
      break;
    case Format::Json: {
      json out{{"schema", "zswlab.table/1"}, {"rows", json::array()}};
      for (const TableRow& r : rows)
        out["rows"].push_back({{"p", r.p},
                               {"kind", std::string(1, r.kind)},
                               {"value", r.value},
                               {"expected", r.expected},
                               {"pass", r.pass}});
      std::printf("%s\n", out.dump().c_str());
      break;
    }
    case Format::Csv:
      std::printf("p,kind,value,expected,status\n");
      for (const TableRow& r : rows)
        std::printf("%d,%c,%d,\"%s\",%s\n", r.p, r.kind, r.value,
                    r.expected.c_str(), r.pass ? "PASS" : "FAIL");
      break;
  }
  return all_pass ? kExitOk : kExitMismatch;
}

// ---- verify-lemma -----------------------------------------------------------

struct VerifyArgs {
  std::string ids = "all";
  std::string primes;
  CommonFlags common;
};

int cmd_verify_lemma(const VerifyArgs& a) {
  std::vector<int> primes = parse_int_list(a.primes);
  for (int p : primes)
    if (p < 3 || p > kMaxModulus || !Modulus(p).is_odd_prime())
      throw Error("verify-lemma needs odd primes, got " + std::to_string(p));

  const bool all = a.ids == "all";
  std::vector<LemmaId> ids;
  if (!all) {
    std::stringstream ss(a.ids);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto id = lemma_from_name(item);
      if (!id) throw Error("unknown lemma id: " + item);
      ids.push_back(*id);
    }
    if (ids.empty()) throw Error("no lemma ids given");
  }

  std::vector<LemmaReport> reports;
  for (int p : primes) {
    Modulus m(p);
    if (all) {
      for (LemmaId id : all_lemmas())
        if (lemma_supports(id, m))
          reports.push_back(verify_lemma(id, m, a.common.jobs));
    } else {
      for (LemmaId id : ids)
        reports.push_back(verify_lemma(id, m, a.common.jobs));
    }
  }

  bool all_pass = true;
  for (const LemmaReport& r : reports) all_pass = all_pass && r.pass();

  switch (parse_format(a.common.format)) {
    case Format::Text:
      std::printf("%-10s %-5s %-12s %-6s %-8s %s\n", "lemma", "p",
                  "inputs", "pass", "time", "domain");
      for (const LemmaReport& r : reports) {
        std::printf("%-10s %-5d %-12llu %-6s %-8.2f %s\n",
                    lemma_name(r.lemma_id), r.prime.n(),
                    (unsigned long long)r.inputs_checked,
                    r.pass() ? "yes" : "NO", r.wall_time_s,
                    r.note.c_str());
        for (const std::string& c : r.counterexamples)
          std::printf("  counterexample: %s\n", c.c_str());
      }
      break;
    case Format::Json: {
      json out{{"schema", "zswlab.lemma_suite/1"},
               {"reports", json::array()}};
      for (const LemmaReport& r : reports)
        out["reports"].push_back(json::parse(lemma_report_to_json(r)));
      std::printf("%s\n", out.dump().c_str());
      break;
    }
    case Format::Csv:
      std::printf("lemma,p,inputs_checked,pass,wall_time_s\n");
      for (const LemmaReport& r : reports)
        std::printf("%s,%d,%llu,%s,%.3f\n", lemma_name(r.lemma_id),
                    r.prime.n(), (unsigned long long)r.inputs_checked,
                    r.pass() ? "true" : "false", r.wall_time_s);
      break;
  }
  return all_pass ? kExitOk : kExitMismatch;
}

// ---- check-certificate --------------------------------------------------------

int cmd_check_certificate(const std::string& path, const std::string& fmt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ParsedBundle bundle = bundle_from_json(buf.str());
  WeightPair w{bundle.a_set, bundle.b_set};
  std::string reason;
  const bool ok =
      check_certificate(bundle.sequence, w, bundle.certificate,
                        mode_for(bundle.kind, bundle.modulus.n()), &reason);
  if (parse_format(fmt) == Format::Json) {
    json out{{"schema", "zswlab.check/1"},
             {"file", path},
             {"valid", ok},
             {"reason", ok ? "" : reason}};
    std::printf("%s\n", out.dump().c_str());
  } else if (ok) {
    std::printf("certificate valid (%zu indices, kind %c, n=%d)\n",
                bundle.certificate.indices.size(), kind_char(bundle.kind),
                bundle.modulus.n());
  } else {
    std::printf("certificate INVALID: %s\n", reason.c_str());
  }
  return ok ? kExitOk : kExitMismatch;
}

// ---- open-question ------------------------------------------------------------

struct OpenArgs {
  int prime = 0;
  CommonFlags common;
};

int cmd_open_question(const OpenArgs& a) {
  const int p = a.prime;
  if (p % 4 != 1)
    throw Error("the question concerns primes with p = 1 mod 4; got " +
                std::to_string(p));
  if (p != 5 && p != 13 && p != 17)
    throw Error("supported primes: 5, 13, 17");
  if (p > 5 && !a.common.allow_long)
    throw Error("p = " + std::to_string(p) + " needs --allow-long");
  Modulus m(p);
  WeightPair w{quadratic_residues(m), ResidueSet::of(p, {1})};

  ComputeOutcome out = run_compute(ConstantKind::D, m, w, a.common, 0,
                                   a.common.checkpoint);
  const int value = out.result.value;
  const bool bracket_ok = value == 4 || value == 5;
  std::string conclusion =
      "D = " + std::to_string(value) +
      (value == 4 ? " (the smaller bracket end holds at this prime)"
                  : value == 5 ? " (the larger bracket end holds)"
                               : " (OUTSIDE the proved bracket {4,5})");

  if (parse_format(a.common.format) == Format::Json) {
    json j{{"schema", "zswlab.open_question/1"},
           {"p", p},
           {"value", value},
           {"witness", out.result.witness.terms},
           {"in_bracket", bracket_ok},
           {"conclusion", conclusion},
           {"source", out.source}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("D-constant for residue weights over Z_%d: %d\n", p, value);
    std::printf("longest bad sequence: (%s)\n",
                terms_text(out.result.witness.terms).c_str());
    std::printf("%s\n", conclusion.c_str());
  }
  return bracket_ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted zero-sum constants over Z_n: compute, verify, "
               "certify"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kSolverVersion));

  ComputeArgs ca;
  CLI::App* compute =
      app.add_subcommand("compute", "Compute one constant exactly");
  compute->add_option("--kind", ca.kind, "Constant kind: C, D, or E")
      ->required()
      ->check(CLI::IsMember({"C", "D", "E"}));
  compute->add_option("--prime", ca.prime, "Odd prime modulus");
  compute->add_option("--modulus", ca.modulus, "Any modulus in [2, 64]");
  compute->add_option("--weights", ca.weights,
                      "A-weights: qp, np, units, ones, zero, or a list")
      ->required();
  compute->add_option("--b-weights", ca.b_weights,
                      "B-weights (default ones)");
  compute->add_option("--cap", ca.cap,
                      "Length cap override (0 = provable default)");
  compute->add_option("--checkpoint", ca.common.checkpoint,
                      "Checkpoint file for interruptible C searches");
  compute->add_option("--emit-cert", ca.emit_cert,
                      "Write a certificate bundle for witness+(0) here");
  add_common(compute, ca.common);

  TableArgs ta;
  CLI::App* table = app.add_subcommand(
      "table", "Constants per prime with expected-value checks");
  table->add_option("--primes", ta.primes, "Comma list (default 3,5,7,11)");
  table->add_option("--kinds", ta.kinds, "Comma list (default C,D,E)");
  table->add_option("--checkpoint", ta.common.checkpoint,
                    "Checkpoint path prefix for gated C cells");
  add_common(table, ta.common);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify-lemma", "Exhaustively check statements at given primes");
  verify->add_option("--id", va.ids,
                     "Comma list of statement ids, or 'all' (supported "
                     "subset per prime)");
  verify->add_option("--prime", va.primes, "Comma list of odd primes")
      ->required();
  add_common(verify, va.common, /*with_cache=*/false);

  std::string cert_path;
  std::string cert_fmt = "text";
  CLI::App* check = app.add_subcommand(
      "check-certificate", "Validate a certificate bundle file");
  check->add_option("bundle", cert_path, "Bundle JSON path")->required();
  check->add_option("--format", cert_fmt, "Output format: text, json")
      ->check(CLI::IsMember({"text", "json"}));

  OpenArgs oa;
  CLI::App* open = app.add_subcommand(
      "open-question",
      "Decide whether the D-constant is 4 or 5 at a prime = 1 mod 4");
  open->add_option("--prime", oa.prime, "One of 5, 13, 17")->required();
  open->add_option("--checkpoint", oa.common.checkpoint, "Checkpoint file");
  add_common(open, oa.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(ca);
    if (table->parsed()) return cmd_table(ta);
    if (verify->parsed()) return cmd_verify_lemma(va);
    if (check->parsed()) return cmd_check_certificate(cert_path, cert_fmt);
    if (open->parsed()) return cmd_open_question(oa);
  } catch (const CheckpointCorrupt& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckpoint;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCap;
  } catch (const CacheMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMismatch;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
