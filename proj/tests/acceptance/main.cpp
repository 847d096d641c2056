// Acceptance gate: every release-blocking requirement as one PASS/FAIL
// line, stretch results marked "not gating".  Exit status is the number of
// gating failures.

#include <array>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracle.hpp"
#include "zswlab/engine.hpp"
#include "zswlab/errors.hpp"
#include "zswlab/lemmas.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"
#include "zswlab/sequence.hpp"
#include "zswlab/serialize.hpp"
#include "zswlab/witness.hpp"

using namespace zswlab;
using nlohmann::json;

namespace {

int g_gating_failures = 0;

void line(bool ok, bool gating, const std::string& text) {
  const char* tag = ok ? "PASS" : (gating ? "FAIL" : "FAIL (not gating)");
  std::printf("%s: %s\n", tag, text.c_str());
  if (!ok && gating) ++g_gating_failures;
}

void detail(const std::string& text) { std::printf("      %s\n", text.c_str()); }

void section(const char* title) { std::printf("\n== %s ==\n", title); }

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

WeightPair qp_one(int p) {
  Modulus m(p);
  return {quadratic_residues(m), ResidueSet::of(p, {1})};
}

WeightPair qp_zero(int p) {
  Modulus m(p);
  return {quadratic_residues(m), ResidueSet::of(p, {0})};
}

std::string terms_str(const std::vector<int>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

// Computes one constant and emits its PASS/FAIL line: exact value match,
// witness validated, inside the wall-clock budget.
std::optional<ConstantResult> check_constant(const std::string& label,
                                             ConstantKind kind, int n,
                                             const WeightPair& w, int expected,
                                             double budget_s, int shards = 1,
                                             bool gating = true) {
  Modulus m(n);
  SearchConfig cfg;
  cfg.shards = shards;
  Timer t;
  try {
    ConstantResult r = compute_constant(kind, m, w, cfg);
    const double dt = t.s();
    const bool witness_ok = validate_witness(r.witness, kind, w) &&
                            r.witness.length() == r.value - 1;
    const bool ok = r.value == expected && witness_ok && dt <= budget_s;
    line(ok, gating,
         fmt("%s = %d  [computed %d, witness %s, %llu nodes, %.2fs, budget %.0fs%s]",
             label.c_str(), expected, r.value,
             terms_str(r.witness.terms).c_str(),
             (unsigned long long)r.stats.nodes_explored, dt, budget_s,
             shards > 1 ? fmt(", %d shards", shards).c_str() : ""));
    return r;
  } catch (const std::exception& e) {
    line(false, gating, fmt("%s = %d  [threw: %s]", label.c_str(), expected,
                            e.what()));
    return std::nullopt;
  }
}

std::string temp_file(const char* stem) {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/zswlab-acceptance-XXXXXX";
    const char* d = mkdtemp(tmpl);
    return std::string(d ? d : "/tmp");
  }();
  return dir + "/" + stem;
}

// ---- 1. constant reproduction --------------------------------------------

std::optional<ConstantResult> g_e11;  // reused by the witness section

void constants() {
  section("1. constant reproduction");

  check_constant("E(Q_3, B={1})", ConstantKind::E, 3, qp_one(3), 5, 10);
  check_constant("E(Q_5, B={1})", ConstantKind::E, 5, qp_one(5), 9, 10);
  check_constant("E(Q_7, B={1})", ConstantKind::E, 7, qp_one(7), 9, 600);

  check_constant("C(Q_5, B={1})", ConstantKind::C, 5, qp_one(5), 6, 60);
  check_constant("C(Q_7, B={1})", ConstantKind::C, 7, qp_one(7), 9, 1800, 8);

  check_constant("D(Q_7, B={1})", ConstantKind::D, 7, qp_one(7), 5, 60);
  check_constant("D(Q_11, B={1})", ConstantKind::D, 11, qp_one(11), 5, 60);

  {
    Modulus m(5);
    WeightPair w{quadratic_residues(m), quadratic_residues(m)};
    check_constant("E(Q_5, B=Q_5)", ConstantKind::E, 5, w, 7, 10);
  }

  Timer cross;
  check_constant("E(Q_5, B={0})", ConstantKind::E, 5, qp_zero(5), 7, 60);
  check_constant("E(Q_7, B={0})", ConstantKind::E, 7, qp_zero(7), 9, 60);
  for (int p : {5, 7, 11}) {
    check_constant(fmt("C(Q_%d, B={0})", p), ConstantKind::C, p, qp_zero(p), 3,
                   60);
    check_constant(fmt("D(Q_%d, B={0})", p), ConstantKind::D, p, qp_zero(p), 3,
                   60);
  }
  detail(fmt("cross-check block took %.2fs of its shared 60s budget",
             cross.s()));

  // Stretch targets: larger searches, with a checkpoint kill/resume cycle.
  g_e11 = check_constant("stretch E(Q_11, B={1})", ConstantKind::E, 11,
                         qp_one(11), 13, 3600, 4, /*gating=*/false);

  try {
    Modulus m(13);
    WeightPair w = qp_one(13);
    SearchConfig cfg;
    cfg.shards = 2;
    cfg.checkpoint_path = temp_file("c13.json");
    Timer t;
    ConstantResult full = compute_constant(ConstantKind::C, m, w, cfg);

    // Simulate a crash after shard 0 by erasing shard 1 from the journal,
    // then resume and demand the identical outcome.
    {
      std::ifstream in(cfg.checkpoint_path);
      json j = json::parse(in);
      j["shards_done"].erase("1");
      std::ofstream out(cfg.checkpoint_path);
      out << j.dump();
    }
    ConstantResult resumed = compute_constant(ConstantKind::C, m, w, cfg);
    const bool same = resumed.value == full.value &&
                      resumed.witness.terms == full.witness.terms &&
                      resumed.stats.nodes_explored == full.stats.nodes_explored;
    line(full.value == 6 && same, false,
         fmt("stretch C(Q_13, B={1}) = 6 with checkpoint restart  "
             "[computed %d, resumed %d, %llu nodes both runs, %.2fs]",
             full.value, resumed.value,
             (unsigned long long)full.stats.nodes_explored, t.s()));
    std::remove(cfg.checkpoint_path.c_str());
  } catch (const std::exception& e) {
    line(false, false, fmt("stretch C(Q_13, B={1}) with restart  [threw: %s]",
                           e.what()));
  }
}

// ---- 2. bracket resolution ------------------------------------------------

void bracket() {
  section("2. bracket resolution for D(Q_p, B={1}), p = 1 mod 4");

  for (int p : {5, 13}) {
    try {
      Timer t;
      ConstantResult r =
          compute_constant(ConstantKind::D, Modulus(p), qp_one(p));
      const bool in_bracket = r.value == 4 || r.value == 5;
      line(in_bracket, true,
           fmt("D(Q_%d, B={1}) lies in {4,5}  [computed %d, %.2fs]", p,
               r.value, t.s()));
      if (in_bracket)
        detail(fmt("resolution at p=%d: the %s bracket end holds, witness %s",
                   p, r.value == 4 ? "smaller" : "larger",
                   terms_str(r.witness.terms).c_str()));
    } catch (const std::exception& e) {
      line(false, true, fmt("D(Q_%d, B={1}) lies in {4,5}  [threw: %s]", p,
                            e.what()));
    }
  }
}

// ---- 3. lemma matrix -------------------------------------------------------

void lemmas() {
  section("3. lemma verification matrix");

  struct Row {
    LemmaId id;
    std::vector<int> primes;
  };
  const std::vector<Row> matrix = {
      {LemmaId::CM, {7, 11, 13}},      {LemmaId::ZS, {7, 11, 13}},
      {LemmaId::NSS, {7, 11, 13}},     {LemmaId::THREE_Z, {7, 11, 13}},
      {LemmaId::NSPART, {11, 13, 17}}, {LemmaId::NS, {11, 13, 17}},
      {LemmaId::NS_PRIME, {7}},        {LemmaId::L2, {13, 17}},
      {LemmaId::LS, {13, 17}},         {LemmaId::NSC, {11, 13}},
      {LemmaId::EH, {5, 7, 11, 13}},   {LemmaId::CD, {5, 7, 11, 13}},
      {LemmaId::Q51, {5}},             {LemmaId::QP1, {7, 11}},
      {LemmaId::QP2, {7, 11}}};

  Timer suite;
  for (const Row& row : matrix) {
    bool all_ok = true;
    std::string note;
    for (int p : row.primes) {
      try {
        LemmaReport r = verify_lemma(row.id, Modulus(p), 4);
        if (!r.pass()) {
          all_ok = false;
          for (const std::string& cx : r.counterexamples)
            note += fmt(" p=%d counterexample: %s;", p, cx.c_str());
        }
        note += fmt(" p=%d: %llu inputs, %.2fs;", p,
                    (unsigned long long)r.inputs_checked, r.wall_time_s);
      } catch (const std::exception& e) {
        all_ok = false;
        note += fmt(" p=%d threw: %s;", p, e.what());
      }
    }
    line(all_ok, true, fmt("lemma %s clean", lemma_name(row.id)));
    detail(note.substr(1, note.size() - 2));
  }
  const double dt = suite.s();
  line(dt <= 900, true,
       fmt("full lemma matrix within its 15 min budget  [%.2fs]", dt));
}

// ---- 4. property suites ----------------------------------------------------

void properties() {
  section("4. property suites");

  // Engine versus direct enumeration, every sequence of length <= 6, all
  // three modes.  The sweep also rechecks every certificate the engine
  // returns, which is the soundness half of the round-trip.
  {
    Timer t;
    uint64_t inspected = 0, mismatches = 0;
    for (int p : {5, 7}) {
      Modulus m(p);
      const WeightPair configs[] = {
          qp_one(p), qp_zero(p),
          {ResidueSet::of(p, {1, p - 1}), ResidueSet::of(p, {1})}};
      for (const WeightPair& w : configs)
        mismatches += oracle::equivalence_sweep(m, w, 6, &inspected);
    }
    line(mismatches == 0, true,
         fmt("engine matches direct enumeration, lengths 1..6 over Z_5 and "
             "Z_7, three modes, three weight configs each  [%llu sequences, "
             "%llu mismatches, %.1fs]",
             (unsigned long long)inspected, (unsigned long long)mismatches,
             t.s()));
  }

  // Serialization round-trip for certificates on top of the soundness the
  // sweep already checked.
  {
    Modulus m(7);
    WeightPair w = qp_one(7);
    uint64_t trips = 0, bad = 0;
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b)
        for (int c = 0; c < 7; ++c) {
          Sequence s(m, {a, b, c});
          auto cert = find_zero_sum_subsequence(s, w, SubseqMode::any_nonempty());
          if (!cert) continue;
          ++trips;
          int n = 0;
          Certificate back =
              certificate_from_json(certificate_to_json(*cert, 7), &n);
          std::string reason;
          if (!(back == *cert) || n != 7 ||
              !check_certificate(s, w, back, SubseqMode::any_nonempty(),
                                 &reason))
            ++bad;
        }
    line(bad == 0 && trips > 0, true,
         fmt("certificates survive a JSON round-trip and still check  "
             "[%llu certificates, %llu failures]",
             (unsigned long long)trips, (unsigned long long)bad));
  }

  // Translation invariance (sound for B = {1}) and unit-scaling invariance
  // on random sequences.
  {
    Timer t;
    std::mt19937_64 rng(20260816);
    uint64_t violations = 0, cases = 0;
    for (int p : {5, 7, 11, 13}) {
      Modulus m(p);
      WeightPair w = qp_one(p);
      std::vector<int> us = units(m).values();
      for (int i = 0; i < 10000; ++i) {
        const int len = 1 + int(rng() % uint64_t(2 * p - 1));
        std::vector<int> terms(len);
        for (int& x : terms) x = int(rng() % uint64_t(p));
        Sequence s(m, terms);
        const ConstantKind kind =
            std::array{ConstantKind::C, ConstantKind::D,
                       ConstantKind::E}[rng() % 3];
        const bool base = is_good(s, kind, w);
        const int u = us[rng() % us.size()];
        const int shift = int(rng() % uint64_t(p));
        if (is_good(dilate(s, u), kind, w) != base) ++violations;
        if (is_good(translate(s, shift), kind, w) != base) ++violations;
        ++cases;
      }
    }
    line(violations == 0, true,
         fmt("goodness invariant under unit scaling and translation, 10^4 "
             "random cases per p in {5,7,11,13}  [%llu cases, %llu "
             "violations, %.1fs]",
             (unsigned long long)cases, (unsigned long long)violations,
             t.s()));
  }

  // Orbit pruning must not change any computed value.
  {
    bool ok = true;
    std::string note;
    for (int n : {3, 5}) {
      Modulus m(n);
      std::vector<WeightPair> configs = {
          {quadratic_residues(m), ResidueSet::of(n, {1})},
          {units(m), ResidueSet::of(n, {1})},
          {quadratic_residues(m), ResidueSet::of(n, {0})}};
      for (const WeightPair& w : configs)
        for (ConstantKind kind :
             {ConstantKind::C, ConstantKind::D, ConstantKind::E}) {
          SearchConfig off;
          off.use_scaling_symmetry = false;
          off.use_translation_symmetry = false;
          const int with_sym = compute_constant(kind, m, w, {}).value;
          const int without = compute_constant(kind, m, w, off).value;
          if (with_sym != without) {
            ok = false;
            note += fmt(" %c at n=%d: %d vs %d;", kind_char(kind), n, with_sym,
                        without);
          }
        }
    }
    line(ok, true,
         fmt("symmetry pruning on/off give equal constants at n in {3,5}%s",
             note.c_str()));
  }

  // Shard-count determinism: identical value, witness, and node counts.
  {
    bool ok = true;
    std::string note;
    const struct {
      ConstantKind kind;
      int p;
    } cases[] = {{ConstantKind::D, 7}, {ConstantKind::C, 7},
                 {ConstantKind::E, 5}};
    for (const auto& c : cases) {
      Modulus m(c.p);
      WeightPair w = qp_one(c.p);
      std::optional<ConstantResult> base;
      for (int shards : {1, 2, 8}) {
        SearchConfig cfg;
        cfg.shards = shards;
        ConstantResult r = compute_constant(c.kind, m, w, cfg);
        if (!base) {
          base = r;
          continue;
        }
        if (r.value != base->value ||
            r.witness.terms != base->witness.terms ||
            r.stats.nodes_explored != base->stats.nodes_explored ||
            r.stats.orbits_pruned != base->stats.orbits_pruned) {
          ok = false;
          note += fmt(" %c(Q_%d) diverges at %d shards;", kind_char(c.kind),
                      c.p, shards);
        }
      }
    }
    line(ok, true,
         fmt("results identical under shard counts {1,2,8} for D(Q_7), "
             "C(Q_7), E(Q_5)%s",
             note.c_str()));
  }
}

// ---- 5. witness validation -------------------------------------------------

void witnesses() {
  section("5. lower-bound witnesses");

  // Every claim the forge produces must survive the independent recheck.
  {
    bool ok = true;
    std::string note;
    auto recheck = [&](const char* label, const LowerBoundClaim& c) {
      bool holds = false;
      uint64_t checked = recheck_claim(c, &holds);
      if (!holds) {
        ok = false;
        note += fmt(" %s failed recheck;", label);
      }
      note += fmt(" %s: bound %d, %llu index sets;", label, c.bound,
                  (unsigned long long)checked);
    };
    try {
      for (int p : {5, 7, 11, 13}) {
        Modulus m(p);
        recheck(fmt("C@%d", p).c_str(), c_lower_witness(m));
        recheck(fmt("D@%d", p).c_str(), d_lower_witness(m));
      }
      for (int p : {5, 7, 11})
        recheck(fmt("E@%d", p).c_str(),
                e_lower_witness(Modulus(p), qp_one(p)));
    } catch (const std::exception& e) {
      ok = false;
      note += fmt(" threw: %s", e.what());
    }
    line(ok, true, "every witness claim validates under independent recheck");
    detail(note.substr(1));
  }

  // Where an exact value is on record, the constructed witness must meet
  // the computed constant exactly; the D bound at p=5 is one short of
  // exact, so only <= is demanded there.
  {
    bool ok = true;
    std::string note;
    auto compare = [&](const char* label, const LowerBoundClaim& c,
                       int computed, bool exact) {
      const bool good = exact ? c.bound == computed : c.bound <= computed;
      if (!good) ok = false;
      note += fmt(" %s: witness bound %d, computed %d%s;", label, c.bound,
                  computed, exact ? "" : " (bound-only)");
    };
    try {
      for (int p : {5, 7, 11}) {
        Modulus m(p);
        WeightPair w = qp_one(p);
        compare(fmt("C@%d", p).c_str(), c_lower_witness(m),
                compute_constant(ConstantKind::C, m, w).value, true);
        compare(fmt("D@%d", p).c_str(), d_lower_witness(m),
                compute_constant(ConstantKind::D, m, w).value, p != 5);
        const int e_value =
            (p == 11 && g_e11) ? g_e11->value
                               : compute_constant(ConstantKind::E, m, w).value;
        compare(fmt("E@%d", p).c_str(), e_lower_witness(m, w), e_value, true);
      }
    } catch (const std::exception& e) {
      ok = false;
      note += fmt(" threw: %s", e.what());
    }
    line(ok, true,
         "witness bounds meet the computed constants exactly where equality "
         "is on record, p in {5,7,11}");
    detail(note.substr(1));
  }
}

}  // namespace

int main() {
  std::printf("zswlab acceptance gate\n");
  Timer total;

  constants();
  bracket();
  lemmas();
  properties();
  witnesses();

  std::printf("\n%s: %d gating failure%s, %.1fs total\n",
              g_gating_failures == 0 ? "ACCEPTED" : "REJECTED",
              g_gating_failures, g_gating_failures == 1 ? "" : "s", total.s());
  return g_gating_failures == 0 ? 0 : 1;
}
