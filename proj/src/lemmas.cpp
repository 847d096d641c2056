#include "zswlab/lemmas.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cctype>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "zswlab/errors.hpp"
#include "zswlab/pair_table.hpp"

namespace zswlab {

namespace {

WeightPair qp_one(const Modulus& m) {
  return WeightPair{quadratic_residues(m), ResidueSet::of(m.n(), {1})};
}

std::string terms_str(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

int count_nonzero(const std::vector<int>& v) {
  return int(std::count_if(v.begin(), v.end(), [](int x) { return x != 0; }));
}

// Reachable (weighted sum, weight sum) pairs using every term once.
PairTable cover_table(const Modulus& m, const WeightPair& w,
                      const std::vector<int>& terms) {
  PairTable cur = PairTable::origin(m.n());
  for (int x : terms) {
    PairTable next = PairTable::empty_table(m.n());
    advance_into(cur, step_set(x, m, w), next);
    cur = next;
  }
  return cur;
}

bool exists_zero_sum_any_trace(const Modulus& m, const std::vector<int>& terms) {
  return cover_table(m, qp_one(m), terms).row[0] != 0;
}

bool exists_zero_sum_nonzero_trace(const Modulus& m,
                                   const std::vector<int>& terms) {
  return (cover_table(m, qp_one(m), terms).row[0] & ~uint64_t{1}) != 0;
}

// Nondecreasing extensions of buf over [start, n), length `left` more terms.
template <class Fn>
void extend_multiset(int n, int start, int left, std::vector<int>& buf,
                     const Fn& fn) {
  if (left == 0) {
    fn(buf);
    return;
  }
  for (int v = start; v < n; ++v) {
    buf.push_back(v);
    extend_multiset(n, v, left - 1, buf, fn);
    buf.pop_back();
  }
}

// Shared core of the sequence-plus-pair solvers: a target z reachable from
// the sequence's dilated residue sets, the least coefficients hitting it,
// and their trace.  `needed` = Coset::Zero accepts any unit target; a coset
// value confines z there (p = 7 needs z in the coset of the pair so that
// the normalized -z lands in the restricted sumset).
struct SeqComboCore {
  int z = 0;
  std::vector<int> coefficients;
  int trace = 0;
};

SeqComboCore seq_combo_core(const Modulus& m, const std::vector<int>& terms,
                            Coset needed) {
  const ResidueSet q = quadratic_residues(m);
  const int k = int(terms.size());
  std::vector<ResidueSet> fwd;
  fwd.reserve(k + 1);
  fwd.push_back(ResidueSet::of(m.n(), {0}));
  for (int x : terms)
    fwd.push_back(x == 0 ? fwd.back() : sumset(fwd.back(), dilate(q, x)));

  SeqComboCore core;
  core.z = -1;
  for (int v = 1; v < m.n(); ++v) {
    if (!fwd[k].contains(v)) continue;
    if (needed != Coset::Zero && coset_of(v, m) != needed) continue;
    core.z = v;
    break;
  }
  if (core.z < 0) throw NoSolution("no admissible target in the reach set");

  std::vector<ResidueSet> back(k + 1, ResidueSet::of(m.n(), {core.z}));
  for (int i = k; i >= 1; --i) {
    int x = terms[i - 1];
    back[i - 1] =
        x == 0 ? back[i] : sumset(back[i], dilate(q, m.neg(x)));
  }
  assert(back[0].contains(0));

  int cur = 0;
  long long trace = 0;
  for (int i = 0; i < k; ++i) {
    int x = terms[i];
    if (x == 0) {
      core.coefficients.push_back(1);
      trace += 1;
      continue;
    }
    int chosen = -1;
    for (int c : q.values()) {
      if (back[i + 1].contains(m.add(cur, m.mul(c, x)))) {
        chosen = c;
        break;
      }
    }
    assert(chosen >= 0);
    core.coefficients.push_back(chosen);
    cur = m.add(cur, m.mul(chosen, x));
    trace += chosen;
  }
  assert(cur == core.z);
  core.trace = m.reduce(trace);
  return core;
}

// Combo over (terms..., x, xp) with weighted sum 0 and nonzero trace.
WeightedCombo seq_pair_combo(const Modulus& m, const std::vector<int>& terms,
                             int x, int xp) {
  const int nz = count_nonzero(terms);
  const bool p7 = m.n() == 7;
  if (m.n() < 7 || (p7 ? nz < 2 : (m.n() < 11 || nz < 1)))
    throw HypothesisUnmet("sequence-plus-pair combo needs p = 7 with two "
                          "nonzero terms or p >= 11 with one");
  SeqComboCore core =
      seq_combo_core(m, terms, p7 ? coset_of(x, m) : Coset::Zero);
  auto [c, cp] =
      solve_pair_avoiding_trace(x, xp, m.neg(core.z), m.neg(core.trace), m);
  std::vector<int> coeff = core.coefficients;
  coeff.push_back(c);
  coeff.push_back(cp);
  std::vector<int> full = terms;
  full.push_back(x);
  full.push_back(xp);
  WeightedCombo combo = make_combo(m, full, std::move(coeff));
  assert(combo.value == 0 && combo.trace != 0);
  return combo;
}

// Combo over a distinct nonzero triple with weighted sum 0, nonzero trace:
// route the lone element through seq_pair_combo on a same-coset pair.
WeightedCombo distinct_triple_combo(const Modulus& m, int x1, int x2, int x3) {
  const std::array<int, 3> xs{x1, x2, x3};
  static constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : kPairs) {
    int i = pr[0], j = pr[1], k = 3 - i - j;
    if (xs[i] == xs[j]) continue;
    if (coset_of(xs[i], m) != coset_of(xs[j], m)) continue;
    WeightedCombo sub = seq_pair_combo(m, {xs[k]}, xs[i], xs[j]);
    std::vector<int> coeff(3);
    coeff[k] = sub.coefficients[0];
    coeff[i] = sub.coefficients[1];
    coeff[j] = sub.coefficients[2];
    return make_combo(m, {x1, x2, x3}, std::move(coeff));
  }
  throw HypothesisUnmet("no distinct same-coset pair in the triple");
}

// (a, b) in residue-set^2 with a*x + b*y = 0; needs -1 a residue and x, y
// nonzero in the same coset.
std::pair<int, int> residue_pair_killing_sum(const Modulus& m, int x, int y) {
  const ResidueSet q = quadratic_residues(m);
  int c = 1;
  if (!q.contains(m.reduce(x))) c = nonresidues(m).values().front();
  int a = m.inv(m.mul(c, x));
  int b = m.neg(m.inv(m.mul(c, y)));
  assert(q.contains(a) && q.contains(b));
  return {a, b};
}

// ---- verify plumbing --------------------------------------------------------

struct BadHit {
  uint64_t outer = 0;
  uint64_t inner = 0;
  std::string msg;
};

struct ChunkAcc {
  uint64_t checked = 0;
  uint64_t bad_total = 0;
  std::vector<BadHit> bad;
  uint64_t outer = 0;
  uint64_t inner = 0;

  void instance() {
    ++checked;
    ++inner;
  }
  void flag(const std::string& msg) {
    ++bad_total;
    if (bad.size() < 16) bad.push_back({outer, inner, msg});
  }
};

struct Domain {
  uint64_t outer_count = 0;
  std::function<void(uint64_t, ChunkAcc&)> per_outer;
  std::string note;
};

LemmaReport run_domain(LemmaId id, const Modulus& p, int jobs,
                       const Domain& dom) {
  const auto start = std::chrono::steady_clock::now();
  jobs = std::max(1, std::min(jobs, 64));
  std::vector<ChunkAcc> accs(jobs);
  auto work = [&](int w) {
    ChunkAcc& acc = accs[w];
    for (uint64_t o = uint64_t(w); o < dom.outer_count; o += uint64_t(jobs)) {
      acc.outer = o;
      acc.inner = 0;
      dom.per_outer(o, acc);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (int w = 0; w < jobs; ++w) ts.emplace_back(work, w);
    for (auto& t : ts) t.join();
  }

  LemmaReport rep{id, p, 0, {}, 0.0, dom.note};
  uint64_t bad_total = 0;
  std::vector<BadHit> bad;
  for (auto& a : accs) {
    rep.inputs_checked += a.checked;
    bad_total += a.bad_total;
    bad.insert(bad.end(), a.bad.begin(), a.bad.end());
  }
  std::sort(bad.begin(), bad.end(), [](const BadHit& l, const BadHit& r) {
    return std::tie(l.outer, l.inner) < std::tie(r.outer, r.inner);
  });
  for (size_t i = 0; i < bad.size() && i < 8; ++i)
    rep.counterexamples.push_back(bad[i].msg);
  if (bad_total > rep.counterexamples.size())
    rep.counterexamples.push_back(
        "... " + std::to_string(bad_total) + " counterexamples in total");
  rep.wall_time_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return rep;
}

// Outer index = (size - min_size) * span + (first - lo); enumerates
// nondecreasing tuples of exactly `size` terms starting at `first`.
struct MultisetOuter {
  int n, lo, min_size, max_size;
  uint64_t count() const {
    return uint64_t(max_size - min_size + 1) * uint64_t(n - lo);
  }
  template <class Fn>
  void run(uint64_t outer, const Fn& fn) const {
    int size = min_size + int(outer / uint64_t(n - lo));
    int first = lo + int(outer % uint64_t(n - lo));
    std::vector<int> buf{first};
    extend_multiset(n, first, size - 1, buf, fn);
  }
};

int seq_cap(const Modulus& m) { return std::min(m.n() - 1, 8); }

// ---- per-lemma verifiers ----------------------------------------------------

Domain domain_cm(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n() - 1);
  d.note = "all unit triples x all targets";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    int x1 = int(outer) + 1;
    for (int x2 = 1; x2 < m.n(); ++x2)
      for (int x3 = 1; x3 < m.n(); ++x3)
        for (int t = 0; t < m.n(); ++t) {
          acc.instance();
          auto [c1, c2, c3] = solve_three_cover(x1, x2, x3, t, m);
          long long s = (long long)c1 * x1 + (long long)c2 * x2 +
                        (long long)c3 * x3;
          if (!q.contains(c1) || !q.contains(c2) || !q.contains(c3) ||
              m.reduce(s) != t)
            acc.flag("cover miss at (" + std::to_string(x1) + "," +
                     std::to_string(x2) + "," + std::to_string(x3) +
                     ") target " + std::to_string(t));
        }
  };
  return d;
}

Domain domain_zs(const Modulus& m) {
  Domain d;
  MultisetOuter mo{m.n(), 1, 3, seq_cap(m)};
  d.outer_count = mo.count();
  d.note = "nonzero multisets, sizes 3.." + std::to_string(mo.max_size);
  d.per_outer = [m, mo](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    mo.run(outer, [&](const std::vector<int>& s) {
      acc.instance();
      WeightedCombo combo = qp_zero_sum_combo(Sequence(m, s));
      bool ok = combo.value == 0 &&
                combo.coefficients.size() == s.size() &&
                exists_zero_sum_any_trace(m, s);
      for (int c : combo.coefficients) ok = ok && q.contains(c);
      if (!ok) acc.flag("zero-sum combo failed for " + terms_str(s));
    });
  };
  return d;
}

Domain domain_nss(const Modulus& m) {
  Domain d;
  MultisetOuter mo{m.n(), 0, 1, 5};
  d.outer_count = mo.count();
  d.note = "all multisets, sizes 1..5; certificate demanded exactly when a "
           "zero-sum nonzero-trace combo exists";
  d.per_outer = [m, mo](uint64_t outer, ChunkAcc& acc) {
    mo.run(outer, [&](const std::vector<int>& s) {
      acc.instance();
      bool possible = exists_zero_sum_nonzero_trace(m, s);
      std::vector<int> ext = s;
      ext.push_back(0);
      ext.push_back(0);
      Sequence extended(m, ext);
      try {
        Certificate cert = extend_with_zeros(Sequence(m, s), 2);
        std::string why;
        if (!possible)
          acc.flag("combo reported impossible yet produced for " +
                   terms_str(s));
        else if (!check_certificate(extended, qp_one(m), cert,
                                    SubseqMode::any_nonempty(), &why))
          acc.flag("certificate invalid for " + terms_str(s) + ": " + why);
      } catch (const HypothesisUnmet&) {
        if (possible)
          acc.flag("combo exists but construction failed for " +
                   terms_str(s));
      }
    });
  };
  return d;
}

Domain domain_three_z(const Modulus& m) {
  Domain d;
  MultisetOuter mo{m.n(), 0, 3, 6};
  d.outer_count = mo.count();
  d.note = "multisets with >= 3 nonzero terms, sizes 3..6";
  d.per_outer = [m, mo](uint64_t outer, ChunkAcc& acc) {
    mo.run(outer, [&](const std::vector<int>& s) {
      if (count_nonzero(s) < 3) return;
      acc.instance();
      std::vector<int> ext = s;
      ext.insert(ext.end(), {0, 0, 0});
      Sequence extended(m, ext);
      std::string why;
      bool ok = false;
      try {
        Certificate cert = extend_with_zeros(Sequence(m, s), 3);
        ok = check_certificate(extended, qp_one(m), cert,
                               SubseqMode::any_nonempty(), &why) &&
             is_ab_zero_sum(extended, qp_one(m)).has_value();
      } catch (const Error& e) {
        why = e.what();
      }
      if (!ok)
        acc.flag("three-zero extension failed for " + terms_str(s) + ": " +
                 why);
    });
  };
  return d;
}

Domain domain_eh(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(1) << m.n();
  d.note = "all subsets with >= 2 elements";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    if (std::popcount(outer) < 2) return;
    acc.instance();
    ResidueSet x{m.n(), outer};
    ResidueSet rs = restricted_sumset(x);
    if (rs.bits != m.full_mask() && rs.size() < 2 * x.size() - 3)
      acc.flag("restricted sumset bound fails for " + x.to_string());
  };
  return d;
}

Domain domain_cd(const Modulus& m) {
  Domain d;
  const uint64_t full = (m.n() == 64) ? ~uint64_t{0}
                                      : ((uint64_t{1} << m.n()) - 1);
  if (m.n() <= 11) {
    d.outer_count = full;  // nonempty X masks, 1..full
    d.note = "exhaustive over all nonempty set pairs";
    d.per_outer = [m, full](uint64_t outer, ChunkAcc& acc) {
      ResidueSet x{m.n(), outer + 1};
      for (uint64_t ym = 1; ym <= full; ++ym) {
        acc.instance();
        ResidueSet y{m.n(), ym};
        int bound = std::min(m.n(), x.size() + y.size() - 1);
        if (sumset(x, y).size() < bound)
          acc.flag("sumset bound fails for " + x.to_string() + " + " +
                   y.to_string());
      }
    };
  } else {
    const uint64_t samples = 200000;
    d.outer_count = samples;
    d.note = "random set pairs, " + std::to_string(samples) +
             " samples, seed 0x5eed";
    d.per_outer = [m, full](uint64_t outer, ChunkAcc& acc) {
      std::mt19937_64 rng(0x5eedull ^ (outer * 0x9e3779b97f4a7c15ull));
      uint64_t xm = 0, ym = 0;
      while (xm == 0) xm = rng() & full;
      while (ym == 0) ym = rng() & full;
      acc.instance();
      ResidueSet x{m.n(), xm}, y{m.n(), ym};
      int bound = std::min(m.n(), x.size() + y.size() - 1);
      if (sumset(x, y).size() < bound)
        acc.flag("sumset bound fails for " + x.to_string() + " + " +
                 y.to_string());
    };
  }
  return d;
}

Domain domain_nspart(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n());
  d.note = "all traces x restricted-sum targets x ordered distinct "
           "residue pairs";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    const int t = int(outer);
    for (int z : restricted_sumset(q).values())
      for (int x : q.values())
        for (int xp : q.values()) {
          if (x == xp) continue;
          acc.instance();
          bool ok = false;
          try {
            auto [c, cp] = solve_pair_avoiding_trace(x, xp, z, t, m);
            ok = q.contains(c) && q.contains(cp) &&
                 m.reduce((long long)c * x + (long long)cp * xp) == z &&
                 m.add(c, cp) != t;
          } catch (const Error&) {
          }
          bool exists = false;
          for (int c : q.values())
            for (int cp : q.values())
              if (m.reduce((long long)c * x + (long long)cp * xp) == z &&
                  m.add(c, cp) != t)
                exists = true;
          if (!ok || !exists)
            acc.flag("pair miss at x=" + std::to_string(x) +
                     " x'=" + std::to_string(xp) + " z=" + std::to_string(z) +
                     " t=" + std::to_string(t));
        }
  };
  return d;
}

Domain domain_ns(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n());
  d.note = "all traces x unit targets x ordered distinct same-coset pairs";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    const int t = int(outer);
    for (int z = 1; z < m.n(); ++z)
      for (int x = 1; x < m.n(); ++x)
        for (int xp = 1; xp < m.n(); ++xp) {
          if (x == xp || coset_of(x, m) != coset_of(xp, m)) continue;
          acc.instance();
          bool ok = false;
          try {
            auto [c, cp] = solve_pair_avoiding_trace(x, xp, z, t, m);
            ok = q.contains(c) && q.contains(cp) &&
                 m.reduce((long long)c * x + (long long)cp * xp) == z &&
                 m.add(c, cp) != t;
          } catch (const Error&) {
          }
          bool exists = false;
          for (int c : q.values())
            for (int cp : q.values())
              if (m.reduce((long long)c * x + (long long)cp * xp) == z &&
                  m.add(c, cp) != t)
                exists = true;
          if (!ok || !exists)
            acc.flag("unit-target pair miss at x=" + std::to_string(x) +
                     " x'=" + std::to_string(xp) + " z=" + std::to_string(z) +
                     " t=" + std::to_string(t));
        }
  };
  return d;
}

Domain domain_seq_pair(const Modulus& m, bool p7) {
  Domain d;
  const int need_nz = p7 ? 2 : 1;
  MultisetOuter mo{m.n(), 0, need_nz, seq_cap(m)};
  d.outer_count = mo.count();
  d.note = std::string("multisets with >= ") + std::to_string(need_nz) +
           " nonzero terms, sizes up to " + std::to_string(mo.max_size) +
           ", x ordered distinct same-coset pairs";
  d.per_outer = [m, mo, need_nz, p7](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    mo.run(outer, [&](const std::vector<int>& s) {
      if (count_nonzero(s) < need_nz) return;
      SeqComboCore core_q =
          seq_combo_core(m, s, p7 ? Coset::QP : Coset::Zero);
      SeqComboCore core_n = p7 ? seq_combo_core(m, s, Coset::NP) : core_q;
      for (int x = 1; x < m.n(); ++x)
        for (int xp = 1; xp < m.n(); ++xp) {
          if (x == xp || coset_of(x, m) != coset_of(xp, m)) continue;
          acc.instance();
          const SeqComboCore& core =
              (p7 && coset_of(x, m) == Coset::NP) ? core_n : core_q;
          bool ok = false;
          try {
            auto [c, cp] = solve_pair_avoiding_trace(
                x, xp, m.neg(core.z), m.neg(core.trace), m);
            long long val = (long long)core.z + (long long)c * x +
                            (long long)cp * xp;
            int tr = m.reduce((long long)core.trace + c + cp);
            ok = q.contains(c) && q.contains(cp) && m.reduce(val) == 0 &&
                 tr != 0;
          } catch (const Error&) {
          }
          if (!ok) {
            std::vector<int> full = s;
            full.push_back(x);
            full.push_back(xp);
            acc.flag("sequence-plus-pair miss for " + terms_str(s) + " x=" +
                     std::to_string(x) + " x'=" + std::to_string(xp) +
                     (exists_zero_sum_nonzero_trace(m, full)
                          ? " (combo exists, construction failed)"
                          : " (no combo exists)"));
          }
        }
    });
  };
  return d;
}

Domain domain_l2(const Modulus& m) {
  Domain d;
  MultisetOuter mo{m.n(), 1, 3, 5};
  d.outer_count = mo.count();
  d.note = "two zeros plus nonzero multisets of 3..5 terms";
  d.per_outer = [m, mo](uint64_t outer, ChunkAcc& acc) {
    mo.run(outer, [&](const std::vector<int>& nz) {
      acc.instance();
      std::vector<int> ext = nz;
      ext.push_back(0);
      ext.push_back(0);
      Sequence extended(m, ext);
      std::string why;
      bool ok = false;
      try {
        Certificate cert;
        try {
          cert = extend_with_zeros(Sequence(m, nz), 2);
        } catch (const HypothesisUnmet&) {
          // every zero-sum combo has trace zero; pair the zeros with
          // weights 1 and -1 instead (-1 is a residue here)
          WeightedCombo combo = qp_zero_sum_combo(Sequence(m, nz));
          cert.indices.resize(ext.size());
          for (size_t i = 0; i < ext.size(); ++i) cert.indices[i] = int(i);
          cert.a_weights = combo.coefficients;
          cert.a_weights.push_back(1);
          cert.a_weights.push_back(m.neg(1));
          cert.b_weights.assign(ext.size(), 1);
          cert.parent_hash = sequence_hash(extended);
        }
        ok = check_certificate(extended, qp_one(m), cert,
                               SubseqMode::any_nonempty(), &why) &&
             is_ab_zero_sum(extended, qp_one(m)).has_value();
      } catch (const Error& e) {
        why = e.what();
      }
      if (!ok)
        acc.flag("two-zero certificate failed for " + terms_str(nz) + ": " +
                 why);
    });
  };
  return d;
}

Domain domain_nsc(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n() - 1);
  d.note = "ordered triples of distinct nonzero residues";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    int x1 = int(outer) + 1;
    for (int x2 = 1; x2 < m.n(); ++x2)
      for (int x3 = 1; x3 < m.n(); ++x3) {
        if (x1 == x2 || x1 == x3 || x2 == x3) continue;
        acc.instance();
        bool ok = false;
        try {
          WeightedCombo combo = distinct_triple_combo(m, x1, x2, x3);
          ok = combo.value == 0 && combo.trace != 0;
          for (int c : combo.coefficients) ok = ok && q.contains(c);
        } catch (const Error&) {
        }
        bool exists = false;
        for (int c1 : q.values())
          for (int c2 : q.values())
            for (int c3 : q.values())
              if (m.reduce((long long)c1 * x1 + (long long)c2 * x2 +
                           (long long)c3 * x3) == 0 &&
                  m.reduce((long long)c1 + c2 + c3) != 0)
                exists = true;
        if (!ok || !exists)
          acc.flag("triple combo miss at (" + std::to_string(x1) + "," +
                   std::to_string(x2) + "," + std::to_string(x3) + ")");
      }
  };
  return d;
}

Domain domain_ls(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n() - 1);
  d.note = "ordered same-coset pairs, repeats included";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const ResidueSet q = quadratic_residues(m);
    int x = int(outer) + 1;
    for (int y = 1; y < m.n(); ++y) {
      if (coset_of(x, m) != coset_of(y, m)) continue;
      acc.instance();
      auto [a, b] = residue_pair_killing_sum(m, x, y);
      bool ok = q.contains(a) && q.contains(b) &&
                m.reduce((long long)a * x + (long long)b * y) == 0 &&
                sumset(dilate(q, x), dilate(q, y)).contains(0);
      if (!ok)
        acc.flag("sum-killing pair miss at x=" + std::to_string(x) +
                 " y=" + std::to_string(y));
    }
  };
  return d;
}

Domain domain_qp1(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n());
  d.note = "all sequences of length 1 and 2";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const WeightPair w = qp_one(m);
    int x1 = int(outer);
    acc.instance();
    if (is_ab_zero_sum(Sequence(m, {x1}), w))
      acc.flag("length-1 certificate at (" + std::to_string(x1) + ")");
    for (int x2 = 0; x2 < m.n(); ++x2) {
      acc.instance();
      if (is_ab_zero_sum(Sequence(m, {x1, x2}), w))
        acc.flag("length-2 certificate at (" + std::to_string(x1) + "," +
                 std::to_string(x2) + ")");
    }
  };
  return d;
}

Domain domain_qp2(const Modulus& m) {
  Domain d;
  const auto qv = quadratic_residues(m).values();
  d.outer_count = (uint64_t(1) << qv.size()) - 1;
  d.note = "all nonempty second weight sets inside the residue set x all "
           "sequences of length 1 and 2";
  d.per_outer = [m, qv](uint64_t outer, ChunkAcc& acc) {
    uint64_t mask = outer + 1;
    ResidueSet b = ResidueSet::empty_set(m.n());
    for (size_t i = 0; i < qv.size(); ++i)
      if (mask & (uint64_t(1) << i)) b.insert(qv[i]);
    const WeightPair w{quadratic_residues(m), b};
    for (int x1 = 0; x1 < m.n(); ++x1) {
      acc.instance();
      if (is_ab_zero_sum(Sequence(m, {x1}), w))
        acc.flag("length-1 certificate with B=" + b.to_string());
      for (int x2 = 0; x2 < m.n(); ++x2) {
        acc.instance();
        if (is_ab_zero_sum(Sequence(m, {x1, x2}), w))
          acc.flag("length-2 certificate with B=" + b.to_string() + " at (" +
                   std::to_string(x1) + "," + std::to_string(x2) + ")");
      }
    }
  };
  return d;
}

Domain domain_q51(const Modulus& m) {
  Domain d;
  d.outer_count = uint64_t(m.n());
  d.note = "all length-5 sequences";
  d.per_outer = [m](uint64_t outer, ChunkAcc& acc) {
    const WeightPair w = qp_one(m);
    std::vector<int> s(5, 0);
    s[0] = int(outer);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == 5) {
        acc.instance();
        int plain = m.reduce(s[0] + s[1] + s[2] + s[3] + s[4]);
        bool weighted = is_ab_zero_sum(Sequence(m, s), w).has_value();
        if (weighted != (plain == 0))
          acc.flag("equivalence fails at " + terms_str(s));
        return;
      }
      for (int v = 0; v < m.n(); ++v) {
        s[pos] = v;
        rec(pos + 1);
      }
    };
    rec(1);
  };
  return d;
}

}  // namespace

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::CM: return "CM";
    case LemmaId::ZS: return "ZS";
    case LemmaId::NSS: return "NSS";
    case LemmaId::THREE_Z: return "THREE_Z";
    case LemmaId::EH: return "EH";
    case LemmaId::NSPART: return "NSPART";
    case LemmaId::NS: return "NS";
    case LemmaId::NS7: return "NS7";
    case LemmaId::NS_PRIME: return "NS_PRIME";
    case LemmaId::L2: return "L2";
    case LemmaId::NSC: return "NSC";
    case LemmaId::LS: return "LS";
    case LemmaId::QP1: return "QP1";
    case LemmaId::QP2: return "QP2";
    case LemmaId::Q51: return "Q51";
    case LemmaId::CD: return "CD";
  }
  return "?";
}

std::optional<LemmaId> lemma_from_name(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (LemmaId id : all_lemmas())
    if (up == lemma_name(id)) return id;
  return std::nullopt;
}

const std::vector<LemmaId>& all_lemmas() {
  static const std::vector<LemmaId> ids{
      LemmaId::CM,  LemmaId::ZS,       LemmaId::NSS, LemmaId::THREE_Z,
      LemmaId::EH,  LemmaId::NSPART,   LemmaId::NS,  LemmaId::NS7,
      LemmaId::NS_PRIME, LemmaId::L2,  LemmaId::NSC, LemmaId::LS,
      LemmaId::QP1, LemmaId::QP2,      LemmaId::Q51, LemmaId::CD};
  return ids;
}

const char* lemma_summary(LemmaId id) {
  switch (id) {
    case LemmaId::CM:
      return "three dilated residue-set copies cover every target";
    case LemmaId::ZS:
      return "three or more nonzero terms admit a residue-weighted zero sum";
    case LemmaId::NSS:
      return "a zero-sum nonzero-trace combo extends across two zeros";
    case LemmaId::THREE_Z:
      return "three or more nonzero terms extend across three zeros";
    case LemmaId::EH:
      return "restricted sumset is everything or has >= 2|X|-3 elements";
    case LemmaId::NSPART:
      return "distinct residue pair hits restricted-sum targets off-trace";
    case LemmaId::NS:
      return "distinct same-coset pair hits any unit target off-trace";
    case LemmaId::NS7:
      return "sequence plus same-coset pair: zero sum with nonzero trace";
    case LemmaId::NS_PRIME:
      return "the p=7 variant with two nonzero terms required";
    case LemmaId::L2:
      return "two zeros plus three nonzero terms form a full certificate";
    case LemmaId::NSC:
      return "distinct nonzero triple: zero sum with nonzero trace";
    case LemmaId::LS:
      return "same-coset pair admits residue weights killing the sum";
    case LemmaId::QP1:
      return "no full certificate of length <= 2 when p = 3 mod 4";
    case LemmaId::QP2:
      return "same with any second weight set inside the residue set";
    case LemmaId::Q51:
      return "length-5 full certificates over Z_5 match plain zero sums";
    case LemmaId::CD:
      return "sumset cardinality is at least min(p, |X|+|Y|-1)";
  }
  return "?";
}

bool lemma_supports(LemmaId id, const Modulus& p) {
  if (!p.is_odd_prime()) return false;
  const int n = p.n();
  switch (id) {
    case LemmaId::CM:
    case LemmaId::ZS:
    case LemmaId::NSS:
    case LemmaId::THREE_Z: return n >= 7;
    case LemmaId::EH:
    case LemmaId::CD: return true;
    case LemmaId::NSPART: return n >= 5;
    case LemmaId::NS:
    case LemmaId::NS7:
    case LemmaId::NSC: return n >= 11;
    case LemmaId::NS_PRIME: return n == 7;
    case LemmaId::L2: return n >= 7 && n % 4 == 1;
    case LemmaId::LS: return n % 4 == 1;
    case LemmaId::QP1:
    case LemmaId::QP2: return n % 4 == 3;
    case LemmaId::Q51: return n == 5;
  }
  return false;
}

WeightedCombo make_combo(const Modulus& m, const std::vector<int>& terms,
                         std::vector<int> coefficients) {
  if (terms.size() != coefficients.size())
    throw std::invalid_argument("combo length mismatch");
  WeightedCombo combo;
  combo.coefficients = std::move(coefficients);
  long long value = 0, trace = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    value += (long long)combo.coefficients[i] * terms[i] % m.n();
    trace += combo.coefficients[i];
  }
  combo.value = m.reduce(value);
  combo.trace = m.reduce(trace);
  return combo;
}

std::array<int, 3> solve_three_cover(int x1, int x2, int x3, int target,
                                     const Modulus& p) {
  if (!p.is_odd_prime()) throw NotOddPrime("three-cover needs an odd prime");
  if (p.n() < 7)
    throw PrimeTooSmall("three-cover needs p >= 7, got " +
                        std::to_string(p.n()));
  if (p.reduce(x1) == 0 || p.reduce(x2) == 0 || p.reduce(x3) == 0)
    throw PreconditionViolated("three-cover needs unit multipliers");
  const auto qv = quadratic_residues(p).values();
  for (int c1 : qv)
    for (int c2 : qv)
      for (int c3 : qv) {
        long long s = (long long)c1 * x1 + (long long)c2 * x2 +
                      (long long)c3 * x3;
        if (p.reduce(s) == p.reduce(target)) return {c1, c2, c3};
      }
  throw NoSolution("three-cover scan exhausted");
}

WeightedCombo qp_zero_sum_combo(const Sequence& s) {
  const Modulus& m = s.modulus;
  std::vector<int> nz_idx;
  for (size_t i = 0; i < s.terms.size() && nz_idx.size() < 3; ++i)
    if (s.terms[i] != 0) nz_idx.push_back(int(i));
  if (nz_idx.size() < 3)
    throw PreconditionViolated("zero-sum combo needs >= 3 nonzero terms");
  long long rest = 0;
  for (size_t i = 0; i < s.terms.size(); ++i)
    if (int(i) != nz_idx[0] && int(i) != nz_idx[1] && int(i) != nz_idx[2])
      rest += s.terms[i];
  auto [c1, c2, c3] = solve_three_cover(s.terms[nz_idx[0]],
                                        s.terms[nz_idx[1]],
                                        s.terms[nz_idx[2]],
                                        m.neg(m.reduce(rest)), m);
  std::vector<int> coeff(s.terms.size(), 1);
  coeff[nz_idx[0]] = c1;
  coeff[nz_idx[1]] = c2;
  coeff[nz_idx[2]] = c3;
  WeightedCombo combo = make_combo(m, s.terms, std::move(coeff));
  assert(combo.value == 0);
  return combo;
}

std::pair<int, int> solve_pair_avoiding_trace(int x, int xp, int z, int t,
                                              const Modulus& p) {
  if (!p.is_odd_prime())
    throw NotOddPrime("pair solver needs an odd prime");
  x = p.reduce(x);
  xp = p.reduce(xp);
  z = p.reduce(z);
  t = p.reduce(t);
  if (x == xp || x == 0 || xp == 0 || coset_of(x, p) != coset_of(xp, p))
    throw HypothesisUnmet("pair solver needs distinct same-coset elements");
  const ResidueSet q = quadratic_residues(p);
  int norm = 1;
  if (!q.contains(x)) norm = nonresidues(p).values().front();
  const int nx = p.mul(norm, x), nxp = p.mul(norm, xp), nz = p.mul(norm, z);
  int u = -1, up = -1;
  for (int cand : q.values()) {
    int other = p.sub(nz, cand);
    if (other != cand && q.contains(other)) {
      u = cand;
      up = other;
      break;
    }
  }
  if (u < 0)
    throw HypothesisUnmet("target is not a restricted sum of residues");
  const int ix = p.inv(nx), ixp = p.inv(nxp);
  std::pair<int, int> first{p.mul(u, ix), p.mul(up, ixp)};
  std::pair<int, int> second{p.mul(up, ix), p.mul(u, ixp)};
  const int tr1 = p.add(first.first, first.second);
  const int tr2 = p.add(second.first, second.second);
  assert(tr1 != tr2);
  if (tr1 != t && tr2 != t) return std::min(first, second);
  return tr1 != t ? first : second;
}

Certificate extend_with_zeros(const Sequence& t, int zeros) {
  if (zeros != 2 && zeros != 3)
    throw std::invalid_argument("zeros must be 2 or 3");
  const Modulus& m = t.modulus;
  const ResidueSet q = quadratic_residues(m);
  const int k = int(t.terms.size());
  const int nz = count_nonzero(t.terms);

  WeightedCombo combo;
  if (zeros == 3) {
    if (nz < 3)
      throw HypothesisUnmet("three-zero extension needs >= 3 nonzero terms");
    combo = qp_zero_sum_combo(t);
  } else {
    bool found = false;
    if (nz >= 3 && m.n() >= 7) {
      combo = qp_zero_sum_combo(t);
      found = combo.trace != 0;
    }
    if (!found) {
      // distinct same-coset pair with enough nonzero support elsewhere
      for (int i = 0; i < k && !found; ++i)
        for (int j = i + 1; j < k; ++j) {
          if (t.terms[i] == 0 || t.terms[j] == 0 ||
              t.terms[i] == t.terms[j] ||
              coset_of(t.terms[i], m) != coset_of(t.terms[j], m))
            continue;
          std::vector<int> rest;
          for (int l = 0; l < k; ++l)
            if (l != i && l != j) rest.push_back(t.terms[l]);
          const int rest_nz = count_nonzero(rest);
          if (m.n() >= 11 ? rest_nz < 1 : (m.n() != 7 || rest_nz < 2))
            continue;
          WeightedCombo sub = seq_pair_combo(m, rest, t.terms[i], t.terms[j]);
          std::vector<int> coeff(k);
          int r = 0;
          for (int l = 0; l < k; ++l)
            if (l != i && l != j) coeff[l] = sub.coefficients[r++];
          coeff[i] = sub.coefficients[r];
          coeff[j] = sub.coefficients[r + 1];
          combo = make_combo(m, t.terms, std::move(coeff));
          found = true;
          break;
        }
    }
    if (!found) {
      double space = 1;
      for (int i = 0; i < k; ++i) space *= double(q.size());
      if (space <= 4e6) {
        std::vector<int> coeff(k, 0);
        const auto qv = q.values();
        std::vector<int> pos(k, 0);
        for (;;) {
          for (int i = 0; i < k; ++i) coeff[i] = qv[pos[i]];
          WeightedCombo cand = make_combo(m, t.terms, coeff);
          if (cand.value == 0 && cand.trace != 0) {
            combo = std::move(cand);
            found = true;
            break;
          }
          int i = k - 1;
          while (i >= 0 && pos[i] + 1 == int(qv.size())) pos[i--] = 0;
          if (i < 0) break;
          ++pos[i];
        }
      }
    }
    if (!found)
      throw HypothesisUnmet(
          "no zero-sum combo with nonzero trace for " + to_string(t));
  }

  assert(combo.value == 0);
  std::vector<int> a(k + zeros, 0);
  if (zeros == 2) {
    auto [d, d2, d3] = solve_three_cover(combo.trace, 1, 1, 0, m);
    for (int i = 0; i < k; ++i) a[i] = m.mul(d, combo.coefficients[i]);
    a[k] = d2;
    a[k + 1] = d3;
  } else if (combo.trace != 0) {
    auto [d, d2, d3] = solve_three_cover(combo.trace, 1, 1, m.neg(1), m);
    for (int i = 0; i < k; ++i) a[i] = m.mul(d, combo.coefficients[i]);
    a[k] = d2;
    a[k + 1] = d3;
    a[k + 2] = 1;
  } else {
    auto [d2, d3, d4] = solve_three_cover(1, 1, 1, 0, m);
    for (int i = 0; i < k; ++i) a[i] = combo.coefficients[i];
    a[k] = d2;
    a[k + 1] = d3;
    a[k + 2] = d4;
  }

  std::vector<int> ext = t.terms;
  ext.insert(ext.end(), size_t(zeros), 0);
  Certificate cert;
  cert.indices.resize(ext.size());
  for (size_t i = 0; i < ext.size(); ++i) cert.indices[i] = int(i);
  cert.a_weights = std::move(a);
  cert.b_weights.assign(ext.size(), 1);
  cert.parent_hash = sequence_hash(Sequence(m, ext));
#ifndef NDEBUG
  {
    std::string why;
    assert(check_certificate(Sequence(m, ext), qp_one(m), cert,
                             SubseqMode::any_nonempty(), &why));
  }
#endif
  return cert;
}

LemmaReport verify_lemma(LemmaId id, const Modulus& p, int jobs) {
  if (!lemma_supports(id, p))
    throw UnsupportedPrime(std::string(lemma_name(id)) +
                           " is not stated for p = " + std::to_string(p.n()));
  Domain dom;
  switch (id) {
    case LemmaId::CM: dom = domain_cm(p); break;
    case LemmaId::ZS: dom = domain_zs(p); break;
    case LemmaId::NSS: dom = domain_nss(p); break;
    case LemmaId::THREE_Z: dom = domain_three_z(p); break;
    case LemmaId::EH: dom = domain_eh(p); break;
    case LemmaId::NSPART: dom = domain_nspart(p); break;
    case LemmaId::NS: dom = domain_ns(p); break;
    case LemmaId::NS7: dom = domain_seq_pair(p, false); break;
    case LemmaId::NS_PRIME: dom = domain_seq_pair(p, true); break;
    case LemmaId::L2: dom = domain_l2(p); break;
    case LemmaId::NSC: dom = domain_nsc(p); break;
    case LemmaId::LS: dom = domain_ls(p); break;
    case LemmaId::QP1: dom = domain_qp1(p); break;
    case LemmaId::QP2: dom = domain_qp2(p); break;
    case LemmaId::Q51: dom = domain_q51(p); break;
    case LemmaId::CD: dom = domain_cd(p); break;
  }
  return run_domain(id, p, jobs, dom);
}

}  // namespace zswlab
