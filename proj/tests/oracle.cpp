#include "oracle.hpp"

#include <string>

#include "zswlab/engine.hpp"

namespace oracle {

using namespace zswlab;

namespace {

// Depth-first over positions i..end.  Each position is either skipped (when
// allowed) or used with some (a, b) weight.  need_exact < 0 means any
// nonempty selection; otherwise exactly that many terms must be used.
bool complete(const std::vector<int>& x, const Modulus& m, const WeightPair& w,
              size_t i, int used, int need_exact, int wsum, int bsum,
              bool allow_skip) {
  if (i == x.size()) {
    if (wsum != 0 || bsum != 0) return false;
    return need_exact < 0 ? used > 0 : used == need_exact;
  }
  if (allow_skip &&
      complete(x, m, w, i + 1, used, need_exact, wsum, bsum, allow_skip))
    return true;
  if (need_exact >= 0 && used == need_exact) return false;
  for (int a : w.a.values())
    for (int b : w.b.values())
      if (complete(x, m, w, i + 1, used + 1, need_exact,
                   m.add(wsum, m.mul(a, x[i])), m.add(bsum, m.mul(b, a)),
                   allow_skip))
        return true;
  return false;
}

}  // namespace

bool terms_qualify(const std::vector<int>& terms, const Modulus& m,
                   const WeightPair& w) {
  if (terms.empty()) return false;
  return complete(terms, m, w, 0, 0, int(terms.size()), 0, 0, false);
}

bool sequence_good(const Sequence& s, ConstantKind kind, const WeightPair& w) {
  const Modulus& m = s.modulus;
  const auto& t = s.terms;
  switch (kind) {
    case ConstantKind::C:
      for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j <= t.size(); ++j)
          if (terms_qualify({t.begin() + i, t.begin() + j}, m, w)) return true;
      return false;
    case ConstantKind::D:
      return complete(t, m, w, 0, 0, -1, 0, 0, true);
    case ConstantKind::E:
      if (int(t.size()) < m.n()) return false;
      return complete(t, m, w, 0, 0, m.n(), 0, 0, true);
  }
  return false;
}

int constant_by_enumeration(ConstantKind kind, const Modulus& m,
                            const WeightPair& w, int cap) {
  const int n = m.n();
  std::vector<int> t;
  // Returns true when some bad (not good) sequence of the current length
  // exists, extending t one term at a time.
  auto has_bad = [&](auto&& self, int len, int lo) -> bool {
    if (int(t.size()) == len)
      return !sequence_good(Sequence(m, t), kind, w);
    const int first = kind == ConstantKind::C ? 0 : lo;
    for (int v = first; v < n; ++v) {
      t.push_back(v);
      if (self(self, len, v)) {
        t.pop_back();
        return true;
      }
      t.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= cap; ++k) {
    t.clear();
    if (!has_bad(has_bad, k, 0)) return k;
  }
  return -1;
}

uint64_t equivalence_sweep(const Modulus& m, const WeightPair& w, int max_len,
                           uint64_t* inspected) {
  const int n = m.n();
  uint64_t bad = 0;
  std::vector<int> t;
  auto visit = [&](auto&& self) -> void {
    if (!t.empty()) {
      if (inspected) ++*inspected;
      Sequence s(m, t);
      for (ConstantKind kind :
           {ConstantKind::C, ConstantKind::D, ConstantKind::E}) {
        const bool expect = sequence_good(s, kind, w);
        if (is_good(s, kind, w) != expect) {
          ++bad;
          continue;
        }
        // The finder refuses exact-length requests longer than the
        // sequence; is_good covers that case as plain false above.
        if (kind == ConstantKind::E && int(t.size()) < n) continue;
        auto cert = find_zero_sum_subsequence(s, w, mode_for(kind, n));
        if (cert.has_value() != expect) {
          ++bad;
          continue;
        }
        if (cert) {
          std::string reason;
          if (!check_certificate(s, w, *cert, mode_for(kind, n), &reason))
            ++bad;
        }
      }
    }
    if (int(t.size()) == max_len) return;
    for (int v = 0; v < n; ++v) {
      t.push_back(v);
      self(self);
      t.pop_back();
    }
  };
  visit(visit);
  return bad;
}

}  // namespace oracle
