#include "zswlab/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace zswlab {

namespace {

std::vector<StepList> steps_per_term(const Sequence& s, const WeightPair& w) {
  std::vector<StepList> out;
  out.reserve(s.terms.size());
  for (int x : s.terms) out.push_back(step_set(x, s.modulus, w));
  return out;
}

StepList negated(const StepList& steps, int n) {
  StepList out;
  out.reserve(steps.size());
  for (auto [da, db] : steps)
    out.emplace_back(da == 0 ? 0 : n - da, db == 0 ? 0 : n - db);
  return out;
}

// Backward full-cover tables for positions [begin, end): back[i - begin]
// holds every state from which using ALL of terms i..end-1 reaches (0, 0).
std::vector<PairTable> cover_backward(int n,
                                      const std::vector<StepList>& neg_steps,
                                      int begin, int end) {
  std::vector<PairTable> back(end - begin + 1, PairTable::empty_table(n));
  back[end - begin] = PairTable::origin(n);
  for (int i = end - 1; i >= begin; --i)
    back[i - begin] = advanced(back[i - begin + 1], neg_steps[i]);
  return back;
}

// Forward greedy weight extraction across a fully-used window.
void extract_cover(const Sequence& s, const WeightPair& w, int begin, int end,
                   const std::vector<PairTable>& back, Certificate& cert) {
  const int n = s.modulus.n();
  const auto avals = w.a.values();
  const auto bvals = w.b.values();
  int cs = 0, ct = 0;
  for (int i = begin; i < end; ++i) {
    bool chosen = false;
    for (int a : avals) {
      for (int b : bvals) {
        int s2 = (cs + (long long)a * s.terms[i]) % n;
        int t2 = (ct + (long long)b * a) % n;
        if (back[i - begin + 1].test(s2, t2)) {
          cert.indices.push_back(i);
          cert.a_weights.push_back(a);
          cert.b_weights.push_back(b);
          cs = s2;
          ct = t2;
          chosen = true;
          break;
        }
      }
      if (chosen) break;
    }
    assert(chosen);
  }
  assert(cs == 0 && ct == 0);
}

// Backward subset tables: back[i][r] holds every state from which one can
// still reach (0, 0) at the end while choosing r more terms among positions
// i..k-1 (exactly r when `exact`, at least r with r <= 1 otherwise).
std::vector<std::vector<PairTable>> subset_backward(
    int n, const std::vector<StepList>& neg_steps, int k, int r_max,
    bool exact) {
  std::vector<std::vector<PairTable>> back(
      k + 1, std::vector<PairTable>(r_max + 1, PairTable::empty_table(n)));
  back[k][0] = PairTable::origin(n);
  for (int i = k - 1; i >= 0; --i) {
    for (int r = 0; r <= r_max; ++r) {
      back[i][r] = back[i + 1][r];  // skip position i
      if (exact) {
        if (r > 0) advance_into(back[i + 1][r - 1], neg_steps[i], back[i][r]);
      } else {
        // using position i always satisfies the "at least r" requirement
        advance_into(back[i + 1][0], neg_steps[i], back[i][r]);
      }
    }
  }
  return back;
}

Certificate extract_subset(const Sequence& s, const WeightPair& w,
                           const std::vector<std::vector<PairTable>>& back,
                           int r_start, bool exact) {
  const int n = s.modulus.n();
  const int k = s.length();
  const auto avals = w.a.values();
  const auto bvals = w.b.values();
  Certificate cert;
  cert.parent_hash = sequence_hash(s);
  int cs = 0, ct = 0, r = r_start;
  for (int i = 0; i < k; ++i) {
    if (r == 0 && cs == 0 && ct == 0) break;
    int r_used = exact ? r - 1 : 0;
    bool used = false;
    if (!exact || r > 0) {
      for (int a : avals) {
        for (int b : bvals) {
          int s2 = (cs + (long long)a * s.terms[i]) % n;
          int t2 = (ct + (long long)b * a) % n;
          if (back[i + 1][r_used].test(s2, t2)) {
            cert.indices.push_back(i);
            cert.a_weights.push_back(a);
            cert.b_weights.push_back(b);
            cs = s2;
            ct = t2;
            r = r_used;
            used = true;
            break;
          }
        }
        if (used) break;
      }
    }
    if (!used) assert(back[i + 1][r].test(cs, ct));
  }
  assert(r == 0 && cs == 0 && ct == 0);
  return cert;
}

}  // namespace

SubseqMode SubseqMode::exact_length(int len) {
  if (len < 1)
    throw std::invalid_argument("exact-length mode needs a positive length");
  return {Kind::ExactLength, len};
}

StepList step_set(int x, const Modulus& m, const WeightPair& w) {
  if (w.n() != m.n()) throw ModulusMismatch("weights vs term modulus");
  StepList out;
  for (int a : w.a.values())
    for (int b : w.b.values())
      out.emplace_back(m.mul(a, x), m.mul(b, a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Certificate> is_ab_zero_sum(const Sequence& s,
                                          const WeightPair& w) {
  if (s.empty()) throw EmptySequence("is_ab_zero_sum on empty sequence");
  const int n = s.modulus.n();
  const int k = s.length();
  auto steps = steps_per_term(s, w);
  std::vector<StepList> neg;
  neg.reserve(k);
  for (auto& sl : steps) neg.push_back(negated(sl, n));
  auto back = cover_backward(n, neg, 0, k);
  if (!back[0].test(0, 0)) return std::nullopt;
  Certificate cert;
  cert.parent_hash = sequence_hash(s);
  extract_cover(s, w, 0, k, back, cert);
  return cert;
}

std::optional<Certificate> find_zero_sum_subsequence(const Sequence& s,
                                                     const WeightPair& w,
                                                     const SubseqMode& mode) {
  if (s.empty())
    throw EmptySequence("find_zero_sum_subsequence on empty sequence");
  const int n = s.modulus.n();
  const int k = s.length();
  auto steps = steps_per_term(s, w);
  std::vector<StepList> neg;
  neg.reserve(k);
  for (auto& sl : steps) neg.push_back(negated(sl, n));

  switch (mode.kind) {
    case SubseqMode::Kind::Contiguous: {
      // Smallest start wins, then smallest end.
      for (int i = 0; i < k; ++i) {
        PairTable fwd = PairTable::origin(n);
        for (int j = i; j < k; ++j) {
          fwd = advanced(fwd, steps[j]);
          if (fwd.test(0, 0)) {
            auto back = cover_backward(n, neg, i, j + 1);
            Certificate cert;
            cert.parent_hash = sequence_hash(s);
            extract_cover(s, w, i, j + 1, back, cert);
            return cert;
          }
        }
      }
      return std::nullopt;
    }
    case SubseqMode::Kind::AnyNonempty: {
      auto back = subset_backward(n, neg, k, 1, /*exact=*/false);
      if (!back[0][1].test(0, 0)) return std::nullopt;
      return extract_subset(s, w, back, 1, /*exact=*/false);
    }
    case SubseqMode::Kind::ExactLength: {
      if (mode.length > k)
        throw LengthExceedsSequence(
            "exact-length " + std::to_string(mode.length) +
            " exceeds sequence length " + std::to_string(k));
      auto back = subset_backward(n, neg, k, mode.length, /*exact=*/true);
      if (!back[0][mode.length].test(0, 0)) return std::nullopt;
      return extract_subset(s, w, back, mode.length, /*exact=*/true);
    }
  }
  return std::nullopt;
}

bool check_certificate(const Sequence& s, const WeightPair& w,
                       const Certificate& cert, const SubseqMode& mode,
                       std::string* reason) {
  auto fail = [&](const char* why) {
    if (reason) *reason = why;
    return false;
  };
  if (s.modulus.n() != w.n()) return fail("modulus-mismatch");
  if (cert.parent_hash != sequence_hash(s)) return fail("parent-hash");
  const size_t m = cert.indices.size();
  if (m == 0) return fail("empty-certificate");
  if (cert.a_weights.size() != m || cert.b_weights.size() != m)
    return fail("weight-count");
  for (size_t i = 0; i < m; ++i) {
    int idx = cert.indices[i];
    if (idx < 0 || idx >= s.length()) return fail("index-range");
    if (i > 0 && cert.indices[i - 1] >= idx) return fail("index-order");
  }
  switch (mode.kind) {
    case SubseqMode::Kind::AnyNonempty:
      break;
    case SubseqMode::Kind::Contiguous:
      for (size_t i = 1; i < m; ++i)
        if (cert.indices[i] != cert.indices[i - 1] + 1)
          return fail("not-contiguous");
      break;
    case SubseqMode::Kind::ExactLength:
      if (int(m) != mode.length) return fail("wrong-length");
      break;
  }
  const int n = s.modulus.n();
  long long sum_a = 0, sum_b = 0;
  for (size_t i = 0; i < m; ++i) {
    int a = cert.a_weights[i];
    int b = cert.b_weights[i];
    if (a < 0 || a >= n || !w.a.contains(a)) return fail("a-weight");
    if (b < 0 || b >= n || !w.b.contains(b)) return fail("b-weight");
    sum_a += (long long)a * s.terms[cert.indices[i]] % n;
    sum_b += (long long)b * a % n;
  }
  if (sum_a % n != 0) return fail("a-sum");
  if (sum_b % n != 0) return fail("b-sum");
  if (reason) reason->clear();
  return true;
}

}  // namespace zswlab
