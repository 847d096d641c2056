#include "zswlab/witness.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "zswlab/errors.hpp"

namespace zswlab {

namespace {

// Weight odometer over a_set^k (and b_set^k when the weight-sum congruence
// is live): does this index set admit weights closing both congruences?
// Purely positional loops, no shared tables.
bool subset_qualifies_odometer(const Sequence& s, const WeightPair& w,
                               const std::vector<int>& idx) {
  const Modulus& m = s.modulus;
  const int k = int(idx.size());
  const auto av = w.a.values();
  const bool b_trivial = w.b.bits == 1;  // B = {0} kills the second sum
  const auto bv = w.b.values();
  std::vector<int> ai(k, 0);
  for (;;) {
    long long value = 0;
    for (int i = 0; i < k; ++i)
      value += (long long)av[ai[i]] * s.terms[idx[i]];
    if (m.reduce(value) == 0) {
      if (b_trivial) return true;
      std::vector<int> bi(k, 0);
      for (;;) {
        long long wsum = 0;
        for (int i = 0; i < k; ++i)
          wsum += (long long)bv[bi[i]] * av[ai[i]];
        if (m.reduce(wsum) == 0) return true;
        int i = k - 1;
        while (i >= 0 && bi[i] + 1 == int(bv.size())) bi[i--] = 0;
        if (i < 0) break;
        ++bi[i];
      }
    }
    int i = k - 1;
    while (i >= 0 && ai[i] + 1 == int(av.size())) ai[i--] = 0;
    if (i < 0) return false;
    ++ai[i];
  }
}

// Same question via a dense reachability grid over (value, weight-sum)
// states, for index sets too large to odometer.
bool subset_qualifies_grid(const Sequence& s, const WeightPair& w,
                           const std::vector<int>& idx) {
  const Modulus& m = s.modulus;
  const int n = m.n();
  std::vector<uint8_t> cur(size_t(n) * n, 0), next(size_t(n) * n, 0);
  cur[0] = 1;
  for (int i : idx) {
    std::fill(next.begin(), next.end(), 0);
    for (int v = 0; v < n; ++v)
      for (int t = 0; t < n; ++t) {
        if (!cur[size_t(v) * n + t]) continue;
        for (int a : w.a.values())
          for (int b : w.b.values()) {
            int v2 = m.add(v, m.mul(a, s.terms[i]));
            int t2 = m.add(t, m.mul(b, a));
            next[size_t(v2) * n + t2] = 1;
          }
      }
    cur.swap(next);
  }
  return cur[0] != 0;
}

bool subset_qualifies(const Sequence& s, const WeightPair& w,
                      const std::vector<int>& idx) {
  double space = 1;
  for (size_t i = 0; i < idx.size(); ++i) {
    space *= double(w.a.size());
    if (w.b.bits != 1) space *= double(w.b.size());
  }
  bool grid = subset_qualifies_grid(s, w, idx);
  if (space <= 2e5) {
    bool odo = subset_qualifies_odometer(s, w, idx);
    if (odo != grid)
      throw Error("validator self-check failed on an index set");
  }
  return grid;
}

LowerBoundClaim finish_claim(LowerBoundClaim claim) {
  bool holds = false;
  claim.checked_subsequences = recheck_claim(claim, &holds);
  if (!holds || !validate_witness(claim.witness, claim.kind,
                                  WeightPair{claim.a_set, claim.b_set}))
    throw Error("constructed witness admits a qualifying subsequence");
  if (claim.witness.length() != claim.bound - 1)
    throw Error("witness length does not match the claimed bound");
  return claim;
}

}  // namespace

const char* provenance_name(Provenance p) {
  return p == Provenance::Construction ? "construction" : "search";
}

std::pair<int, int> bad_pair(const Modulus& p) {
  if (!p.is_odd_prime())
    throw NotOddPrime("bad_pair needs an odd prime modulus");
  const ResidueSet q = quadratic_residues(p);
  const int x = 1;
  for (int y = 1; y < p.n(); ++y) {
    bool hit = false;
    for (int a : q.values())
      for (int b : q.values())
        if (p.reduce((long long)a * x + (long long)b * y) == 0) hit = true;
    if (!hit) return {x, y};
  }
  throw NotFound("no unit pair avoids every weighted sum");
}

LowerBoundClaim c_lower_witness(const Modulus& p) {
  auto [x, y] = bad_pair(p);
  const bool neg_one_square = quadratic_residues(p).contains(p.neg(1));
  std::vector<int> terms =
      neg_one_square ? std::vector<int>{0, x, 0, y, 0}
                     : std::vector<int>{0, 0, x, 0, 0, y, 0, 0};
  LowerBoundClaim claim{ConstantKind::C,
                        p,
                        quadratic_residues(p),
                        ResidueSet::of(p.n(), {1}),
                        int(terms.size()) + 1,
                        Sequence(p, std::move(terms)),
                        Provenance::Construction,
                        0};
  return finish_claim(std::move(claim));
}

LowerBoundClaim d_lower_witness(const Modulus& p) {
  auto [x, y] = bad_pair(p);
  const bool neg_one_square = quadratic_residues(p).contains(p.neg(1));
  std::vector<int> terms = neg_one_square ? std::vector<int>{x, y, 0}
                                          : std::vector<int>{x, y, 0, 0};
  LowerBoundClaim claim{ConstantKind::D,
                        p,
                        quadratic_residues(p),
                        ResidueSet::of(p.n(), {1}),
                        int(terms.size()) + 1,
                        Sequence(p, std::move(terms)),
                        Provenance::Construction,
                        0};
  return finish_claim(std::move(claim));
}

LowerBoundClaim e_lower_witness(const Modulus& p, const WeightPair& w) {
  if (!p.is_odd_prime() || p.n() > 13)
    throw UnsupportedPrime("e_lower_witness runs for odd primes up to 13");
  const bool q5_one = p.n() == 5 && w.a == quadratic_residues(p) &&
                      w.b == ResidueSet::of(5, {1});
  const int length = q5_one ? 8 : p.n() + 1;
  std::optional<Sequence> witness =
      find_bad_sequence_of_length(ConstantKind::E, p, w, length);
  if (!witness)
    throw NotFound("no bad sequence of length " + std::to_string(length));
  LowerBoundClaim claim{ConstantKind::E, p,     w.a,
                        w.b,             length + 1, std::move(*witness),
                        Provenance::Search, 0};
  return finish_claim(std::move(claim));
}

uint64_t recheck_claim(const LowerBoundClaim& claim, bool* holds) {
  const Sequence& s = claim.witness;
  const WeightPair w{claim.a_set, claim.b_set};
  const int len = s.length();
  uint64_t checked = 0;
  bool any = false;

  if (claim.kind == ConstantKind::C) {
    for (int i = 0; i < len; ++i)
      for (int j = i; j < len; ++j) {
        std::vector<int> idx;
        for (int k = i; k <= j; ++k) idx.push_back(k);
        ++checked;
        any = any || subset_qualifies(s, w, idx);
      }
  } else {
    const int want = claim.kind == ConstantKind::E ? claim.modulus.n() : -1;
    for (uint64_t mask = 1; mask < (uint64_t(1) << len); ++mask) {
      if (want >= 0 && std::popcount(mask) != want) continue;
      std::vector<int> idx;
      for (int i = 0; i < len; ++i)
        if (mask & (uint64_t(1) << i)) idx.push_back(i);
      ++checked;
      any = any || subset_qualifies(s, w, idx);
    }
  }
  if (holds) *holds = !any;
  return checked;
}

}  // namespace zswlab
