#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "zswlab/engine.hpp"
#include "zswlab/errors.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"
#include "zswlab/sequence.hpp"

using namespace zswlab;

namespace {

WeightPair qp_one(int p) {
  Modulus m(p);
  return {quadratic_residues(m), ResidueSet::of(p, {1})};
}

// First feasible weight assignment in lexicographic (a, b) pair order,
// found by plain backtracking.  is_ab_zero_sum documents exactly this
// tie-break, so the two must agree whenever a combo exists.
std::optional<std::vector<std::pair<int, int>>> lex_least_weights(
    const std::vector<int>& terms, const Modulus& m, const WeightPair& w) {
  std::vector<std::pair<int, int>> pairs;
  for (int a : w.a.values())
    for (int b : w.b.values()) pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::pair<int, int>> chosen(terms.size());
  auto rec = [&](auto&& self, size_t i, int wsum, int bsum) -> bool {
    if (i == terms.size()) return wsum == 0 && bsum == 0;
    for (auto [a, b] : pairs) {
      chosen[i] = {a, b};
      if (self(self, i + 1, m.add(wsum, m.mul(a, terms[i])),
               m.add(bsum, m.mul(b, a))))
        return true;
    }
    return false;
  };
  if (!rec(rec, 0, 0, 0)) return std::nullopt;
  return chosen;
}

// Every sequence over Z_n of length 1..max_len, in counting order.
template <typename F>
void for_each_sequence(int n, int max_len, F&& f) {
  std::vector<int> t;
  auto rec = [&](auto&& self) -> void {
    if (!t.empty()) f(t);
    if (int(t.size()) == max_len) return;
    for (int v = 0; v < n; ++v) {
      t.push_back(v);
      self(self);
      t.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

TEST_CASE("step_set lists each distinct (a*x, b*a) step once, sorted") {
  Modulus m(7);
  WeightPair w{quadratic_residues(m), ResidueSet::of(7, {1, 3})};
  for (int x = 0; x < 7; ++x) {
    std::set<std::pair<int, int>> expect;
    for (int a : w.a.values())
      for (int b : w.b.values()) expect.insert({m.mul(a, x), m.mul(b, a)});
    StepList got = step_set(x, m, w);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::set<std::pair<int, int>>(got.begin(), got.end()) == expect);
    CHECK(got.size() == expect.size());
  }
}

TEST_CASE("is_ab_zero_sum agrees with direct enumeration over Z_5") {
  Modulus m(5);
  std::vector<WeightPair> pairs = {
      qp_one(5),
      {quadratic_residues(m), ResidueSet::of(5, {0})},
      {ResidueSet::of(5, {1, 2}), ResidueSet::of(5, {1, 3})},
  };
  for (const WeightPair& w : pairs) {
    for_each_sequence(5, 4, [&](const std::vector<int>& t) {
      Sequence s(m, t);
      auto cert = is_ab_zero_sum(s, w);
      CHECK(cert.has_value() == oracle::terms_qualify(t, m, w));
      if (cert) {
        std::string reason;
        CHECK(check_certificate(s, w, *cert, SubseqMode::any_nonempty(),
                                &reason));
        CHECK(cert->indices.size() == t.size());
      }
    });
  }
}

TEST_CASE("is_ab_zero_sum picks the lexicographically least weights") {
  Modulus m(5);
  for (const WeightPair& w :
       {qp_one(5), WeightPair{ResidueSet::of(5, {1, 2}),
                              ResidueSet::of(5, {1, 3})}}) {
    for_each_sequence(5, 3, [&](const std::vector<int>& t) {
      Sequence s(m, t);
      auto cert = is_ab_zero_sum(s, w);
      auto expect = lex_least_weights(t, m, w);
      REQUIRE(cert.has_value() == expect.has_value());
      if (cert) {
        for (size_t i = 0; i < t.size(); ++i) {
          CHECK(cert->a_weights[i] == (*expect)[i].first);
          CHECK(cert->b_weights[i] == (*expect)[i].second);
        }
      }
    });
  }
}

TEST_CASE("contiguous finder reports the first window") {
  Modulus m(5);
  WeightPair w = qp_one(5);
  for_each_sequence(5, 4, [&](const std::vector<int>& t) {
    Sequence s(m, t);
    auto cert = find_zero_sum_subsequence(s, w, SubseqMode::contiguous());
    std::optional<std::pair<size_t, size_t>> first;
    for (size_t i = 0; i < t.size() && !first; ++i)
      for (size_t j = i + 1; j <= t.size() && !first; ++j)
        if (oracle::terms_qualify({t.begin() + i, t.begin() + j}, m, w))
          first = {i, j};
    CHECK(cert.has_value() == first.has_value());
    if (cert) {
      std::vector<int> expect_idx;
      for (size_t k = first->first; k < first->second; ++k)
        expect_idx.push_back(int(k));
      CHECK(cert->indices == expect_idx);
    }
  });
}

TEST_CASE("engine, finder, and certificates agree with the oracle up to "
          "length 5") {
  // The full length-6 pass over Z_5 and Z_7 runs in the acceptance binary;
  // this keeps the per-build loop tight.
  for (int p : {5, 7}) {
    Modulus m(p);
    for (const WeightPair& w :
         {qp_one(p),
          WeightPair{quadratic_residues(m), ResidueSet::of(p, {0})}}) {
      uint64_t seen = 0;
      CHECK(oracle::equivalence_sweep(m, w, 5, &seen) == 0);
      CHECK(seen > 0);
    }
  }
}

TEST_CASE("empty and oversized requests are rejected") {
  Modulus m(5);
  WeightPair w = qp_one(5);
  Sequence empty(m, {});
  CHECK_THROWS_AS(is_ab_zero_sum(empty, w), EmptySequence);
  CHECK_THROWS_AS(
      find_zero_sum_subsequence(empty, w, SubseqMode::any_nonempty()),
      EmptySequence);
  Sequence s(m, {1, 2, 3});
  CHECK_THROWS_AS(
      find_zero_sum_subsequence(s, w, SubseqMode::exact_length(4)),
      LengthExceedsSequence);
  CHECK_THROWS_AS(SubseqMode::exact_length(0), std::invalid_argument);
}

TEST_CASE("certificate checking pinpoints each defect") {
  Modulus m(7);
  WeightPair w = qp_one(7);
  Sequence s(m, {1, 2, 4});
  auto base = is_ab_zero_sum(s, w);
  REQUIRE(base.has_value());
  std::string reason;
  CHECK(check_certificate(s, w, *base, SubseqMode::any_nonempty(), &reason));
  CHECK(reason.empty());

  auto expect_fail = [&](Certificate cert, const SubseqMode& mode,
                         const char* why) {
    std::string r;
    CHECK(!check_certificate(s, w, cert, mode, &r));
    CHECK(r == why);
  };

  Certificate c = *base;
  c.parent_hash ^= 1;
  expect_fail(c, SubseqMode::any_nonempty(), "parent-hash");

  c = *base;
  c.indices.clear();
  c.a_weights.clear();
  c.b_weights.clear();
  expect_fail(c, SubseqMode::any_nonempty(), "empty-certificate");

  c = *base;
  c.a_weights.pop_back();
  expect_fail(c, SubseqMode::any_nonempty(), "weight-count");

  c = *base;
  c.indices = {0, 1, 5};
  expect_fail(c, SubseqMode::any_nonempty(), "index-range");

  c = *base;
  c.indices = {0, 2, 2};
  expect_fail(c, SubseqMode::any_nonempty(), "index-order");

  c = *base;
  c.a_weights[0] = 3;  // unit but not a residue mod 7
  expect_fail(c, SubseqMode::any_nonempty(), "a-weight");

  c = *base;
  c.b_weights[0] = 0;
  expect_fail(c, SubseqMode::any_nonempty(), "b-weight");

  // Residue weights whose weighted sum misses zero.
  c = *base;
  c.a_weights = {2, 2, 4};
  c.b_weights = {1, 1, 1};
  expect_fail(c, SubseqMode::any_nonempty(), "a-sum");

  // Weighted sum zero but trace 3 != 0.
  c = *base;
  c.a_weights = {1, 1, 1};
  c.b_weights = {1, 1, 1};
  expect_fail(c, SubseqMode::any_nonempty(), "b-sum");

  // Mode-shape violations.
  c = *base;
  c.indices = {0, 2};
  c.a_weights = {1, 1};
  c.b_weights = {1, 1};
  expect_fail(c, SubseqMode::contiguous(), "not-contiguous");
  expect_fail(c, SubseqMode::exact_length(3), "wrong-length");

  Sequence other(Modulus(5), {1, 2, 4});
  std::string r;
  CHECK(!check_certificate(other, w, *base, SubseqMode::any_nonempty(), &r));
  CHECK(r == "modulus-mismatch");
}

TEST_CASE("sequence hashing pins the exact term list") {
  Modulus m(7);
  CHECK(sequence_hash(Sequence(m, {1, 2})) !=
        sequence_hash(Sequence(m, {2, 1})));
  CHECK(sequence_hash(Sequence(m, {1, 2})) !=
        sequence_hash(Sequence(m, {1, 2, 0})));
  CHECK(sequence_hash(Sequence(m, {1, 2})) ==
        sequence_hash(Sequence(Modulus(7), {1, 2})));
}
