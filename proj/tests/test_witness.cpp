#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "zswlab/errors.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"
#include "zswlab/sequence.hpp"
#include "zswlab/witness.hpp"

using namespace zswlab;

namespace {

WeightPair qp_one(int p) {
  Modulus m(p);
  return {quadratic_residues(m), ResidueSet::of(p, {1})};
}

// No residue weights a, b can kill a*x + b*y.
bool pair_is_bad(int x, int y, const Modulus& m) {
  for (int a : quadratic_residues(m).values())
    for (int b : quadratic_residues(m).values())
      if (m.add(m.mul(a, x), m.mul(b, y)) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("bad_pair finds the least co-unkillable partner of 1") {
  const std::vector<std::pair<int, int>> expect = {
      {3, 1}, {5, 2}, {7, 1}, {11, 1}, {13, 2}};
  for (auto [p, y] : expect) {
    Modulus m(p);
    auto [x, got] = bad_pair(m);
    CHECK(x == 1);
    CHECK(got == y);
    CHECK(pair_is_bad(x, got, m));
    for (int smaller = 1; smaller < got; ++smaller)
      CHECK(!pair_is_bad(x, smaller, m));
  }
}

TEST_CASE("window-free constructions depend on whether -1 is a square") {
  {
    LowerBoundClaim c = c_lower_witness(Modulus(5));  // -1 = 4 is a square
    CHECK(c.bound == 6);
    CHECK(c.witness.terms == std::vector<int>{0, 1, 0, 2, 0});
    CHECK(c.kind == ConstantKind::C);
    CHECK(c.provenance == Provenance::Construction);
    bool holds = false;
    uint64_t checked = recheck_claim(c, &holds);
    CHECK(holds);
    CHECK(checked == 15);  // all windows of a length-5 sequence
    CHECK(validate_witness(c.witness, ConstantKind::C, qp_one(5)));
  }
  {
    LowerBoundClaim c = c_lower_witness(Modulus(7));  // -1 is not
    CHECK(c.bound == 9);
    CHECK(c.witness.terms == std::vector<int>{0, 0, 1, 0, 0, 1, 0, 0});
    bool holds = false;
    recheck_claim(c, &holds);
    CHECK(holds);
    CHECK(validate_witness(c.witness, ConstantKind::C, qp_one(7)));
  }
}

TEST_CASE("subset-free constructions depend on whether -1 is a square") {
  {
    LowerBoundClaim c = d_lower_witness(Modulus(13));
    CHECK(c.bound == 4);
    CHECK(c.witness.length() == 3);
    CHECK(c.kind == ConstantKind::D);
    bool holds = false;
    uint64_t checked = recheck_claim(c, &holds);
    CHECK(holds);
    CHECK(checked == 7);  // nonempty subsets of 3 indices
    CHECK(validate_witness(c.witness, ConstantKind::D, qp_one(13)));
  }
  {
    LowerBoundClaim c = d_lower_witness(Modulus(11));
    CHECK(c.bound == 5);
    CHECK(c.witness.length() == 4);
    bool holds = false;
    recheck_claim(c, &holds);
    CHECK(holds);
    CHECK(validate_witness(c.witness, ConstantKind::D, qp_one(11)));
  }
}

TEST_CASE("full-length witnesses come from bounded search") {
  {
    LowerBoundClaim c = e_lower_witness(Modulus(5), qp_one(5));
    CHECK(c.bound == 9);
    CHECK(c.witness.length() == 8);
    CHECK(c.kind == ConstantKind::E);
    CHECK(c.provenance == Provenance::Search);
    bool holds = false;
    recheck_claim(c, &holds);
    CHECK(holds);
  }
  {
    LowerBoundClaim c = e_lower_witness(Modulus(7), qp_one(7));
    CHECK(c.bound == 9);
    CHECK(c.witness.length() == 8);
    bool holds = false;
    recheck_claim(c, &holds);
    CHECK(holds);
  }
  {
    // With B = {0} the second congruence is vacuous and p+1 terms suffice.
    Modulus m(5);
    WeightPair w{quadratic_residues(m), ResidueSet::of(5, {0})};
    LowerBoundClaim c = e_lower_witness(m, w);
    CHECK(c.bound == 7);
    CHECK(c.witness.length() == 6);
    bool holds = false;
    recheck_claim(c, &holds);
    CHECK(holds);
  }
  CHECK_THROWS_AS(e_lower_witness(Modulus(17), qp_one(17)),
                  UnsupportedPrime);
}

TEST_CASE("recheck rejects claims whose witness is actually good") {
  Modulus m(5);
  // (1,1) admits weights (1,4), so the claimed bound is false.
  LowerBoundClaim fake{ConstantKind::D,
                       m,
                       quadratic_residues(m),
                       ResidueSet::of(5, {1}),
                       3,
                       Sequence(m, {1, 1}),
                       Provenance::Construction,
                       0};
  bool holds = true;
  uint64_t checked = recheck_claim(fake, &holds);
  CHECK(!holds);
  CHECK(checked >= 1);
}

TEST_CASE("provenance labels") {
  CHECK(std::string(provenance_name(Provenance::Construction)) ==
        "construction");
  CHECK(std::string(provenance_name(Provenance::Search)) == "search");
}
