#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zswlab/engine.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/sequence.hpp"

namespace zswlab {

/// Each id names one verifiable statement about residue weights over Z_p.
///
///   CM        three dilated residue-set copies cover Z_p (p >= 7)
///   ZS        >= 3 nonzero terms admit residue weights summing to zero
///   NSS       a zero-sum combo with nonzero trace extends across two
///             appended zeros into a full (Q_p, {1}) certificate
///   THREE_Z   >= 3 nonzero terms extend across three appended zeros
///   EH        restricted sumset bound: full line or >= 2|X| - 3
///   NSPART    distinct residue pair hits any restricted-sum target while
///             avoiding one forbidden trace
///   NS        same for any unit target when p >= 11
///   NS7       sequence plus distinct same-coset pair: zero sum, nonzero
///             trace (p >= 11, >= 1 nonzero term)
///   NS_PRIME  the p = 7 variant (>= 2 nonzero terms)
///   L2        two zeros plus >= 3 nonzero terms form a full certificate
///             (p = 1 mod 4, p >= 7)
///   NSC       distinct nonzero triple: zero sum, nonzero trace (p >= 11)
///   LS        same-coset pair admits residue weights killing the sum
///             (p = 1 mod 4)
///   QP1       no (Q_p, {1}) certificate has length <= 2 when p = 3 mod 4
///   QP2       same for (Q_p, B) with any nonempty B inside Q_p
///   Q51       over Z_5, length-5 full certificates match plain zero sums
///   CD        sumset cardinality bound min(p, |X| + |Y| - 1)
enum class LemmaId {
  CM,
  ZS,
  NSS,
  THREE_Z,
  EH,
  NSPART,
  NS,
  NS7,
  NS_PRIME,
  L2,
  NSC,
  LS,
  QP1,
  QP2,
  Q51,
  CD,
};

const char* lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(std::string_view name);
const std::vector<LemmaId>& all_lemmas();
/// One-line statement of what the id checks.
const char* lemma_summary(LemmaId id);
/// Does p satisfy the statement's hypothesis?
bool lemma_supports(LemmaId id, const Modulus& p);

struct LemmaReport {
  LemmaId lemma_id;
  Modulus prime;
  uint64_t inputs_checked = 0;
  std::vector<std::string> counterexamples;  // empty means pass
  double wall_time_s = 0.0;
  std::string note;  // enumeration domain, including any size caps

  bool pass() const { return counterexamples.empty(); }
};

/// Chosen weights c_i with their weighted sum and their own plain sum.
struct WeightedCombo {
  std::vector<int> coefficients;
  int value = 0;  // sum of c_i * x_i
  int trace = 0;  // sum of c_i
};

WeightedCombo make_combo(const Modulus& m, const std::vector<int>& terms,
                         std::vector<int> coefficients);

/// Least (c1,c2,c3) in residue-set^3 with c1*x1 + c2*x2 + c3*x3 = target.
/// Requires p >= 7 and unit x's; throws PrimeTooSmall below 7 and
/// NoSolution if the scan finds nothing.
std::array<int, 3> solve_three_cover(int x1, int x2, int x3, int target,
                                     const Modulus& p);

/// Residue weights with weighted sum zero for a sequence with >= 3 nonzero
/// terms: the first three nonzero terms absorb the rest (coefficient 1)
/// via solve_three_cover.  Throws PreconditionViolated.
WeightedCombo qp_zero_sum_combo(const Sequence& s);

/// (c, c') in residue-set^2 with c*x + c'*x' = z and c + c' != t.
/// x != x' must share a coset; z must decompose as a sum of two distinct
/// residues (after coset normalization).  Throws HypothesisUnmet.
std::pair<int, int> solve_pair_avoiding_trace(int x, int xp, int z, int t,
                                              const Modulus& p);

/// Full certificate over T with `zeros` zeros appended, B = {1}.
/// zeros = 3 needs >= 3 nonzero terms; zeros = 2 needs some combo with
/// weighted sum zero and nonzero trace (found constructively, falling back
/// to bounded enumeration).  Throws HypothesisUnmet.  The appended zeros
/// absorb a three-term cover, so p >= 7 is required (PrimeTooSmall below).
Certificate extend_with_zeros(const Sequence& t, int zeros);

/// Exhaustive check of the statement at p, splitting the enumeration
/// across `jobs` workers.  Deterministic output for any job count.
/// Throws UnsupportedPrime when p fails the hypothesis.
LemmaReport verify_lemma(LemmaId id, const Modulus& p, int jobs = 1);

}  // namespace zswlab
