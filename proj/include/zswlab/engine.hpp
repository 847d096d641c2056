#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zswlab/pair_table.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/sequence.hpp"

namespace zswlab {

/// Which subsequences qualify when hunting for a weighted zero-sum:
/// any nonempty index subset, a contiguous window, or subsets of one
/// exact size.
struct SubseqMode {
  enum class Kind { AnyNonempty, Contiguous, ExactLength };

  Kind kind = Kind::AnyNonempty;
  int length = 0;  // used by ExactLength only

  static SubseqMode any_nonempty() { return {Kind::AnyNonempty, 0}; }
  static SubseqMode contiguous() { return {Kind::Contiguous, 0}; }
  static SubseqMode exact_length(int len);

  friend bool operator==(const SubseqMode&, const SubseqMode&) = default;
};

/// Verifiable witness that a subsequence is an (A, B)-weighted zero-sum:
/// indices into the parent sequence plus one (a, b) weight per index, with
/// sum(a_i * x_i) = 0 and sum(b_i * a_i) = 0 mod n.  parent_hash pins the
/// parent term list (see sequence_hash).
struct Certificate {
  std::vector<int> indices;
  std::vector<int> a_weights;
  std::vector<int> b_weights;
  uint64_t parent_hash = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Deduplicated, sorted list of (a*x, b*a) steps a term x can contribute.
StepList step_set(int x, const Modulus& m, const WeightPair& w);

/// Does the WHOLE sequence admit weights making both congruences vanish?
/// Deterministic output: scanning left to right, each term gets the
/// smallest (a, b) pair (lexicographic by residue value) that still allows
/// completion.  Throws EmptySequence on k = 0.
std::optional<Certificate> is_ab_zero_sum(const Sequence& s,
                                          const WeightPair& w);

/// Find a qualifying subsequence under the given mode, or nullopt.
/// Deterministic: for subset modes the scan prefers using a term whenever a
/// completion remains possible (smallest usable (a, b) first) and stops as
/// soon as both congruences close; for contiguous mode the window with the
/// smallest start, then smallest end, is reported.
/// Throws EmptySequence on k = 0 and LengthExceedsSequence when an
/// ExactLength mode asks for more terms than the sequence has.
std::optional<Certificate> find_zero_sum_subsequence(const Sequence& s,
                                                     const WeightPair& w,
                                                     const SubseqMode& mode);

/// Recheck a certificate against a sequence from scratch (no DP shared with
/// the finders above).  Returns false and fills `reason` on any defect.
bool check_certificate(const Sequence& s, const WeightPair& w,
                       const Certificate& cert, const SubseqMode& mode,
                       std::string* reason = nullptr);

}  // namespace zswlab
