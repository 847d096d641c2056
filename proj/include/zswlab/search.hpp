#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zswlab/engine.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/sequence.hpp"

namespace zswlab {

/// C: shortest length forcing a qualifying contiguous window.
/// D: shortest length forcing a qualifying nonempty subset.
/// E: shortest length forcing a qualifying subset of size exactly n.
enum class ConstantKind { C, D, E };

char kind_char(ConstantKind k);
ConstantKind kind_from_char(char c);

/// Subsequence mode the given constant kind quantifies over.
SubseqMode mode_for(ConstantKind kind, int n);

struct SearchConfig {
  /// Length cap; 0 picks the provable default (n*n for C, 2n-1 for D/E).
  int cap = 0;
  /// Prune search nodes that are not minimal in their unit-dilation orbit.
  bool use_scaling_symmetry = true;
  /// Translation pruning; unset means "on when sound".  Translations only
  /// preserve qualifying subsequences when B = {1}, so anything else is
  /// clamped off.
  std::optional<bool> use_translation_symmetry;
  /// Number of independent subtree shards (also the worker thread count).
  int shards = 1;
  /// Seconds between checkpoint rewrites while shards complete.
  double checkpoint_interval_s = 30.0;
  /// When nonempty, the search journals its frontier and finished shards
  /// here and can resume from the same file after an interruption.
  std::string checkpoint_path;
};

struct SearchStats {
  uint64_t nodes_explored = 0;  // bad canonical sequences visited
  uint64_t orbits_pruned = 0;   // children skipped as non-minimal
  double wall_time_s = 0.0;
};

struct ConstantResult {
  ConstantKind kind;
  Modulus modulus;
  ResidueSet a_set, b_set;
  int value = 0;
  Sequence witness;  // longest bad sequence found, length value-1
  SearchStats stats;
};

/// Does s contain a qualifying subsequence for this kind?  For kind E a
/// sequence shorter than n can never qualify and reports false.
bool is_good(const Sequence& s, ConstantKind kind, const WeightPair& w);

/// Lexicographically least member of the orbit of s under unit dilation
/// and (when enabled and sound) translation; kinds D and E also reorder
/// terms into nondecreasing order first.
Sequence canonicalize(const Sequence& s, ConstantKind kind,
                      const WeightPair& w, const SearchConfig& cfg = {});

/// True iff s has no qualifying subsequence, i.e. s witnesses a lower bound
/// of |s| + 1 for the constant.
bool validate_witness(const Sequence& s, ConstantKind kind,
                      const WeightPair& w);

/// Exhaustive computation of the constant: the least k such that every
/// length-k sequence over Z_n is good.  Deterministic for fixed inputs and
/// any shard count: same value, same witness.  Throws CapExceeded if a bad
/// sequence of the cap length still exists.
ConstantResult compute_constant(ConstantKind kind, const Modulus& m,
                                const WeightPair& w,
                                const SearchConfig& cfg = {});

/// First (in DFS order) bad canonical sequence of exactly this length, or
/// nullopt if none exists.  Throws NotFound when the node budget runs out
/// before the question is settled.
std::optional<Sequence> find_bad_sequence_of_length(
    ConstantKind kind, const Modulus& m, const WeightPair& w, int length,
    uint64_t node_budget = 1000000000ull);

}  // namespace zswlab
