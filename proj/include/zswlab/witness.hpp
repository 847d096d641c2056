#pragma once

#include <cstdint>
#include <utility>

#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"
#include "zswlab/sequence.hpp"

namespace zswlab {

/// How a lower-bound witness was obtained: a closed-form construction or a
/// bounded depth-first search.
enum class Provenance { Construction, Search };

const char* provenance_name(Provenance p);

/// A machine-checked lower bound: `witness` has length bound-1 and no
/// qualifying subsequence under `kind` with weights (a, b), so the constant
/// is at least `bound`.  checked_subsequences counts the index sets the
/// independent validator enumerated (windows for C, subsets otherwise).
struct LowerBoundClaim {
  ConstantKind kind;
  Modulus modulus;
  ResidueSet a_set;
  ResidueSet b_set;
  int bound = 0;
  Sequence witness;
  Provenance provenance = Provenance::Construction;
  uint64_t checked_subsequences = 0;
};

/// Unit pair (x, y) with no residue weights a, b making a*x + b*y vanish;
/// x = 1 and y is the least unit that works.  Checked by direct
/// enumeration.  Throws NotFound if no y works (cannot happen for an odd
/// prime: half the units miss the residue coset once -x is factored in).
std::pair<int, int> bad_pair(const Modulus& p);

/// Window-free sequence built around bad_pair: (0,x,0,y,0) giving bound 6
/// when -1 is a residue, (0,0,x,0,0,y,0,0) giving bound 9 otherwise.
/// Kind C with weights (Q_p, {1}).
LowerBoundClaim c_lower_witness(const Modulus& p);

/// Subset-free sequence built around bad_pair: (x,y,0) giving bound 4 when
/// -1 is a residue, (x,y,0,0) giving bound 5 otherwise.  Kind D with
/// weights (Q_p, {1}).
LowerBoundClaim d_lower_witness(const Modulus& p);

/// Bad sequence one term longer than the modulus (two longer for the one
/// weight pair whose constant is known to sit higher), found by bounded
/// search.  Kind E.  Throws NotFound if the search budget runs out.
LowerBoundClaim e_lower_witness(const Modulus& p, const WeightPair& w);

/// Re-check a claim from scratch: enumerate every qualifying index set for
/// the kind and run plain weight odometers / a small grid walk over it,
/// sharing no code with the search engine.  Returns the number of index
/// sets inspected and sets `holds` to whether the witness is truly bad.
uint64_t recheck_claim(const LowerBoundClaim& claim, bool* holds);

}  // namespace zswlab
