#pragma once

// Ground-truth reference implementations for the tests.  Everything here is
// direct enumeration over index subsets and weight assignments; none of it
// shares code with the library's reachability tables or canonical search.

#include <cstdint>
#include <vector>

#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"
#include "zswlab/sequence.hpp"

namespace oracle {

// Some assignment of one (a, b) weight per term makes both congruences
// vanish for exactly these terms.
bool terms_qualify(const std::vector<int>& terms, const zswlab::Modulus& m,
                   const zswlab::WeightPair& w);

// Mirror of is_good: a qualifying nonempty subset / contiguous window /
// subset of size exactly n exists.
bool sequence_good(const zswlab::Sequence& s, zswlab::ConstantKind kind,
                   const zswlab::WeightPair& w);

// Least k <= cap such that every length-k sequence over Z_n is good, or -1
// if the cap is reached first.  Kind C enumerates all n^k tuples; the
// subset kinds enumerate nondecreasing tuples only, which is enough because
// neither mode looks at term order.
int constant_by_enumeration(zswlab::ConstantKind kind, const zswlab::Modulus& m,
                            const zswlab::WeightPair& w, int cap);

// Engine-vs-oracle comparison of every sequence of length 1..max_len over
// Z_n in all three modes, also rechecking every certificate the engine
// returns.  Returns the number of disagreements (0 is a pass) and adds the
// number of sequences inspected to *inspected.
uint64_t equivalence_sweep(const zswlab::Modulus& m, const zswlab::WeightPair& w,
                           int max_len, uint64_t* inspected);

}  // namespace oracle
