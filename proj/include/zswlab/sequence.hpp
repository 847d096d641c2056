#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zswlab/ring.hpp"

namespace zswlab {

/// Finite sequence over Z_n.  Terms are stored in order; whether order
/// matters is up to the consumer (contiguous-window searches care, subset
/// searches do not).
struct Sequence {
  Modulus modulus;
  std::vector<int> terms;

  Sequence(Modulus m, std::vector<int> t);

  int length() const { return int(terms.size()); }
  bool empty() const { return terms.empty(); }
};

/// Term-wise x_i + x.
Sequence translate(const Sequence& s, int x);
/// Term-wise u * x_i; u must be a unit.
Sequence dilate(const Sequence& s, int u);

/// FNV-1a over the terms, each encoded as 8 little-endian bytes.  This is
/// the digest certificates carry to pin down their parent sequence.
uint64_t sequence_hash(const Sequence& s);

std::string to_string(const Sequence& s);

}  // namespace zswlab
