#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "zswlab/ring.hpp"

namespace zswlab {

/// One (a, b) weight choice for a term x contributes the step
/// (a*x mod n, b*a mod n) to the running pair (sum, trace).
using StepList = std::vector<std::pair<int, int>>;

/// Bit-table over pair states (s, t) in Z_n x Z_n: row s holds bit t.
/// Fixed 64-row footprint keeps it trivially copyable for DP stacks.
struct PairTable {
  int n = 0;
  std::array<uint64_t, kMaxModulus> row{};

  static PairTable empty_table(int n) {
    PairTable t;
    t.n = n;
    return t;
  }
  static PairTable origin(int n) {
    PairTable t = empty_table(n);
    t.set(0, 0);
    return t;
  }

  bool test(int s, int t) const { return (row[s] >> t) & 1; }
  void set(int s, int t) { row[s] |= uint64_t{1} << t; }
  bool any() const {
    for (int s = 0; s < n; ++s)
      if (row[s]) return true;
    return false;
  }
  void or_with(const PairTable& o) {
    for (int s = 0; s < n; ++s) row[s] |= o.row[s];
  }

  friend bool operator==(const PairTable& a, const PairTable& b) {
    if (a.n != b.n) return false;
    for (int s = 0; s < a.n; ++s)
      if (a.row[s] != b.row[s]) return false;
    return true;
  }
};

/// dst |= { (s + da, t + db) : (s, t) in src, (da, db) in steps }.
inline void advance_into(const PairTable& src, const StepList& steps,
                         PairTable& dst) {
  const int n = src.n;
  for (const auto& [da, db] : steps) {
    for (int s = 0; s < n; ++s) {
      uint64_t bits = src.row[s];
      if (!bits) continue;
      int s2 = s + da;
      if (s2 >= n) s2 -= n;
      dst.row[s2] |= rotl_mod(bits, db, n);
    }
  }
}

inline PairTable advanced(const PairTable& src, const StepList& steps) {
  PairTable out = PairTable::empty_table(src.n);
  advance_into(src, steps, out);
  return out;
}

}  // namespace zswlab
