#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "zswlab/errors.hpp"

namespace zswlab {

// Residues are plain ints in [0, n).  n is capped at 64 so every residue set
// fits in one machine word and set algebra stays word-parallel.
inline constexpr int kMaxModulus = 64;

/// Rotate the low n bits of `bits` left by k positions (k in [0, n)).
inline uint64_t rotl_mod(uint64_t bits, int k, int n) {
  if (k == 0) return bits;
  const uint64_t mask =
      (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
  return ((bits << k) | (bits >> (n - k))) & mask;
}

/// A validated modulus n with 2 <= n <= 64.  Primality is decided by trial
/// division at construction; the quadratic-residue mask is precomputed once
/// for odd primes and reused by every coset query.
class Modulus {
 public:
  explicit Modulus(int n);

  int n() const { return n_; }
  bool is_odd_prime() const { return odd_prime_; }
  uint64_t full_mask() const {
    return (n_ == 64) ? ~uint64_t{0} : ((uint64_t{1} << n_) - 1);
  }

  int reduce(long long x) const {
    long long r = x % n_;
    return int(r < 0 ? r + n_ : r);
  }
  int add(int a, int b) const {
    int s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  int sub(int a, int b) const {
    int s = a - b;
    return s < 0 ? s + n_ : s;
  }
  int mul(int a, int b) const {
    return int((long long)a * (long long)b % n_);
  }
  int neg(int a) const { return a == 0 ? 0 : n_ - a; }

  bool is_unit(int x) const;
  /// Multiplicative inverse of a unit (extended Euclid, works for any n).
  int inv(int x) const;

  /// Bitmask of the nonzero squares; requires an odd prime modulus.
  uint64_t qr_bits() const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  int n_;
  bool odd_prime_;
  uint64_t qr_bits_ = 0;
};

/// Subset of Z_n as a single-word bit-vector.
struct ResidueSet {
  int n = 0;
  uint64_t bits = 0;

  ResidueSet() = default;
  ResidueSet(int n_, uint64_t bits_) : n(n_), bits(bits_) {}

  static ResidueSet empty_set(int n) { return ResidueSet(n, 0); }
  static ResidueSet of(int n, std::initializer_list<int> xs);
  /// Validates every element lies in [0, n).
  static ResidueSet from_values(int n, const std::vector<int>& xs);

  bool contains(int x) const { return (bits >> x) & 1; }
  void insert(int x) { bits |= uint64_t{1} << x; }
  int size() const { return __builtin_popcountll(bits); }
  bool empty() const { return bits == 0; }
  std::vector<int> values() const;
  std::string to_string() const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;
};

ResidueSet units(const Modulus& m);
/// Nonzero squares Q_p = {x^2 : x a unit}; odd prime only.
ResidueSet quadratic_residues(const Modulus& m);
/// Units that are not squares; odd prime only.
ResidueSet nonresidues(const Modulus& m);

/// {x + y : x in X, y in Y}; both sets must share a modulus.
ResidueSet sumset(const ResidueSet& x, const ResidueSet& y);
/// {x + y : x != y, both in X}.  Empty for |X| <= 1.
ResidueSet restricted_sumset(const ResidueSet& x);
/// {u*x : x in X}; u must be a unit mod X.n.
ResidueSet dilate(const ResidueSet& x, int u);

enum class Coset { Zero, QP, NP };

/// Which multiplicative coset x falls into: 0, the squares, or the rest.
Coset coset_of(int x, const Modulus& m);

const char* coset_name(Coset c);

/// Weight-set pair (A, B): A nonempty without 0, B nonempty (0 permitted,
/// which turns the B-side congruence into a tautology when B = {0}).
struct WeightPair {
  ResidueSet a, b;

  WeightPair(ResidueSet a_, ResidueSet b_);

  int n() const { return a.n; }
  /// True when B is exactly {1}; translation symmetry is sound only then.
  bool b_is_one() const { return b.bits == 2; }
};

}  // namespace zswlab
