#include "zswlab/ring.hpp"

#include <numeric>
#include <stdexcept>

namespace zswlab {

namespace {

bool trial_division_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Modulus::Modulus(int n) : n_(n) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument("modulus must be in [2, 64], got " +
                                std::to_string(n));
  odd_prime_ = (n % 2 == 1) && trial_division_prime(n);
  if (odd_prime_) {
    for (int x = 1; x < n_; ++x)
      qr_bits_ |= uint64_t{1} << ((long long)x * x % n_);
  }
}

bool Modulus::is_unit(int x) const {
  if (x < 0 || x >= n_) return false;
  return std::gcd(x, n_) == 1;
}

int Modulus::inv(int x) const {
  if (!is_unit(x))
    throw std::invalid_argument("inverse of non-unit " + std::to_string(x) +
                                " mod " + std::to_string(n_));
  // extended Euclid on (x, n)
  int a = x, b = n_, u = 1, v = 0;
  while (b != 0) {
    int q = a / b;
    a -= q * b;
    std::swap(a, b);
    u -= q * v;
    std::swap(u, v);
  }
  return reduce(u);
}

uint64_t Modulus::qr_bits() const {
  if (!odd_prime_)
    throw NotOddPrime("quadratic residues need an odd prime, got n=" +
                      std::to_string(n_));
  return qr_bits_;
}

ResidueSet ResidueSet::of(int n, std::initializer_list<int> xs) {
  ResidueSet s(n, 0);
  for (int x : xs) s.insert(x);
  return s;
}

ResidueSet ResidueSet::from_values(int n, const std::vector<int>& xs) {
  ResidueSet s(n, 0);
  for (int x : xs) {
    if (x < 0 || x >= n)
      throw std::invalid_argument("residue " + std::to_string(x) +
                                  " out of range mod " + std::to_string(n));
    s.insert(x);
  }
  return s;
}

std::vector<int> ResidueSet::values() const {
  std::vector<int> out;
  out.reserve(size());
  for (uint64_t b = bits; b; b &= b - 1)
    out.push_back(__builtin_ctzll(b));
  return out;
}

std::string ResidueSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int x : values()) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

ResidueSet units(const Modulus& m) {
  ResidueSet s(m.n(), 0);
  for (int x = 1; x < m.n(); ++x)
    if (m.is_unit(x)) s.insert(x);
  return s;
}

ResidueSet quadratic_residues(const Modulus& m) {
  return ResidueSet(m.n(), m.qr_bits());
}

ResidueSet nonresidues(const Modulus& m) {
  return ResidueSet(m.n(), units(m).bits & ~m.qr_bits());
}

ResidueSet sumset(const ResidueSet& x, const ResidueSet& y) {
  if (x.n != y.n)
    throw ModulusMismatch("sumset over different moduli " +
                          std::to_string(x.n) + " and " + std::to_string(y.n));
  ResidueSet out(x.n, 0);
  for (uint64_t b = x.bits; b; b &= b - 1)
    out.bits |= rotl_mod(y.bits, __builtin_ctzll(b), x.n);
  return out;
}

ResidueSet restricted_sumset(const ResidueSet& x) {
  ResidueSet out(x.n, 0);
  for (uint64_t b = x.bits; b; b &= b - 1) {
    int v = __builtin_ctzll(b);
    uint64_t others = x.bits & ~(uint64_t{1} << v);
    out.bits |= rotl_mod(others, v, x.n);
  }
  return out;
}

ResidueSet dilate(const ResidueSet& x, int u) {
  Modulus m(x.n);
  if (!m.is_unit(u))
    throw NonUnitDilation("dilation by non-unit " + std::to_string(u) +
                          " mod " + std::to_string(x.n));
  ResidueSet out(x.n, 0);
  for (uint64_t b = x.bits; b; b &= b - 1)
    out.insert(m.mul(u, __builtin_ctzll(b)));
  return out;
}

Coset coset_of(int x, const Modulus& m) {
  if (x == 0) return Coset::Zero;
  if ((m.qr_bits() >> x) & 1) return Coset::QP;
  return Coset::NP;
}

const char* coset_name(Coset c) {
  switch (c) {
    case Coset::Zero: return "zero";
    case Coset::QP: return "square";
    case Coset::NP: return "nonsquare";
  }
  return "?";
}

WeightPair::WeightPair(ResidueSet a_, ResidueSet b_) : a(a_), b(b_) {
  if (a.n != b.n)
    throw ModulusMismatch("weight sets over different moduli");
  if (a.empty()) throw std::invalid_argument("weight set A must be nonempty");
  if (a.contains(0)) throw std::invalid_argument("weight set A must omit 0");
  if (b.empty()) throw std::invalid_argument("weight set B must be nonempty");
}

}  // namespace zswlab
