#include "zswlab/sequence.hpp"

#include <stdexcept>

namespace zswlab {

Sequence::Sequence(Modulus m, std::vector<int> t)
    : modulus(m), terms(std::move(t)) {
  for (int x : terms)
    if (x < 0 || x >= modulus.n())
      throw std::invalid_argument("sequence term " + std::to_string(x) +
                                  " out of range mod " +
                                  std::to_string(modulus.n()));
}

Sequence translate(const Sequence& s, int x) {
  std::vector<int> t;
  t.reserve(s.terms.size());
  for (int v : s.terms) t.push_back(s.modulus.add(v, s.modulus.reduce(x)));
  return Sequence(s.modulus, std::move(t));
}

Sequence dilate(const Sequence& s, int u) {
  if (!s.modulus.is_unit(u))
    throw NonUnitDilation("sequence dilation by non-unit " +
                          std::to_string(u));
  std::vector<int> t;
  t.reserve(s.terms.size());
  for (int v : s.terms) t.push_back(s.modulus.mul(u, v));
  return Sequence(s.modulus, std::move(t));
}

uint64_t sequence_hash(const Sequence& s) {
  uint64_t h = 14695981039346656037ull;
  for (int v : s.terms) {
    uint64_t x = uint64_t(v);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (x >> (8 * byte)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::string to_string(const Sequence& s) {
  std::string out = "(";
  for (size_t i = 0; i < s.terms.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.terms[i]);
  }
  return out + ")";
}

}  // namespace zswlab
