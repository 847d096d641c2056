#pragma once

#include <string>

#include "zswlab/engine.hpp"
#include "zswlab/lemmas.hpp"
#include "zswlab/search.hpp"
#include "zswlab/witness.hpp"

namespace zswlab {

/// JSON text for a certificate: {schema, n, indices, a, b, parent_hash},
/// parent_hash as a 16-digit hex string.  Round-trips exactly.
std::string certificate_to_json(const Certificate& cert, int n);
/// Throws Error on malformed text, missing fields, or bad field types.
Certificate certificate_from_json(const std::string& text, int* n_out);

std::string result_to_json(const ConstantResult& r);
std::string lemma_report_to_json(const LemmaReport& r);
std::string claim_to_json(const LowerBoundClaim& c);

/// Self-contained bundle pairing a sequence, its weight sets, the constant
/// kind whose subsequence mode applies, and a certificate for it.
struct ParsedBundle {
  Modulus modulus;
  Sequence sequence;
  ResidueSet a_set, b_set;
  ConstantKind kind;
  Certificate certificate;
};

std::string bundle_to_json(const Sequence& s, const WeightPair& w,
                           ConstantKind kind, const Certificate& cert);
/// Throws Error on malformed text or inconsistent fields.
ParsedBundle bundle_from_json(const std::string& text);

}  // namespace zswlab
