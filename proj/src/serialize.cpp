#include "zswlab/serialize.hpp"

#include <cstdio>

#include <json.hpp>

#include "zswlab/errors.hpp"

namespace zswlab {

namespace {

using nlohmann::json;

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

uint64_t hash_from_hex(const std::string& s) {
  if (s.size() != 16) throw Error("parent_hash must be 16 hex digits");
  uint64_t h = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else throw Error("parent_hash must be lowercase hex");
    h = (h << 4) | uint64_t(d);
  }
  return h;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("malformed JSON");
  return j;
}

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw Error(std::string("missing list field: ") + key);
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer())
      throw Error(std::string("non-integer entry in ") + key);
    out.push_back(v.get<int>());
  }
  return out;
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw Error(std::string("missing integer field: ") + key);
  return j[key].get<int>();
}

std::string str_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(std::string("missing string field: ") + key);
  return j[key].get<std::string>();
}

json cert_obj(const Certificate& cert, int n) {
  return json{{"schema", "zswlab.certificate/1"},
              {"n", n},
              {"indices", cert.indices},
              {"a", cert.a_weights},
              {"b", cert.b_weights},
              {"parent_hash", hash_hex(cert.parent_hash)}};
}

Certificate cert_from_obj(const json& j, int* n_out) {
  if (str_field(j, "schema") != "zswlab.certificate/1")
    throw Error("unrecognized certificate schema");
  Certificate cert;
  cert.indices = int_list(j, "indices");
  cert.a_weights = int_list(j, "a");
  cert.b_weights = int_list(j, "b");
  cert.parent_hash = hash_from_hex(str_field(j, "parent_hash"));
  if (n_out) *n_out = int_field(j, "n");
  return cert;
}

ResidueSet set_from_list(int n, const std::vector<int>& xs) {
  if (n < 2 || n > kMaxModulus) throw Error("modulus out of range");
  for (int x : xs)
    if (x < 0 || x >= n) throw Error("weight outside [0, n)");
  return ResidueSet::from_values(n, xs);
}

}  // namespace

std::string certificate_to_json(const Certificate& cert, int n) {
  return cert_obj(cert, n).dump();
}

Certificate certificate_from_json(const std::string& text, int* n_out) {
  return cert_from_obj(parse(text), n_out);
}

std::string result_to_json(const ConstantResult& r) {
  json j{{"schema", "zswlab.result/1"},
         {"kind", std::string(1, kind_char(r.kind))},
         {"n", r.modulus.n()},
         {"a_set", r.a_set.values()},
         {"b_set", r.b_set.values()},
         {"value", r.value},
         {"witness", r.witness.terms},
         {"stats",
          {{"nodes_explored", r.stats.nodes_explored},
           {"orbits_pruned", r.stats.orbits_pruned},
           {"wall_time_s", r.stats.wall_time_s}}}};
  return j.dump();
}

std::string lemma_report_to_json(const LemmaReport& r) {
  json j{{"schema", "zswlab.lemma_report/1"},
         {"lemma", lemma_name(r.lemma_id)},
         {"p", r.prime.n()},
         {"inputs_checked", r.inputs_checked},
         {"pass", r.pass()},
         {"counterexamples", r.counterexamples},
         {"wall_time_s", r.wall_time_s},
         {"note", r.note}};
  return j.dump();
}

std::string claim_to_json(const LowerBoundClaim& c) {
  json j{{"schema", "zswlab.claim/1"},
         {"kind", std::string(1, kind_char(c.kind))},
         {"n", c.modulus.n()},
         {"a_set", c.a_set.values()},
         {"b_set", c.b_set.values()},
         {"bound", c.bound},
         {"witness", c.witness.terms},
         {"provenance", provenance_name(c.provenance)},
         {"checked_subsequence_count", c.checked_subsequences}};
  return j.dump();
}

std::string bundle_to_json(const Sequence& s, const WeightPair& w,
                           ConstantKind kind, const Certificate& cert) {
  json j{{"schema", "zswlab.bundle/1"},
         {"n", s.modulus.n()},
         {"terms", s.terms},
         {"a_set", w.a.values()},
         {"b_set", w.b.values()},
         {"kind", std::string(1, kind_char(kind))},
         {"certificate", cert_obj(cert, s.modulus.n())}};
  return j.dump(2);
}

ParsedBundle bundle_from_json(const std::string& text) {
  json j = parse(text);
  if (str_field(j, "schema") != "zswlab.bundle/1")
    throw Error("unrecognized bundle schema");
  const int n = int_field(j, "n");
  if (n < 2 || n > kMaxModulus) throw Error("modulus out of range");
  Modulus m(n);
  std::vector<int> terms = int_list(j, "terms");
  for (int t : terms)
    if (t < 0 || t >= n) throw Error("term outside [0, n)");
  ResidueSet a = set_from_list(n, int_list(j, "a_set"));
  ResidueSet b = set_from_list(n, int_list(j, "b_set"));
  const std::string kind_s = str_field(j, "kind");
  if (kind_s != "C" && kind_s != "D" && kind_s != "E")
    throw Error("kind must be C, D, or E");
  ConstantKind kind = kind_from_char(kind_s[0]);
  if (!j.contains("certificate") || !j["certificate"].is_object())
    throw Error("missing certificate object");
  int cn = 0;
  Certificate cert = cert_from_obj(j["certificate"], &cn);
  if (cn != n) throw Error("certificate modulus differs from bundle");
  return ParsedBundle{m, Sequence(m, std::move(terms)), a, b, kind, cert};
}

}  // namespace zswlab
