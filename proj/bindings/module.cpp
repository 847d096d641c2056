#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "zswlab/cache.hpp"
#include "zswlab/engine.hpp"
#include "zswlab/errors.hpp"
#include "zswlab/lemmas.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"
#include "zswlab/sequence.hpp"
#include "zswlab/serialize.hpp"
#include "zswlab/version.hpp"
#include "zswlab/witness.hpp"

namespace py = pybind11;
using namespace zswlab;

namespace {

ConstantKind kind_arg(const std::string& k) {
  if (k.size() == 1) {
    switch (k[0]) {
      case 'C': return ConstantKind::C;
      case 'D': return ConstantKind::D;
      case 'E': return ConstantKind::E;
    }
  }
  throw py::value_error("kind must be one of 'C', 'D', 'E'; got '" + k + "'");
}

LemmaId lemma_arg(const std::string& name) {
  auto id = lemma_from_name(name);
  if (!id) throw py::value_error("unknown lemma id '" + name + "'");
  return *id;
}

SubseqMode mode_arg(const std::string& kind, const Sequence& s) {
  return mode_for(kind_arg(kind), s.modulus.n());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "weighted zero-sum constants over Z_n: exact search, "
            "certificates, statement verifiers";
  m.attr("__version__") = kSolverVersion;

  // Base first so the derived translators, registered after, win.
  auto err = py::register_exception<Error>(m, "Error");
  py::register_exception<CapExceeded>(m, "CapExceeded", err.ptr());
  py::register_exception<HypothesisUnmet>(m, "HypothesisUnmet", err.ptr());
  py::register_exception<UnsupportedPrime>(m, "UnsupportedPrime", err.ptr());
  py::register_exception<NotFound>(m, "NotFound", err.ptr());
  py::register_exception<CheckpointCorrupt>(m, "CheckpointCorrupt",
                                            err.ptr());

  py::class_<Modulus>(m, "Modulus")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &Modulus::n)
      .def_property_readonly("is_odd_prime", &Modulus::is_odd_prime)
      .def("reduce", &Modulus::reduce)
      .def("add", &Modulus::add)
      .def("sub", &Modulus::sub)
      .def("mul", &Modulus::mul)
      .def("neg", &Modulus::neg)
      .def("inv", &Modulus::inv)
      .def("is_unit", &Modulus::is_unit)
      .def(py::self == py::self)
      .def("__repr__", [](const Modulus& mm) {
        return "Modulus(" + std::to_string(mm.n()) + ")";
      });

  py::class_<ResidueSet>(m, "ResidueSet")
      .def(py::init(&ResidueSet::from_values), py::arg("n"),
           py::arg("values"))
      .def_readonly("n", &ResidueSet::n)
      .def("contains", &ResidueSet::contains)
      .def("values", &ResidueSet::values)
      .def("__len__", &ResidueSet::size)
      .def("__contains__", &ResidueSet::contains)
      .def(py::self == py::self)
      .def("__repr__", &ResidueSet::to_string);

  m.def("units", &units);
  m.def("quadratic_residues", &quadratic_residues);
  m.def("nonresidues", &nonresidues);
  m.def("sumset", &sumset);
  m.def("restricted_sumset", &restricted_sumset);
  m.def(
      "dilate_set",
      [](const ResidueSet& x, int u) { return dilate(x, u); },
      py::arg("x"), py::arg("u"));

  py::class_<WeightPair>(m, "WeightPair")
      .def(py::init<ResidueSet, ResidueSet>(), py::arg("a"), py::arg("b"))
      .def_readonly("a", &WeightPair::a)
      .def_readonly("b", &WeightPair::b)
      .def_property_readonly("b_is_one", &WeightPair::b_is_one);

  py::class_<Sequence>(m, "Sequence")
      .def(py::init<Modulus, std::vector<int>>(), py::arg("modulus"),
           py::arg("terms"))
      .def_readonly("modulus", &Sequence::modulus)
      .def_readonly("terms", &Sequence::terms)
      .def("__len__", &Sequence::length)
      .def("translate",
           [](const Sequence& s, int x) { return translate(s, x); })
      .def("dilate", [](const Sequence& s, int u) { return dilate(s, u); })
      .def("hash", &sequence_hash)
      .def("__repr__",
           [](const Sequence& s) { return to_string(s); });

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("indices", &Certificate::indices)
      .def_readonly("a_weights", &Certificate::a_weights)
      .def_readonly("b_weights", &Certificate::b_weights)
      .def_readonly("parent_hash", &Certificate::parent_hash)
      .def(py::self == py::self);

  m.def(
      "is_ab_zero_sum",
      [](const Sequence& s, const WeightPair& w) {
        return is_ab_zero_sum(s, w);
      },
      py::arg("sequence"), py::arg("weights"),
      "Weights for the whole sequence, or None.");
  m.def(
      "find_zero_sum_subsequence",
      [](const Sequence& s, const WeightPair& w, const std::string& kind) {
        return find_zero_sum_subsequence(s, w, mode_arg(kind, s));
      },
      py::arg("sequence"), py::arg("weights"), py::arg("kind"),
      "Certificate of a qualifying subsequence under the kind's mode, "
      "or None.");
  m.def(
      "check_certificate",
      [](const Sequence& s, const WeightPair& w, const Certificate& cert,
         const std::string& kind) {
        std::string reason;
        bool ok = check_certificate(s, w, cert, mode_arg(kind, s), &reason);
        return py::make_tuple(ok, reason);
      },
      py::arg("sequence"), py::arg("weights"), py::arg("certificate"),
      py::arg("kind"), "(ok, reason); reason is empty when ok.");

  py::class_<SearchStats>(m, "SearchStats")
      .def_readonly("nodes_explored", &SearchStats::nodes_explored)
      .def_readonly("orbits_pruned", &SearchStats::orbits_pruned)
      .def_readonly("wall_time_s", &SearchStats::wall_time_s);

  py::class_<ConstantResult>(m, "ConstantResult")
      .def_property_readonly(
          "kind",
          [](const ConstantResult& r) {
            return std::string(1, kind_char(r.kind));
          })
      .def_property_readonly(
          "n", [](const ConstantResult& r) { return r.modulus.n(); })
      .def_readonly("a_set", &ConstantResult::a_set)
      .def_readonly("b_set", &ConstantResult::b_set)
      .def_readonly("value", &ConstantResult::value)
      .def_readonly("witness", &ConstantResult::witness)
      .def_readonly("stats", &ConstantResult::stats)
      .def("__repr__", [](const ConstantResult& r) {
        return std::string(1, kind_char(r.kind)) + "(" +
               std::to_string(r.modulus.n()) +
               ") = " + std::to_string(r.value);
      });

  m.def(
      "is_good",
      [](const Sequence& s, const std::string& kind, const WeightPair& w) {
        return is_good(s, kind_arg(kind), w);
      },
      py::arg("sequence"), py::arg("kind"), py::arg("weights"));
  m.def(
      "validate_witness",
      [](const Sequence& s, const std::string& kind, const WeightPair& w) {
        return validate_witness(s, kind_arg(kind), w);
      },
      py::arg("sequence"), py::arg("kind"), py::arg("weights"));
  m.def(
      "compute_constant",
      [](const std::string& kind, const Modulus& mod, const WeightPair& w,
         int cap, int shards, bool scaling, std::optional<bool> translation,
         const std::string& checkpoint) {
        SearchConfig cfg;
        cfg.cap = cap;
        cfg.shards = shards;
        cfg.use_scaling_symmetry = scaling;
        cfg.use_translation_symmetry = translation;
        cfg.checkpoint_path = checkpoint;
        py::gil_scoped_release release;
        return compute_constant(kind_arg(kind), mod, w, cfg);
      },
      py::arg("kind"), py::arg("modulus"), py::arg("weights"),
      py::arg("cap") = 0, py::arg("shards") = 1, py::arg("scaling") = true,
      py::arg("translation") = std::nullopt, py::arg("checkpoint") = "",
      "Exact value of the constant, with the longest bad sequence as "
      "witness.");
  m.def(
      "find_bad_sequence_of_length",
      [](const std::string& kind, const Modulus& mod, const WeightPair& w,
         int length) {
        py::gil_scoped_release release;
        return find_bad_sequence_of_length(kind_arg(kind), mod, w, length);
      },
      py::arg("kind"), py::arg("modulus"), py::arg("weights"),
      py::arg("length"));

  py::class_<LemmaReport>(m, "LemmaReport")
      .def_property_readonly(
          "lemma",
          [](const LemmaReport& r) {
            return std::string(lemma_name(r.lemma_id));
          })
      .def_property_readonly(
          "p", [](const LemmaReport& r) { return r.prime.n(); })
      .def_readonly("inputs_checked", &LemmaReport::inputs_checked)
      .def_readonly("counterexamples", &LemmaReport::counterexamples)
      .def_readonly("wall_time_s", &LemmaReport::wall_time_s)
      .def_readonly("note", &LemmaReport::note)
      .def_property_readonly("ok", &LemmaReport::pass)
      .def("__repr__", [](const LemmaReport& r) {
        return std::string(lemma_name(r.lemma_id)) + "@" +
               std::to_string(r.prime.n()) +
               (r.pass() ? ": pass" : ": FAIL");
      });

  m.def("lemma_names", [] {
    std::vector<std::string> out;
    for (LemmaId id : all_lemmas()) out.emplace_back(lemma_name(id));
    return out;
  });
  m.def(
      "lemma_summary",
      [](const std::string& name) {
        return std::string(lemma_summary(lemma_arg(name)));
      },
      py::arg("lemma"));
  m.def(
      "lemma_supports",
      [](const std::string& name, const Modulus& p) {
        return lemma_supports(lemma_arg(name), p);
      },
      py::arg("lemma"), py::arg("p"));
  m.def(
      "verify_lemma",
      [](const std::string& name, const Modulus& p, int jobs) {
        LemmaId id = lemma_arg(name);
        py::gil_scoped_release release;
        return verify_lemma(id, p, jobs);
      },
      py::arg("lemma"), py::arg("p"), py::arg("jobs") = 1,
      "Exhaustively check one statement at p; report counts and any "
      "counterexamples.");
  m.def(
      "extend_with_zeros",
      [](const Sequence& t, int zeros) { return extend_with_zeros(t, zeros); },
      py::arg("sequence"), py::arg("zeros"));

  py::class_<LowerBoundClaim>(m, "LowerBoundClaim")
      .def_property_readonly(
          "kind",
          [](const LowerBoundClaim& c) {
            return std::string(1, kind_char(c.kind));
          })
      .def_property_readonly(
          "n", [](const LowerBoundClaim& c) { return c.modulus.n(); })
      .def_readonly("a_set", &LowerBoundClaim::a_set)
      .def_readonly("b_set", &LowerBoundClaim::b_set)
      .def_readonly("bound", &LowerBoundClaim::bound)
      .def_readonly("witness", &LowerBoundClaim::witness)
      .def_property_readonly(
          "provenance",
          [](const LowerBoundClaim& c) {
            return std::string(provenance_name(c.provenance));
          })
      .def_readonly("checked_subsequences",
                    &LowerBoundClaim::checked_subsequences);

  m.def("bad_pair", &bad_pair, py::arg("p"));
  m.def("c_lower_witness", &c_lower_witness, py::arg("p"));
  m.def("d_lower_witness", &d_lower_witness, py::arg("p"));
  m.def("e_lower_witness", &e_lower_witness, py::arg("p"), py::arg("weights"));
  m.def(
      "recheck_claim",
      [](const LowerBoundClaim& claim) {
        bool holds = false;
        uint64_t checked = recheck_claim(claim, &holds);
        return py::make_tuple(holds, checked);
      },
      py::arg("claim"),
      "(holds, checked): independent re-validation of the claim.");

  m.def("certificate_to_json", &certificate_to_json, py::arg("certificate"),
        py::arg("n"));
  m.def(
      "certificate_from_json",
      [](const std::string& text) {
        int n = 0;
        Certificate cert = certificate_from_json(text, &n);
        return py::make_tuple(cert, n);
      },
      py::arg("text"), "(certificate, n)");
  m.def("result_to_json", &result_to_json);
  m.def("lemma_report_to_json", &lemma_report_to_json);
  m.def("claim_to_json", &claim_to_json);
  m.def(
      "bundle_to_json",
      [](const Sequence& s, const WeightPair& w, const std::string& kind,
         const Certificate& cert) {
        return bundle_to_json(s, w, kind_arg(kind), cert);
      },
      py::arg("sequence"), py::arg("weights"), py::arg("kind"),
      py::arg("certificate"));

  m.def("cache_resolve_path", &ResultCache::resolve_path,
        py::arg("flag_value") = std::string());
}
