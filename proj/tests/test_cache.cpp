#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "zswlab/cache.hpp"
#include "zswlab/ring.hpp"
#include "zswlab/search.hpp"

using namespace zswlab;
using nlohmann::json;

namespace {

std::string temp_cache() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/zswlab-cache-XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  static int counter = 0;
  return dir + "/cache" + std::to_string(counter++) + ".jsonl";
}

WeightPair qp_one(int p) {
  Modulus m(p);
  return {quadratic_residues(m), ResidueSet::of(p, {1})};
}

ConstantResult fake_result(ConstantKind kind, int p, int value,
                           std::vector<int> witness) {
  Modulus m(p);
  WeightPair w = qp_one(p);
  return ConstantResult{kind, m,       w.a, w.b, value,
                        Sequence(m, std::move(witness)), {}};
}

}  // namespace

TEST_CASE("cache stores and returns the newest matching entry") {
  ResultCache cache(temp_cache());
  Modulus m(5);
  WeightPair w = qp_one(5);

  CHECK(!cache.lookup(ConstantKind::D, m, w).has_value());

  cache.store(fake_result(ConstantKind::D, 5, 4, {0, 1, 2}));
  auto hit = cache.lookup(ConstantKind::D, m, w);
  REQUIRE(hit.has_value());
  CHECK(hit->value == 4);
  CHECK(hit->witness.terms == std::vector<int>{0, 1, 2});

  // Same key appended again: the later line wins.
  cache.store(fake_result(ConstantKind::D, 5, 7, {0, 0, 1}));
  hit = cache.lookup(ConstantKind::D, m, w);
  REQUIRE(hit.has_value());
  CHECK(hit->value == 7);

  // Different kind, modulus, or weights miss.
  CHECK(!cache.lookup(ConstantKind::E, m, w).has_value());
  CHECK(!cache.lookup(ConstantKind::D, Modulus(7), qp_one(7)).has_value());
  WeightPair zero{w.a, ResidueSet::of(5, {0})};
  CHECK(!cache.lookup(ConstantKind::D, m, zero).has_value());
}

TEST_CASE("malformed and foreign-version lines are passed over") {
  const std::string path = temp_cache();
  ResultCache cache(path);
  cache.store(fake_result(ConstantKind::D, 5, 4, {0, 1, 2}));

  // Corrupt the file by hand: garbage, a wrong-type line, and a line from
  // some other solver version claiming a different value.
  {
    std::ofstream out(path, std::ios::app);
    out << "this is not json\n";
    out << "[1,2,3]\n";
    json foreign{{"schema_version", 1},
                 {"solver_version", "99.0.0"},
                 {"n", 5},
                 {"kind", "D"},
                 {"a_set", {1, 4}},
                 {"b_set", {1}},
                 {"value", 2},
                 {"witness", {0}}};
    out << foreign.dump() << "\n";
    json wrong_schema = foreign;
    wrong_schema["solver_version"] = "0.1.0";
    wrong_schema["schema_version"] = 999;
    out << wrong_schema.dump() << "\n";
  }

  auto hit = cache.lookup(ConstantKind::D, Modulus(5), qp_one(5));
  REQUIRE(hit.has_value());
  CHECK(hit->value == 4);
}

TEST_CASE("stats survive the round trip") {
  ResultCache cache(temp_cache());
  ConstantResult r = fake_result(ConstantKind::C, 5, 6, {0, 1, 0, 2, 0});
  r.stats.nodes_explored = 123;
  r.stats.orbits_pruned = 45;
  r.stats.wall_time_s = 0.25;
  cache.store(r);

  auto hit = cache.lookup(ConstantKind::C, Modulus(5), qp_one(5));
  REQUIRE(hit.has_value());
  CHECK(hit->stats.nodes_explored == 123);
  CHECK(hit->stats.orbits_pruned == 45);
  CHECK(hit->stats.wall_time_s == doctest::Approx(0.25));
}

TEST_CASE("resolve_path prefers the flag over the environment") {
  unsetenv("ZSWLAB_CACHE");
  CHECK(ResultCache::resolve_path("") == "");
  CHECK(ResultCache::resolve_path("/x/y.jsonl") == "/x/y.jsonl");

  setenv("ZSWLAB_CACHE", "/env/cache.jsonl", 1);
  CHECK(ResultCache::resolve_path("") == "/env/cache.jsonl");
  CHECK(ResultCache::resolve_path("/flag.jsonl") == "/flag.jsonl");
  unsetenv("ZSWLAB_CACHE");
}
