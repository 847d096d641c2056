#include "zswlab/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "zswlab/errors.hpp"
#include "zswlab/version.hpp"

namespace zswlab {

namespace {

using nlohmann::json;

std::string utc_now_iso8601() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {}

std::optional<ConstantResult> ResultCache::lookup(ConstantKind kind,
                                                  const Modulus& m,
                                                  const WeightPair& w) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<ConstantResult> hit;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    bool usable =
        !j.is_discarded() && j.is_object() &&
        j.value("schema_version", -1) == kSchemaVersion &&
        j.value("solver_version", "") == kSolverVersion &&
        j.contains("n") && j["n"].is_number_integer() &&
        j.contains("kind") && j["kind"].is_string() &&
        j.contains("a_set") && j["a_set"].is_array() &&
        j.contains("b_set") && j["b_set"].is_array() &&
        j.contains("value") && j["value"].is_number_integer() &&
        j.contains("witness") && j["witness"].is_array();
    if (!usable) {
      if (j.is_discarded() || !j.is_object())
        std::fprintf(stderr, "warning: %s:%d: skipping malformed line\n",
                     path_.c_str(), lineno);
      continue;  // silently pass over entries from other versions
    }
    if (j["n"].get<int>() != m.n()) continue;
    if (j["kind"].get<std::string>() != std::string(1, kind_char(kind)))
      continue;
    try {
      std::vector<int> av = j["a_set"].get<std::vector<int>>();
      std::vector<int> bv = j["b_set"].get<std::vector<int>>();
      if (ResidueSet::from_values(m.n(), av) != w.a ||
          ResidueSet::from_values(m.n(), bv) != w.b)
        continue;
      ConstantResult r{kind,
                       m,
                       w.a,
                       w.b,
                       j["value"].get<int>(),
                       Sequence(m, j["witness"].get<std::vector<int>>()),
                       {}};
      if (j.contains("stats") && j["stats"].is_object()) {
        const json& s = j["stats"];
        r.stats.nodes_explored = s.value("nodes_explored", uint64_t{0});
        r.stats.orbits_pruned = s.value("orbits_pruned", uint64_t{0});
        r.stats.wall_time_s = s.value("wall_time_s", 0.0);
      }
      hit = std::move(r);  // newest entry wins
    } catch (const std::exception&) {
      std::fprintf(stderr, "warning: %s:%d: skipping malformed line\n",
                   path_.c_str(), lineno);
    }
  }
  return hit;
}

void ResultCache::store(const ConstantResult& r) const {
  json j{{"schema_version", kSchemaVersion},
         {"solver_version", kSolverVersion},
         {"timestamp", utc_now_iso8601()},
         {"n", r.modulus.n()},
         {"kind", std::string(1, kind_char(r.kind))},
         {"a_set", r.a_set.values()},
         {"b_set", r.b_set.values()},
         {"value", r.value},
         {"witness", r.witness.terms},
         {"stats",
          {{"nodes_explored", r.stats.nodes_explored},
           {"orbits_pruned", r.stats.orbits_pruned},
           {"wall_time_s", r.stats.wall_time_s}}}};
  const std::string line = j.dump() + "\n";

  int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error("cannot open cache file: " + path_);
  if (::flock(fd, LOCK_EX) != 0) {
    ::close(fd);
    throw Error("cannot lock cache file: " + path_);
  }
  ssize_t written = ::write(fd, line.data(), line.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != ssize_t(line.size()))
    throw Error("short write to cache file: " + path_);
}

std::string ResultCache::resolve_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("ZSWLAB_CACHE");
  return env ? env : "";
}

}  // namespace zswlab
