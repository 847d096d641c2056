#pragma once

#include <optional>
#include <string>

#include "zswlab/search.hpp"

namespace zswlab {

/// Append-only JSON-lines result cache keyed by (n, A, B, kind) under the
/// current solver version.  Malformed lines are skipped with a warning on
/// stderr; concurrent appenders are serialized by an advisory file lock.
class ResultCache {
 public:
  explicit ResultCache(std::string path);

  /// Newest matching entry, or nullopt.  A missing file is an empty cache.
  std::optional<ConstantResult> lookup(ConstantKind kind, const Modulus& m,
                                       const WeightPair& w) const;

  /// Appends one entry line, creating the file if needed.
  void store(const ConstantResult& r) const;

  const std::string& path() const { return path_; }

  /// Flag value if nonempty, else the ZSWLAB_CACHE environment variable,
  /// else empty (caching disabled).
  static std::string resolve_path(const std::string& flag_value);

 private:
  std::string path_;
};

}  // namespace zswlab
