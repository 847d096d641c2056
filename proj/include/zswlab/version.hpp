#pragma once

namespace zswlab {

// Bumped whenever search or certificate semantics change; cache entries are
// keyed on it so stale results are never served across solver revisions.
inline constexpr const char* kSolverVersion = "0.1.0";

inline constexpr int kSchemaVersion = 1;

}  // namespace zswlab
