#include "zswlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "zswlab/version.hpp"

namespace zswlab {

namespace {

using nlohmann::json;

// Per-node goodness state, extended and unwound in DFS order.
class Incremental {
 public:
  Incremental(ConstantKind kind, int n, int exact_len)
      : kind_(kind), n_(n), len_(exact_len) {
    switch (kind_) {
      case ConstantKind::D:
        d_stack_.push_back(PairTable::empty_table(n_));
        break;
      case ConstantKind::E: {
        std::vector<PairTable> root(len_ + 1, PairTable::empty_table(n_));
        root[0] = PairTable::origin(n_);
        e_stack_.push_back(std::move(root));
        break;
      }
      case ConstantKind::C:
        c_stack_.emplace_back();
        break;
    }
  }

  // Extend by one term; reports whether the extended sequence is good.
  bool push(const StepList& steps) {
    switch (kind_) {
      case ConstantKind::D: {
        PairTable next = d_stack_.back();
        PairTable src = d_stack_.back();
        src.set(0, 0);  // the empty subset can start using this term
        advance_into(src, steps, next);
        bool good = next.test(0, 0);
        d_stack_.push_back(next);
        return good;
      }
      case ConstantKind::E: {
        const auto& prev = e_stack_.back();
        std::vector<PairTable> next = prev;
        for (int c = len_; c >= 1; --c)
          advance_into(prev[c - 1], steps, next[c]);
        bool good = next[len_].test(0, 0);
        e_stack_.push_back(std::move(next));
        return good;
      }
      case ConstantKind::C: {
        const auto& prev = c_stack_.back();
        std::vector<PairTable> next;
        next.reserve(prev.size() + 1);
        bool good = false;
        for (const auto& tab : prev) {
          next.push_back(advanced(tab, steps));
          good = good || next.back().test(0, 0);
        }
        next.push_back(advanced(PairTable::origin(n_), steps));
        good = good || next.back().test(0, 0);
        c_stack_.push_back(std::move(next));
        return good;
      }
    }
    return false;
  }

  void pop() {
    switch (kind_) {
      case ConstantKind::D: d_stack_.pop_back(); break;
      case ConstantKind::E: e_stack_.pop_back(); break;
      case ConstantKind::C: c_stack_.pop_back(); break;
    }
  }

 private:
  ConstantKind kind_;
  int n_;
  int len_;
  std::vector<PairTable> d_stack_;
  std::vector<std::vector<PairTable>> e_stack_;
  std::vector<std::vector<PairTable>> c_stack_;
};

struct SubtreeResult {
  uint64_t nodes = 0;
  uint64_t pruned = 0;
  int best_depth = -1;
  std::vector<int> best;
  bool capped = false;

  void offer(int depth, const std::vector<int>& seq) {
    // strictly-deeper only: DFS visits equal depths in lex order, so the
    // first one seen is already the lexicographically least
    if (depth > best_depth) {
      best_depth = depth;
      best = seq;
    }
  }
  void merge(const SubtreeResult& o) {
    nodes += o.nodes;
    pruned += o.pruned;
    capped = capped || o.capped;
    if (o.best_depth > best_depth ||
        (o.best_depth == best_depth && o.best_depth >= 0 && o.best < best)) {
      best_depth = o.best_depth;
      best = o.best;
    }
  }
};

std::vector<std::vector<int>> orbit_perms(const Modulus& m, bool scaling,
                                          bool translation) {
  std::vector<std::vector<int>> perms;
  const int n = m.n();
  std::vector<int> us = scaling ? units(m).values() : std::vector<int>{1};
  const int t_max = translation ? n : 1;
  for (int u : us) {
    for (int t = 0; t < t_max; ++t) {
      if (u == 1 && t == 0) continue;
      std::vector<int> p(n);
      for (int x = 0; x < n; ++x) p[x] = m.reduce((long long)u * x + t);
      perms.push_back(std::move(p));
    }
  }
  return perms;
}

class BadSearch {
 public:
  BadSearch(ConstantKind kind, const Modulus& m, const WeightPair& w, int cap,
            bool scaling, bool translation)
      : kind_(kind),
        m_(m),
        n_(m.n()),
        cap_(cap),
        multiset_(kind != ConstantKind::C),
        inc_(kind, m.n(), kind == ConstantKind::E ? m.n() : 0),
        perms_(orbit_perms(m, scaling, translation)) {
    steps_.reserve(n_);
    for (int x = 0; x < n_; ++x) steps_.push_back(step_set(x, m, w));
  }

  // Explore from the empty root down to frontier_depth; nodes at that depth
  // are recorded (and counted) but not expanded.
  SubtreeResult run_root(int frontier_depth,
                         std::vector<std::vector<int>>* frontier,
                         std::atomic<bool>* stop) {
    reset(frontier_depth, frontier, stop);
    dfs(0);
    return take_result();
  }

  // Explore strict descendants of a known bad canonical prefix.
  SubtreeResult run_subtree(const std::vector<int>& prefix,
                            std::atomic<bool>* stop) {
    reset(-1, nullptr, stop);
    for (int x : prefix) {
      seq_.push_back(x);
      bool good = inc_.push(steps_[x]);
      assert(!good);
      (void)good;
    }
    explore_children(int(prefix.size()));
    for (size_t i = 0; i < prefix.size(); ++i) {
      inc_.pop();
      seq_.pop_back();
    }
    return take_result();
  }

  // First bad canonical node at exactly target depth, if any.
  std::optional<std::vector<int>> run_find(int target, uint64_t budget,
                                           bool* exhausted) {
    reset(-1, nullptr, nullptr);
    target_len_ = target;
    budget_ = budget;
    dfs(0);
    *exhausted = budget_exhausted_;
    return found_;
  }

  // Replays a node, reporting whether every prefix (and the node itself) is
  // bad; used to re-verify checkpointed frontiers.
  bool replay_is_bad(const std::vector<int>& prefix) {
    bool all_bad = true;
    size_t pushed = 0;
    for (int x : prefix) {
      if (x < 0 || x >= n_) {
        all_bad = false;
        break;
      }
      seq_.push_back(x);
      ++pushed;
      if (inc_.push(steps_[x])) {
        all_bad = false;
        break;
      }
    }
    for (size_t i = 0; i < pushed; ++i) {
      inc_.pop();
      seq_.pop_back();
    }
    return all_bad;
  }

  bool node_is_canonical(const std::vector<int>& node) {
    seq_ = node;
    bool ok = canonical_ok();
    seq_.clear();
    return ok;
  }

 private:
  void reset(int frontier_depth, std::vector<std::vector<int>>* frontier,
             std::atomic<bool>* stop) {
    res_ = SubtreeResult{};
    seq_.clear();
    frontier_depth_ = frontier_depth;
    frontier_ = frontier;
    stop_ = stop;
    target_len_ = -1;
    budget_ = ~uint64_t{0};
    budget_exhausted_ = false;
    found_.reset();
  }

  SubtreeResult take_result() { return res_; }

  // seq_ is the current (bad, canonical) node.
  void dfs(int depth) {
    ++res_.nodes;
    if (res_.nodes > budget_) {
      budget_exhausted_ = true;
      return;
    }
    if (target_len_ >= 0) {
      if (depth == target_len_) {
        found_ = seq_;
        return;
      }
    } else {
      res_.offer(depth, seq_);
    }
    if (depth >= cap_) {
      res_.capped = true;
      if (stop_) stop_->store(true);
      return;
    }
    if (frontier_ && depth == frontier_depth_) {
      frontier_->push_back(seq_);
      return;
    }
    explore_children(depth);
  }

  void explore_children(int depth) {
    const int first = (multiset_ && !seq_.empty()) ? seq_.back() : 0;
    for (int x = first; x < n_; ++x) {
      if (stop_ && stop_->load(std::memory_order_relaxed)) return;
      if (found_ || budget_exhausted_) return;
      seq_.push_back(x);
      if (!perms_.empty() && !canonical_ok()) {
        ++res_.pruned;
        seq_.pop_back();
        continue;
      }
      bool good = inc_.push(steps_[x]);
      if (!good) dfs(depth + 1);
      inc_.pop();
      seq_.pop_back();
    }
  }

  // Is seq_ lexicographically minimal in its orbit?
  bool canonical_ok() const {
    const int len = int(seq_.size());
    for (const auto& p : perms_) {
      if (multiset_) {
        int cnt[kMaxModulus] = {0};
        for (int v : seq_) ++cnt[p[v]];
        int i = 0;
        bool decided = false;
        for (int v = 0; v < n_ && !decided; ++v) {
          for (int c = cnt[v]; c > 0; --c) {
            if (v < seq_[i]) return false;
            if (v > seq_[i]) {
              decided = true;  // transformed is strictly greater
              break;
            }
            ++i;
          }
        }
      } else {
        for (int i = 0; i < len; ++i) {
          int v = p[seq_[i]];
          if (v < seq_[i]) return false;
          if (v > seq_[i]) break;
        }
      }
    }
    return true;
  }

  ConstantKind kind_;
  Modulus m_;
  int n_;
  int cap_;
  bool multiset_;
  Incremental inc_;
  std::vector<std::vector<int>> perms_;
  std::vector<StepList> steps_;

  SubtreeResult res_;
  std::vector<int> seq_;
  int frontier_depth_ = -1;
  std::vector<std::vector<int>>* frontier_ = nullptr;
  std::atomic<bool>* stop_ = nullptr;
  int target_len_ = -1;
  uint64_t budget_ = ~uint64_t{0};
  bool budget_exhausted_ = false;
  std::optional<std::vector<int>> found_;
};

int default_cap(ConstantKind kind, int n) {
  return kind == ConstantKind::C ? n * n : 2 * n - 1;
}

bool effective_translation(const SearchConfig& cfg, const WeightPair& w) {
  return cfg.use_translation_symmetry.value_or(true) && w.b_is_one();
}

// ---- checkpoint journal ----------------------------------------------------

json subtree_to_json(const SubtreeResult& r) {
  return json{{"nodes", r.nodes},
              {"orbits_pruned", r.pruned},
              {"best_depth", r.best_depth},
              {"best", r.best},
              {"capped", r.capped}};
}

SubtreeResult subtree_from_json(const json& j) {
  SubtreeResult r;
  r.nodes = j.at("nodes").get<uint64_t>();
  r.pruned = j.at("orbits_pruned").get<uint64_t>();
  r.best_depth = j.at("best_depth").get<int>();
  r.best = j.at("best").get<std::vector<int>>();
  r.capped = j.at("capped").get<bool>();
  return r;
}

struct CheckpointState {
  std::vector<std::vector<int>> frontier;
  SubtreeResult phase1;
  std::map<int, SubtreeResult> shards_done;
};

json checkpoint_config_json(ConstantKind kind, const Modulus& m,
                            const WeightPair& w, int cap, bool scaling,
                            bool translation, int shards) {
  return json{{"kind", std::string(1, kind_char(kind))},
              {"n", m.n()},
              {"a_set", w.a.values()},
              {"b_set", w.b.values()},
              {"cap", cap},
              {"scaling", scaling},
              {"translation", translation},
              {"shards", shards}};
}

void write_checkpoint(const std::string& path, const json& config,
                      const CheckpointState& st) {
  json j{{"schema_version", kSchemaVersion},
         {"solver_version", kSolverVersion},
         {"config", config},
         {"frontier", st.frontier},
         {"phase1", subtree_to_json(st.phase1)}};
  json done = json::object();
  for (const auto& [id, res] : st.shards_done)
    done[std::to_string(id)] = subtree_to_json(res);
  j["shards_done"] = done;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint file " + path);
    out << j.dump() << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot replace checkpoint file " + path);
}

CheckpointState load_checkpoint(const std::string& path, const json& config) {
  std::ifstream in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CheckpointCorrupt("checkpoint " + path +
                            " is not valid JSON: " + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw CheckpointCorrupt("checkpoint schema version mismatch");
    if (j.at("solver_version").get<std::string>() != kSolverVersion)
      throw CheckpointCorrupt("checkpoint solver version mismatch");
    if (j.at("config") != config)
      throw CheckpointCorrupt(
          "checkpoint was written for a different computation");
    CheckpointState st;
    st.frontier = j.at("frontier").get<std::vector<std::vector<int>>>();
    st.phase1 = subtree_from_json(j.at("phase1"));
    for (const auto& [key, val] : j.at("shards_done").items())
      st.shards_done[std::stoi(key)] = subtree_from_json(val);
    return st;
  } catch (const CheckpointCorrupt&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointCorrupt("checkpoint " + path +
                            " has missing or malformed fields: " + e.what());
  }
}

}  // namespace

char kind_char(ConstantKind k) {
  switch (k) {
    case ConstantKind::C: return 'C';
    case ConstantKind::D: return 'D';
    case ConstantKind::E: return 'E';
  }
  return '?';
}

ConstantKind kind_from_char(char c) {
  switch (c) {
    case 'C': return ConstantKind::C;
    case 'D': return ConstantKind::D;
    case 'E': return ConstantKind::E;
  }
  throw std::invalid_argument(std::string("unknown constant kind '") + c +
                              "'");
}

SubseqMode mode_for(ConstantKind kind, int n) {
  switch (kind) {
    case ConstantKind::C: return SubseqMode::contiguous();
    case ConstantKind::D: return SubseqMode::any_nonempty();
    case ConstantKind::E: return SubseqMode::exact_length(n);
  }
  return SubseqMode::any_nonempty();
}

bool is_good(const Sequence& s, ConstantKind kind, const WeightPair& w) {
  if (s.empty()) return false;
  if (kind == ConstantKind::E && s.length() < s.modulus.n()) return false;
  return find_zero_sum_subsequence(s, w, mode_for(kind, s.modulus.n()))
      .has_value();
}

Sequence canonicalize(const Sequence& s, ConstantKind kind,
                      const WeightPair& w, const SearchConfig& cfg) {
  if (s.modulus.n() != w.n()) throw ModulusMismatch("sequence vs weights");
  std::vector<int> best = s.terms;
  const bool multiset = kind != ConstantKind::C;
  if (multiset) std::sort(best.begin(), best.end());
  auto perms = orbit_perms(s.modulus, cfg.use_scaling_symmetry,
                           effective_translation(cfg, w));
  std::vector<int> cur(s.terms.size());
  for (const auto& p : perms) {
    for (size_t i = 0; i < s.terms.size(); ++i) cur[i] = p[s.terms[i]];
    if (multiset) std::sort(cur.begin(), cur.end());
    if (cur < best) best = cur;
  }
  return Sequence(s.modulus, best);
}

bool validate_witness(const Sequence& s, ConstantKind kind,
                      const WeightPair& w) {
  return !is_good(s, kind, w);
}

ConstantResult compute_constant(ConstantKind kind, const Modulus& m,
                                const WeightPair& w, const SearchConfig& cfg) {
  if (m.n() != w.n())
    throw ModulusMismatch("modulus does not match weight sets");
  if (cfg.shards < 1) throw std::invalid_argument("shards must be >= 1");
  const int n = m.n();
  const int cap = cfg.cap > 0 ? cfg.cap : default_cap(kind, n);
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  const bool scaling = cfg.use_scaling_symmetry;
  const bool translation = effective_translation(cfg, w);

  const auto start = std::chrono::steady_clock::now();
  const bool multiset = kind != ConstantKind::C;

  const json config_json = checkpoint_config_json(kind, m, w, cap, scaling,
                                                  translation, cfg.shards);
  const bool journaling = !cfg.checkpoint_path.empty();
  CheckpointState st;
  std::atomic<bool> stop{false};

  bool resumed = false;
  if (journaling && std::ifstream(cfg.checkpoint_path).good()) {
    st = load_checkpoint(cfg.checkpoint_path, config_json);
    BadSearch verifier(kind, m, w, cap, scaling, translation);
    const size_t depth = st.frontier.empty() ? 0 : st.frontier[0].size();
    for (const auto& node : st.frontier) {
      if (node.size() != depth ||
          (multiset && !std::is_sorted(node.begin(), node.end())) ||
          !verifier.replay_is_bad(node) ||
          ((scaling || translation) && !verifier.node_is_canonical(node)))
        throw CheckpointCorrupt("checkpoint frontier fails re-verification");
    }
    resumed = true;
  }

  if (!resumed) {
    // Deepen the frontier until there are enough disjoint subtrees to keep
    // the shards busy.  The frontier cut never changes which nodes exist,
    // only which phase visits them, so totals match for any shard count.
    BadSearch root_search(kind, m, w, cap, scaling, translation);
    const size_t want =
        cfg.shards > 1 ? size_t(4) * size_t(cfg.shards) : size_t(1);
    for (int d0 = 0;; ++d0) {
      st.frontier.clear();
      st.phase1 = root_search.run_root(d0, &st.frontier, &stop);
      if (st.phase1.capped || cfg.shards == 1 || st.frontier.empty() ||
          st.frontier.size() >= want || d0 >= cap)
        break;
    }
    if (journaling) write_checkpoint(cfg.checkpoint_path, config_json, st);
  }

  if (!st.phase1.capped && !st.frontier.empty()) {
    std::mutex mu;
    auto last_write = std::chrono::steady_clock::now();
    std::vector<std::thread> workers;
    std::vector<std::optional<SubtreeResult>> results(cfg.shards);
    for (int shard = 0; shard < cfg.shards; ++shard) {
      if (st.shards_done.count(shard)) continue;
      workers.emplace_back([&, shard]() {
        BadSearch search(kind, m, w, cap, scaling, translation);
        SubtreeResult acc;
        for (size_t j = shard; j < st.frontier.size();
             j += size_t(cfg.shards)) {
          if (stop.load()) break;
          acc.merge(search.run_subtree(st.frontier[j], &stop));
        }
        std::lock_guard<std::mutex> lock(mu);
        results[shard] = acc;
        if (journaling) {
          auto now = std::chrono::steady_clock::now();
          double since = std::chrono::duration<double>(now - last_write).count();
          if (since >= cfg.checkpoint_interval_s) {
            CheckpointState snap = st;
            for (int i = 0; i < cfg.shards; ++i)
              if (results[i]) snap.shards_done[i] = *results[i];
            write_checkpoint(cfg.checkpoint_path, config_json, snap);
            last_write = now;
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    for (int shard = 0; shard < cfg.shards; ++shard)
      if (results[shard]) st.shards_done[shard] = *results[shard];
  }

  SubtreeResult total = st.phase1;
  for (const auto& [id, res] : st.shards_done) total.merge(res);

  if (journaling) write_checkpoint(cfg.checkpoint_path, config_json, st);

  if (total.capped)
    throw CapExceeded("a bad sequence of length " + std::to_string(cap) +
                      " exists; raise the cap to settle the constant");

  const auto end = std::chrono::steady_clock::now();

  ConstantResult out{kind,
                     m,
                     w.a,
                     w.b,
                     total.best_depth + 1,
                     Sequence(m, total.best),
                     SearchStats{total.nodes, total.pruned,
                                 std::chrono::duration<double>(end - start)
                                     .count()}};
  return out;
}

std::optional<Sequence> find_bad_sequence_of_length(ConstantKind kind,
                                                    const Modulus& m,
                                                    const WeightPair& w,
                                                    int length,
                                                    uint64_t node_budget) {
  if (m.n() != w.n())
    throw ModulusMismatch("modulus does not match weight sets");
  if (length < 0) throw std::invalid_argument("length must be >= 0");
  SearchConfig cfg;
  BadSearch search(kind, m, w, /*cap=*/length + 1, cfg.use_scaling_symmetry,
                   effective_translation(cfg, w));
  bool exhausted = false;
  auto found = search.run_find(length, node_budget, &exhausted);
  if (found) return Sequence(m, *found);
  if (exhausted)
    throw NotFound("node budget exhausted before settling length " +
                   std::to_string(length));
  return std::nullopt;
}

}  // namespace zswlab
