#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "knot/codes.hpp"
#include "knot/diagrams.hpp"
#include "knot/moves.hpp"
#include "knot/shadows.hpp"

namespace knot {

struct CensusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CensusState {
  std::vector<Name> registry;  // index = assigned number, 0 = unknot
  std::vector<int> projection;
  std::map<Name, int, NamePreferred> index;
  int cutoff = 0;
  // Last fully processed shadow: crossing count and generating permutation.
  int progress_n = 0;
  std::vector<int> progress_f;

  CensusState() {
    registry.push_back(Name{});
    projection.push_back(0);
    index.emplace(Name{}, 0);
  }
};

inline std::optional<int> registry_lookup(const CensusState& st, const Name& nm) {
  auto it = st.index.find(nm);
  if (it == st.index.end()) return std::nullopt;
  return it->second;
}

inline int register_name(CensusState& st, const Name& nm) {
  if (auto k = registry_lookup(st, nm)) return *k;
  int k = static_cast<int>(st.registry.size());
  st.registry.push_back(nm);
  st.projection.push_back(k);
  st.index.emplace(nm, k);
  return k;
}

inline int project(CensusState& st, int k) {
  int root = k;
  while (st.projection[root] != root) root = st.projection[root];
  while (st.projection[k] != root) {
    int next = st.projection[k];
    st.projection[k] = root;
    k = next;
  }
  return root;
}

inline int project(const CensusState& st, int k) {
  while (st.projection[k] != k) k = st.projection[k];
  return k;
}

// Marked numbers are exactly those not projecting to themselves.
inline bool is_marked(const CensusState& st, int k) { return project(st, k) != k; }

inline void class_merge(CensusState& st, const std::vector<int>& numbers) {
  if (numbers.empty()) return;
  std::vector<int> roots;
  for (int k : numbers) {
    if (k < 0 || k >= static_cast<int>(st.registry.size())) throw CensusError("merge of unregistered number");
    roots.push_back(project(st, k));
  }
  int m = *std::min_element(roots.begin(), roots.end());
  for (int r : roots) st.projection[r] = m;
}

inline std::vector<int> survivors(const CensusState& st) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(st.registry.size()); ++k)
    if (!is_marked(st, k) && !is_connected_sum(st.registry[k])) out.push_back(k);
  return out;
}

// crossing count -> survivor count, for 3..cutoff
inline std::map<int, int> survivor_counts(const CensusState& st) {
  std::map<int, int> out;
  for (int n = 3; n <= st.cutoff; ++n) out[n] = 0;
  for (int k : survivors(st))
    if (st.registry[k].n >= 3) ++out[st.registry[k].n];
  return out;
}

struct CensusOptions {
  int cutoff = 0;
  int workers = 1;
  std::string journal;  // empty: no journal
  bool resume = false;
  std::size_t chunk = 512;  // shadows per checkpoint
  std::function<void(const std::string&)> log;
};

// Candidate shadows with n crossings in permutation order.
inline bool census_shadow(const std::vector<int>& f, int cutoff, Shadow* out) {
  const int n = static_cast<int>(f.size());
  if (f[0] == 1) return false;
  Shadow sh = shadow_of(f);
  if (!is_shadow_canonical(sh) || !is_realizable(sh)) return false;
  if (n >= cutoff - 1 && is_connected_sum(with_roles(sh, 1))) return false;
  *out = sh;
  return true;
}

namespace detail {

inline std::string format_progress(int n, const std::vector<int>& f) {
  std::string s = "P " + std::to_string(n);
  for (int v : f) s += " " + std::to_string(v);
  return s;
}

// Replays journal records up to the last checkpoint. Returns the byte offset
// just past that checkpoint so trailing partial records can be dropped.
inline std::size_t replay_journal(CensusState& st, std::istream& in, int cutoff) {
  std::string line;
  std::size_t offset = 0, committed = 0;
  std::vector<std::string> pending;
  bool header = false;
  while (std::getline(in, line)) {
    offset += line.size() + 1;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream is(line.substr(1));
      std::string key;
      int c = -1;
      if (is >> key >> c && key == "cutoff") {
        if (c != cutoff) throw CensusError("journal was written for cutoff " + std::to_string(c));
        header = true;
      }
      committed = offset;
      continue;
    }
    if (line[0] != 'P') {
      pending.push_back(line);
      continue;
    }
    for (const auto& rec : pending) {
      std::istringstream is(rec);
      char tag = 0;
      is >> tag;
      if (tag == 'N') {
        int k = -1;
        std::string text;
        if (!(is >> k) || !std::getline(is, text)) throw CensusError("corrupt journal record: " + rec);
        Name nm;
        try {
          nm = parse_name(text);
        } catch (const ParseError& e) {
          throw CensusError("corrupt journal record: " + rec);
        }
        if (k != static_cast<int>(st.registry.size()) || registry_lookup(st, nm))
          throw CensusError("journal numbering mismatch at: " + rec);
        register_name(st, nm);
      } else if (tag == 'M') {
        std::vector<int> nums;
        int k;
        while (is >> k) nums.push_back(k);
        if (!is.eof() || nums.empty()) throw CensusError("corrupt journal record: " + rec);
        class_merge(st, nums);
      } else {
        throw CensusError("corrupt journal record: " + rec);
      }
    }
    pending.clear();
    std::istringstream is(line.substr(1));
    int n;
    std::vector<int> f;
    if (!(is >> n)) throw CensusError("corrupt checkpoint: " + line);
    for (int v; is >> v;) f.push_back(v);
    if (static_cast<int>(f.size()) != n) throw CensusError("corrupt checkpoint: " + line);
    st.progress_n = n;
    st.progress_f = f;
    committed = offset;
  }
  if (!header && committed > 0) throw CensusError("journal lacks a cutoff header");
  return committed;
}

}  // namespace detail

inline CensusState replay(const std::string& path, int cutoff) {
  CensusState st;
  st.cutoff = cutoff;
  std::ifstream in(path);
  if (!in) throw CensusError("cannot read journal " + path);
  detail::replay_journal(st, in, cutoff);
  return st;
}

inline CensusState run_census(const CensusOptions& opt) {
  CensusState st;
  st.cutoff = opt.cutoff;
  std::ofstream journal;
  if (!opt.journal.empty()) {
    std::size_t keep = 0;
    if (opt.resume) {
      std::ifstream in(opt.journal);
      if (in) keep = detail::replay_journal(st, in, opt.cutoff);
    }
    if (keep > 0) {
      std::ifstream in(opt.journal, std::ios::binary);
      std::string head(keep, '\0');
      in.read(head.data(), static_cast<std::streamsize>(keep));
      in.close();
      journal.open(opt.journal, std::ios::binary | std::ios::trunc);
      journal << head;
    } else {
      journal.open(opt.journal, std::ios::binary | std::ios::trunc);
      journal << "# cutoff " << opt.cutoff << "\n";
    }
    if (!journal) throw CensusError("cannot write journal " + opt.journal);
    journal.flush();
  }

  const int workers = std::max(1, opt.workers);
  std::vector<Reducer> reducers(workers);

  for (int n = 3; n <= opt.cutoff; ++n) {
    if (n < st.progress_n) continue;
    std::vector<Shadow> batch;
    std::vector<int> batch_last;
    bool skipping = n == st.progress_n;
    std::size_t seen_shadows = 0;

    auto flush = [&](const std::vector<int>& last_f) {
      // Reduce in parallel, register in shadow order.
      std::vector<std::vector<std::vector<Name>>> results(batch.size());
      std::atomic<std::size_t> next{0};
      std::mutex err_mu;
      std::exception_ptr err;
      auto work = [&](int w) {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < batch.size();) {
            for (const Name& d : diagrams_of(batch[i])) results[i].push_back(*reducers[w].reduce(d));
          }
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mu);
          if (!err) err = std::current_exception();
        }
      };
      if (workers == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
      }
      if (err) std::rethrow_exception(err);
      for (const auto& per_shadow : results)
        for (const auto& irreducible : per_shadow) {
          std::vector<int> nums;
          for (const Name& x : irreducible) {
            auto known = registry_lookup(st, x);
            int k = register_name(st, x);
            if (!known && journal.is_open()) journal << "N " << k << " " << format_name(x) << "\n";
            nums.push_back(k);
          }
          std::vector<int> roots;
          for (int k : nums) roots.push_back(project(st, k));
          std::sort(roots.begin(), roots.end());
          if (roots.size() > 1 && roots.front() != roots.back()) {
            if (journal.is_open()) {
              journal << "M";
              for (int k : nums) journal << " " << k;
              journal << "\n";
            }
            class_merge(st, nums);
          }
        }
      st.progress_n = n;
      st.progress_f = last_f;
      if (journal.is_open()) {
        journal << detail::format_progress(n, last_f) << "\n";
        journal.flush();
        if (!journal) throw CensusError("journal write failed");
      }
      batch.clear();
    };

    std::vector<int> last;
    for (PermutationCursor c(n); !c.exhausted(); c.advance()) {
      const auto& f = c.current();
      if (skipping) {
        if (f == st.progress_f) skipping = false;
        continue;
      }
      Shadow sh;
      if (!census_shadow(f, opt.cutoff, &sh)) continue;
      ++seen_shadows;
      batch.push_back(sh);
      last = f;
      if (batch.size() >= opt.chunk) flush(last);
    }
    if (skipping) throw CensusError("journal checkpoint not found among shadows");
    if (!batch.empty()) flush(last);
    // Close the crossing count even when it held no shadows, so resume skips it.
    std::vector<int> end_f(n);
    for (int i = 0; i < n; ++i) end_f[i] = n - i;
    if (st.progress_f != end_f) {
      st.progress_n = n;
      st.progress_f = end_f;
      if (journal.is_open()) {
        journal << detail::format_progress(n, end_f) << "\n";
        journal.flush();
      }
    }
    if (opt.log) {
      std::size_t memo = 0;
      for (const auto& r : reducers) memo += r.memo_size();
      opt.log("crossings " + std::to_string(n) + ": " + std::to_string(seen_shadows) + " shadows, registry " +
              std::to_string(st.registry.size()) + ", memo " + std::to_string(memo));
    }
  }
  return st;
}

}  // namespace knot
