#include "gendef/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "detail.hpp"
#include "gendef/dfa.hpp"

namespace gendef {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kPermutational = -1;
// A full product table is M*M ints; 625^2 (degree 5) is still under 2 MB.
constexpr std::size_t kTableLimit = 4096;

// The lexicographically ordered universe of nonpermutational
// transformations of a fixed degree, with products resolved to universe
// indices (or kPermutational when the product leaves the universe).
struct Universe {
  int degree = 0;
  std::vector<Transformation> elems;
  std::vector<int> fixOf;        // class of each element: its sole fixed point
  int perClassLimit = 0;         // (degree-1)!, the most one class can hold
  std::vector<int32_t> table;    // empty when elems.size() > kTableLimit
  std::unordered_map<Transformation, int, detail::TransformationHash> index;

  explicit Universe(int n) : degree(n) {
    elems = enumerate_np(n, /*guard=*/8);
    perClassLimit = 1;
    for (int i = 2; i < n; ++i) perClassLimit *= i;
    index.reserve(elems.size() * 2);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      fixOf.push_back(unique_fixed_point(elems[i]));
      index.emplace(elems[i], static_cast<int>(i));
    }
    if (elems.size() <= kTableLimit) {
      table.assign(elems.size() * elems.size(), kPermutational);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
          auto it = index.find(compose(elems[i], elems[j]));
          if (it != index.end()) {
            table[i * elems.size() + j] = it->second;
          }
        }
      }
    }
  }

  int size() const { return static_cast<int>(elems.size()); }

  int product(int i, int j) const {
    if (!table.empty()) {
      return table[static_cast<std::size_t>(i) * elems.size() + j];
    }
    auto it = index.find(compose(elems[i], elems[j]));
    return it == index.end() ? kPermutational : it->second;
  }
};

enum : std::int8_t { kUndecided = 0, kIn = 1, kOut = 2 };

// One depth-first enumerator over subsets of the universe. Elements are
// decided in lexicographic order; including an element immediately pulls
// in everything the closure forces, so every visited node is a closed set.
struct Searcher {
  const Universe& u;
  std::uint64_t maxNodes;
  std::uint64_t maxMillis;
  Clock::time_point started;
  std::atomic<std::uint64_t>* sharedBest = nullptr;  // nullptr when serial

  std::vector<std::int8_t> status;
  std::vector<int> inList;
  std::vector<int> inPerClass, undecidedPerClass;
  std::vector<std::pair<int, std::int8_t>> log;

  std::uint64_t bestSize = 0;
  std::vector<int> bestSet;
  std::uint64_t nodes = 0;
  std::uint64_t certified = 0;
  bool stopped = false;

  Searcher(const Universe& universe, const SearchBudget& budget)
      : u(universe),
        maxNodes(budget.maxNodes),
        maxMillis(budget.maxSeconds * 1000ull),
        started(Clock::now()),
        status(universe.size(), kUndecided),
        inPerClass(universe.degree, 0),
        undecidedPerClass(universe.degree, 0) {
    for (int i = 0; i < u.size(); ++i) ++undecidedPerClass[u.fixOf[i]];
  }

  void set_status(int idx, std::int8_t next) {
    log.emplace_back(idx, status[idx]);
    apply_status(idx, next);
  }

  void apply_status(int idx, std::int8_t next) {
    std::int8_t prev = status[idx];
    int cls = u.fixOf[idx];
    if (prev == kUndecided) --undecidedPerClass[cls];
    if (prev == kIn) --inPerClass[cls];
    if (next == kUndecided) ++undecidedPerClass[cls];
    if (next == kIn) ++inPerClass[cls];
    status[idx] = next;
    if (next == kIn) inList.push_back(idx);
  }

  void undo_to(std::size_t mark, std::size_t inMark) {
    while (log.size() > mark) {
      auto [idx, prev] = log.back();
      log.pop_back();
      apply_status(idx, prev);
    }
    inList.resize(inMark);
  }

  // Adds idx and saturates under products. False means the closure needs a
  // permutational element or one already excluded; the log still records
  // every change, so the caller can roll back.
  bool include(int idx) {
    std::size_t head = inList.size();
    set_status(idx, kIn);
    while (head < inList.size()) {
      int a = inList[head++];
      for (std::size_t i = 0; i < inList.size(); ++i) {
        int b = inList[i];
        for (int p : {u.product(a, b), u.product(b, a)}) {
          if (p == kPermutational) return false;
          if (status[p] == kOut) return false;
          if (status[p] == kUndecided) set_status(p, kIn);
        }
      }
    }
    return true;
  }

  std::uint64_t upper_bound() const {
    std::uint64_t total = 0;
    for (int cls = 0; cls < u.degree; ++cls) {
      total += std::min<std::uint64_t>(
          u.perClassLimit, inPerClass[cls] + undecidedPerClass[cls]);
    }
    return total;
  }

  std::uint64_t global_best() const {
    return sharedBest ? sharedBest->load(std::memory_order_relaxed)
                      : bestSize;
  }

  void record_incumbent() {
    std::vector<Transformation> set;
    set.reserve(inList.size());
    std::vector<int> sorted(inList);
    std::sort(sorted.begin(), sorted.end());
    for (int idx : sorted) set.push_back(u.elems[idx]);
    Certificate cert = certify(set);
    if (!cert.valid) {
      throw std::logic_error("search produced an uncertifiable incumbent");
    }
    ++certified;
    bestSize = inList.size();
    bestSet = std::move(sorted);
    if (sharedBest) {
      std::uint64_t seen = sharedBest->load(std::memory_order_relaxed);
      while (seen < bestSize && !sharedBest->compare_exchange_weak(
                                    seen, bestSize, std::memory_order_relaxed)) {
      }
    }
  }

  bool out_of_budget() {
    if (nodes > maxNodes) return true;
    if (maxMillis && (nodes & 0x1fff) == 0) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                         Clock::now() - started)
                         .count();
      if (static_cast<std::uint64_t>(elapsed) > maxMillis) return true;
    }
    return false;
  }

  void dfs(int cursor) {
    if (stopped) return;
    ++nodes;
    if (out_of_budget()) {
      stopped = true;
      return;
    }
    if (inList.size() > global_best() && inList.size() > bestSize) {
      record_incumbent();
    }
    while (cursor < u.size() && status[cursor] != kUndecided) ++cursor;
    if (cursor == u.size()) return;
    if (upper_bound() <= global_best()) return;

    std::size_t mark = log.size(), inMark = inList.size();
    if (include(cursor)) dfs(cursor + 1);
    undo_to(mark, inMark);

    set_status(cursor, kOut);
    dfs(cursor + 1);
    undo_to(mark, inMark);
  }
};

std::vector<Transformation> materialize(const Universe& u,
                                        const std::vector<int>& idxs) {
  std::vector<Transformation> out;
  out.reserve(idxs.size());
  for (int i : idxs) out.push_back(u.elems[i]);
  return out;
}

SearchResult finish(const Universe& u, const Searcher& s,
                    const SearchBudget& budget) {
  SearchResult r;
  r.bestSize = s.bestSize;
  r.witness.degree = u.degree;
  r.witness.elements = materialize(u, s.bestSet);
  r.exhaustive = !s.stopped;
  r.exploredNodes = s.nodes;
  r.incumbentsCertified = s.certified;
  r.budget = budget;
  return r;
}

// Decision scripts for the parallel split: the first few branch choices,
// recorded as (universe index, include?) pairs. Replaying a script in a
// fresh Searcher reproduces the subtree root exactly.
struct Task {
  std::vector<std::pair<int, bool>> script;
};

void collect_tasks(Searcher& s, int cursor, int depthLeft,
                   std::vector<std::pair<int, bool>>& script,
                   std::vector<Task>& tasks) {
  while (cursor < s.u.size() && s.status[cursor] != kUndecided) ++cursor;
  if (cursor == s.u.size() || depthLeft == 0) {
    tasks.push_back({script});
    return;
  }
  std::size_t mark = s.log.size(), inMark = s.inList.size();
  if (s.include(cursor)) {
    script.emplace_back(cursor, true);
    collect_tasks(s, cursor + 1, depthLeft - 1, script, tasks);
    script.pop_back();
  }
  s.undo_to(mark, inMark);
  s.set_status(cursor, kOut);
  script.emplace_back(cursor, false);
  collect_tasks(s, cursor + 1, depthLeft - 1, script, tasks);
  script.pop_back();
  s.undo_to(mark, inMark);
}

}  // namespace

Certificate certify(std::span<const Transformation> elements) {
  Certificate cert;
  cert.size = elements.size();
  for (const auto& f : elements) {
    if (!is_nonpermutational(f)) {
      cert.valid = false;
      cert.badElement = f;
      return cert;
    }
  }
  detail::TransformationSet members(elements.begin(), elements.end());
  for (const auto& f : elements) {
    for (const auto& g : elements) {
      if (!members.count(compose(f, g))) {
        cert.valid = false;
        cert.badPair = {f, g};
        return cert;
      }
    }
  }
  cert.valid = true;
  return cert;
}

SearchResult max_np_subsemigroup_exact(int n) {
  if (n < 2 || n > 3) {
    throw std::invalid_argument(
        "exhaustive subset scan is limited to degrees 2 and 3");
  }
  Universe u(n);
  const int m = u.size();
  SearchResult r;
  r.witness.degree = n;
  r.exhaustive = true;
  std::vector<int> best, current;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    ++r.exploredNodes;
    current.clear();
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) current.push_back(i);
    }
    if (current.size() <= best.size()) continue;
    bool closed = true;
    for (std::size_t i = 0; closed && i < current.size(); ++i) {
      for (std::size_t j = 0; closed && j < current.size(); ++j) {
        int p = u.product(current[i], current[j]);
        closed = p != kPermutational && (mask & (1u << p));
      }
    }
    if (closed) best = current;
  }
  r.bestSize = best.size();
  r.witness.elements = materialize(u, best);
  Certificate cert = certify(r.witness.elements);
  if (!cert.valid) throw std::logic_error("exhaustive scan winner failed certification");
  r.incumbentsCertified = 1;
  return r;
}

SearchResult max_np_subsemigroup_bnb(int n, const SearchBudget& budget) {
  if (n < 2) throw std::invalid_argument("degree must be at least 2");
  if (n > 6) {
    throw std::invalid_argument(
        "the universe above degree 6 is too large to search");
  }
  Universe u(n);

  // Seed incumbent: the union-of-classes candidate, certified up front.
  std::vector<Transformation> seed = candidate_b(n).elements;
  Certificate seedCert = certify(seed);
  if (!seedCert.valid) throw std::logic_error("seed incumbent failed certification");
  std::vector<int> seedIdx;
  for (const auto& f : seed) seedIdx.push_back(u.index.at(f));
  std::sort(seedIdx.begin(), seedIdx.end());

  unsigned threads = budget.threads ? budget.threads : 1;
  if (threads == 1) {
    Searcher s(u, budget);
    s.bestSize = seed.size();
    s.bestSet = seedIdx;
    s.certified = 1;
    s.dfs(0);
    return finish(u, s, budget);
  }

  // Static split: enumerate the top of the tree once, then hand each
  // subtree script to a worker. Workers share only the incumbent size (a
  // monotone counter used for pruning), so the final best size does not
  // depend on scheduling; node counts can.
  std::atomic<std::uint64_t> shared{seed.size()};
  int splitDepth = 1;
  while ((1u << splitDepth) < threads * 4 && splitDepth < 10) ++splitDepth;
  std::vector<Task> tasks;
  {
    Searcher splitter(u, budget);
    std::vector<std::pair<int, bool>> script;
    collect_tasks(splitter, 0, splitDepth, script, tasks);
  }

  std::uint64_t perTask =
      std::max<std::uint64_t>(1, budget.maxNodes / std::max<std::size_t>(1, tasks.size()));
  std::vector<SearchResult> partial(tasks.size());
  std::atomic<std::size_t> nextTask{0};
  std::mutex failure;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t t = nextTask.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        SearchBudget sub = budget;
        sub.maxNodes = perTask;
        Searcher s(u, sub);
        s.sharedBest = &shared;
        s.bestSize = seed.size();
        s.bestSet = seedIdx;
        bool feasible = true;
        for (auto [idx, in] : tasks[t].script) {
          if (in) {
            if (!s.include(idx)) {
              feasible = false;
              break;
            }
          } else {
            s.set_status(idx, kOut);
          }
        }
        if (feasible) s.dfs(0);
        partial[t] = finish(u, s, budget);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  SearchResult merged;
  merged.bestSize = seed.size();
  merged.witness.degree = n;
  merged.witness.elements = seed;
  merged.exhaustive = true;
  merged.budget = budget;
  merged.incumbentsCertified = 1;
  for (const auto& p : partial) {
    merged.exploredNodes += p.exploredNodes;
    merged.incumbentsCertified += p.incumbentsCertified;
    merged.exhaustive = merged.exhaustive && p.exhaustive;
    if (p.bestSize > merged.bestSize) {
      merged.bestSize = p.bestSize;
      merged.witness = p.witness;
    }
  }
  return merged;
}

namespace {

// Is some (start, finals) choice over these letter actions a reduced
// automaton? Scans starts in order and final sets in ascending mask order,
// so the reported witness is deterministic.
bool realizable(int n, const std::vector<Transformation>& letters, State* start,
                std::vector<bool>* finals) {
  if (letters.empty()) return false;
  Dfa d;
  d.stateCount = n;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    d.alphabet.push_back(format_transformation(letters[i]));
  }
  d.delta.resize(static_cast<std::size_t>(n) * letters.size());
  for (State q = 0; q < n; ++q) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
      d.delta[static_cast<std::size_t>(q) * letters.size() + i] = letters[i](q);
    }
  }
  for (State q0 = 0; q0 < n; ++q0) {
    d.start = q0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      d.finals.assign(n, false);
      for (int i = 0; i < n; ++i) d.finals[i] = (mask >> i) & 1;
      if (is_reduced(d)) {
        *start = q0;
        *finals = d.finals;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

DefSycResult max_definite_syc(int n, const SearchBudget& budget) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument(
        "definite-complexity search is limited to degrees 2 through 4");
  }
  Universe u(n);
  Searcher s(u, budget);

  DefSycResult r;
  r.budget = budget;
  r.witness.degree = n;

  // Depth-first over closed subsets; at each leaf try to realize the set
  // as the letter actions of a reduced automaton.
  std::vector<int> bestSet;
  auto leaf = [&](auto&& self, int cursor) -> void {
    if (s.stopped) return;
    ++s.nodes;
    if (s.out_of_budget()) {
      s.stopped = true;
      return;
    }
    while (cursor < u.size() && s.status[cursor] != kUndecided) ++cursor;
    if (cursor == u.size()) {
      if (s.inList.size() > r.bestSize) {
        std::vector<int> sorted(s.inList);
        std::sort(sorted.begin(), sorted.end());
        State q0 = 0;
        std::vector<bool> finals;
        if (realizable(n, materialize(u, sorted), &q0, &finals)) {
          r.bestSize = s.inList.size();
          bestSet = sorted;
          r.start = q0;
          r.finals = finals;
        }
      }
      return;
    }
    if (s.upper_bound() <= r.bestSize) return;
    std::size_t mark = s.log.size(), inMark = s.inList.size();
    if (s.include(cursor)) self(self, cursor + 1);
    s.undo_to(mark, inMark);
    s.set_status(cursor, kOut);
    self(self, cursor + 1);
    s.undo_to(mark, inMark);
  };
  leaf(leaf, 0);

  r.witness.elements = materialize(u, bestSet);
  r.exhaustive = !s.stopped;
  r.exploredNodes = s.nodes;
  return r;
}

}  // namespace gendef
