#include "gendef/components.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace gendef {

namespace {

// Iterative Tarjan over a deterministic-automaton-shaped graph: every node
// has exactly `letters` successors, produced on demand. Component ids come
// out in completion order (reverse topological).
template <class Succ>
std::pair<std::vector<std::int32_t>, int> scc_decompose(std::int64_t nodeCount,
                                                        int letters,
                                                        Succ succ) {
  if (nodeCount > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("graph too large for component analysis");
  }
  const auto n = static_cast<std::int32_t>(nodeCount);
  constexpr std::int32_t kUnvisited = -1;
  std::vector<std::int32_t> index(n, kUnvisited);
  std::vector<std::int32_t> low(n, 0);
  std::vector<std::int32_t> comp(n, kUnvisited);
  std::vector<bool> onStack(n, false);
  std::vector<std::int32_t> stack;
  struct Frame {
    std::int32_t node;
    std::int32_t letter;
  };
  std::vector<Frame> frames;
  std::int32_t counter = 0;
  int compCount = 0;

  for (std::int32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::int32_t v = f.node;
      if (f.letter == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        onStack[v] = true;
      }
      if (f.letter < letters) {
        auto w = static_cast<std::int32_t>(succ(v, f.letter));
        ++f.letter;
        if (index[w] == kUnvisited) {
          frames.push_back({w, 0});
        } else if (onStack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().node] = std::min(low[frames.back().node], low[v]);
        }
        if (low[v] == index[v]) {
          while (true) {
            std::int32_t w = stack.back();
            stack.pop_back();
            onStack[w] = false;
            comp[w] = compCount;
            if (w == v) break;
          }
          ++compCount;
        }
      }
    }
  }
  return {std::move(comp), compCount};
}

}  // namespace

ComponentGraph component_graph(const Dfa& a) {
  auto [rawComp, compCount] = scc_decompose(
      a.stateCount, a.letterCount(),
      [&a](std::int32_t v, int letter) { return a.next(v, letter); });

  // Renumber components by first occurrence in state order.
  std::vector<int> newId(compCount, -1);
  int next = 0;
  for (State q = 0; q < a.stateCount; ++q) {
    if (newId[rawComp[q]] < 0) newId[rawComp[q]] = next++;
  }

  ComponentGraph out;
  out.componentOf.resize(a.stateCount);
  out.components.resize(compCount);
  for (State q = 0; q < a.stateCount; ++q) {
    int c = newId[rawComp[q]];
    out.componentOf[q] = c;
    out.components[c].push_back(q);
  }

  out.isTrivial.assign(compCount, false);
  out.isSink.assign(compCount, true);
  std::set<ComponentGraph::Edge> edges;
  for (State q = 0; q < a.stateCount; ++q) {
    int c = out.componentOf[q];
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      int d = out.componentOf[a.next(q, letter)];
      if (d != c) {
        out.isSink[c] = false;
        edges.insert({c, d, letter});
      }
    }
  }
  for (int c = 0; c < compCount; ++c) {
    if (out.components[c].size() == 1) {
      State q = out.components[c].front();
      bool loop = false;
      for (int letter = 0; letter < a.letterCount(); ++letter) {
        loop = loop || a.next(q, letter) == q;
      }
      out.isTrivial[c] = !loop;
    }
  }
  out.dagEdges.assign(edges.begin(), edges.end());
  return out;
}

ProductSquare product_square(const Dfa& a) { return ProductSquare{a}; }

ProductSccs product_sccs(const ProductSquare& ps) {
  ProductSccs out;
  auto [comp, compCount] = scc_decompose(
      ps.pairCount(), ps.base.letterCount(),
      [&ps](std::int32_t v, int letter) { return ps.target(v, letter); });
  out.componentOf = std::move(comp);
  out.componentCount = compCount;

  std::vector<std::int32_t> size(compCount, 0);
  for (std::int32_t c : out.componentOf) ++size[c];
  out.nontrivial.assign(compCount, false);
  for (std::int64_t v = 0; v < ps.pairCount(); ++v) {
    std::int32_t c = out.componentOf[v];
    if (size[c] > 1) {
      out.nontrivial[c] = true;
    } else if (!out.nontrivial[c]) {
      for (int letter = 0; letter < ps.base.letterCount(); ++letter) {
        if (ps.target(v, letter) == v) {
          out.nontrivial[c] = true;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace gendef
