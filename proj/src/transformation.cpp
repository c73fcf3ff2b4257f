#include "gendef/transformation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "gendef/error.hpp"

namespace gendef {

Transformation::Transformation(std::vector<State> images)
    : images_(std::move(images)) {
  const int n = degree();
  if (n == 0) {
    throw std::invalid_argument("transformation must have positive degree");
  }
  for (State v : images_) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("image " + std::to_string(v + 1) +
                                  " out of range for degree " +
                                  std::to_string(n));
    }
  }
}

Transformation Transformation::identity(int degree) {
  std::vector<State> v(degree);
  for (int i = 0; i < degree; ++i) v[i] = i;
  return Transformation(std::move(v));
}

Transformation Transformation::constant(int degree, State value) {
  return Transformation(std::vector<State>(degree, value));
}

Transformation compose(const Transformation& f, const Transformation& g) {
  if (f.degree() != g.degree()) {
    throw std::invalid_argument("cannot compose transformations of degrees " +
                                std::to_string(f.degree()) + " and " +
                                std::to_string(g.degree()));
  }
  std::vector<State> v(f.degree());
  for (int i = 0; i < f.degree(); ++i) v[i] = g(f(i));
  return Transformation(std::move(v));
}

bool is_nonpermutational_cycles(const Transformation& f) {
  // Peel states of in-degree zero; what survives is exactly the set of
  // states lying on cycles. Nonpermutational means a single survivor.
  const int n = f.degree();
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i) ++indegree[f(i)];
  std::vector<State> stack;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) stack.push_back(i);
  }
  int removed = 0;
  while (!stack.empty()) {
    State p = stack.back();
    stack.pop_back();
    ++removed;
    if (--indegree[f(p)] == 0) stack.push_back(f(p));
  }
  return n - removed == 1;
}

bool is_nonpermutational_idempotent(const Transformation& f) {
  // Any power f^m with m >= degree has image exactly the cyclic points, so
  // it is constant precisely when the idempotent power is. Repeated
  // squaring reaches such a power in ceil(log2 n) compositions.
  Transformation h = f;
  for (int reach = 1; reach < f.degree(); reach *= 2) h = compose(h, h);
  State v = h(0);
  for (int i = 1; i < h.degree(); ++i) {
    if (h(i) != v) return false;
  }
  return true;
}

bool is_nonpermutational(const Transformation& f) {
  return is_nonpermutational_cycles(f);
}

std::vector<State> fixed_points(const Transformation& f) {
  std::vector<State> out;
  for (int i = 0; i < f.degree(); ++i) {
    if (f(i) == i) out.push_back(i);
  }
  return out;
}

State unique_fixed_point(const Transformation& f) {
  if (!is_nonpermutational(f)) {
    throw std::invalid_argument(
        "no unique fixed point: " + format_transformation(f) +
        " is permutational");
  }
  for (int i = 0; i < f.degree(); ++i) {
    if (f(i) == i) return i;
  }
  throw std::logic_error("nonpermutational transformation without fixed point");
}

namespace {

bool is_idempotent(const Transformation& f) {
  for (int i = 0; i < f.degree(); ++i) {
    if (f(f(i)) != f(i)) return false;
  }
  return true;
}

}  // namespace

Transformation idempotent_power(const Transformation& f) {
  // The unique idempotent in {f, f^2, ...} is f^m for any m that is at
  // least every tail length and divisible by every cycle length. Rather
  // than exponentiate (m can be enormous: lcm of the cycle lengths), read
  // the result off the functional graph. Walking m steps from p enters
  // p's cycle after t(p) steps and then goes m - t(p) ≡ -t(p) more around
  // it, so f^m(p) is the cycle point t(p) steps "before" p's entry point.
  const int n = f.degree();
  std::vector<int> cycleIndex(n, -1);  // position of each cyclic point
  std::vector<int> cycleId(n, -1);
  std::vector<std::vector<State>> cycles;
  std::vector<signed char> state(n, 0);  // 0 fresh, 1 on path, 2 done
  for (int start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<State> path;
    State p = start;
    while (state[p] == 0) {
      state[p] = 1;
      path.push_back(p);
      p = f(p);
    }
    if (state[p] == 1) {  // closed a new cycle at p
      auto at = std::find(path.begin(), path.end(), p);
      std::vector<State> cycle(at, path.end());
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        cycleIndex[cycle[i]] = static_cast<int>(i);
        cycleId[cycle[i]] = static_cast<int>(cycles.size());
      }
      cycles.push_back(std::move(cycle));
    }
    for (State q : path) state[q] = 2;
  }

  std::vector<int> tail(n, -1);  // steps to reach a cyclic point
  std::vector<State> images(n);
  for (int start = 0; start < n; ++start) {
    if (tail[start] >= 0 || cycleIndex[start] >= 0) continue;
    std::vector<State> path;
    State p = start;
    while (tail[p] < 0 && cycleIndex[p] < 0) {
      path.push_back(p);
      p = f(p);
    }
    int d = cycleIndex[p] >= 0 ? 0 : tail[p];
    for (auto it = path.rbegin(); it != path.rend(); ++it) tail[*it] = ++d;
  }
  for (int p = 0; p < n; ++p) {
    State entry = p;
    int t = 0;
    if (cycleIndex[p] < 0) {
      t = tail[p];
      entry = p;
      for (int s = 0; s < t; ++s) entry = f(entry);
    }
    const auto& cycle = cycles[cycleId[entry]];
    int len = static_cast<int>(cycle.size());
    images[p] = cycle[((cycleIndex[entry] - t) % len + len) % len];
  }
  Transformation e(std::move(images));
  if (!is_idempotent(e)) {
    throw std::logic_error("idempotent power construction failed");
  }
  return e;
}

IlaStructure ila_structure(const Transformation& f) {
  IlaStructure out;
  out.root = unique_fixed_point(f);
  const int n = f.degree();
  out.parent.resize(n);
  out.depth.assign(n, -1);
  out.depth[out.root] = 0;
  for (int i = 0; i < n; ++i) out.parent[i] = f(i);
  out.parent[out.root] = out.root;
  for (int i = 0; i < n; ++i) {
    if (out.depth[i] >= 0) continue;
    // Walk to the first state with a known depth, then unwind.
    std::vector<State> path;
    State p = i;
    while (out.depth[p] < 0) {
      path.push_back(p);
      p = out.parent[p];
    }
    int d = out.depth[p];
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      out.depth[*it] = ++d;
    }
  }
  return out;
}

PartialFunction::PartialFunction(std::vector<State> images, int codomain)
    : images_(std::move(images)), codomain_(codomain) {
  if (codomain_ < 1 || domain() < 1 || domain() > codomain_) {
    throw std::invalid_argument("bad partial function shape: domain " +
                                std::to_string(domain()) + ", codomain " +
                                std::to_string(codomain_));
  }
  for (State v : images_) {
    if (v < 0 || v >= codomain_) {
      throw std::invalid_argument("image " + std::to_string(v + 1) +
                                  " out of range for codomain " +
                                  std::to_string(codomain_));
    }
  }
}

bool is_elevating(const PartialFunction& f) {
  for (int i = 0; i < f.domain(); ++i) {
    if (f(i) < i) return false;
    if (f(i) == i && i != f.codomain() - 1) return false;
  }
  return true;
}

std::vector<Transformation> enumerate_np(int n, int guard) {
  if (n < 1 || n > guard) {
    throw std::invalid_argument("degree " + std::to_string(n) +
                                " outside [1, " + std::to_string(guard) + "]");
  }
  std::vector<Transformation> out;
  std::vector<State> v(n, 0);
  while (true) {
    Transformation f(v);
    if (is_nonpermutational(f)) out.push_back(std::move(f));
    int i = n - 1;
    while (i >= 0 && v[i] == n - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

namespace {

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
}

[[noreturn]] void fail_at(std::size_t pos, const std::string& reason) {
  throw ParseError(reason, 0, static_cast<int>(pos) + 1);
}

}  // namespace

Transformation parse_transformation(std::string_view text) {
  std::size_t pos = 0;
  skip_space(text, pos);
  if (pos == text.size() || text[pos] != '(') {
    fail_at(pos, "expected '('");
  }
  ++pos;
  std::vector<State> images;
  while (true) {
    skip_space(text, pos);
    std::size_t digitStart = pos;
    long value = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > 1'000'000) fail_at(digitStart, "image value too large");
      ++pos;
    }
    if (pos == digitStart) fail_at(pos, "expected 1-based image number");
    if (value < 1) fail_at(digitStart, "images are 1-based, got 0");
    images.push_back(static_cast<State>(value - 1));
    skip_space(text, pos);
    if (pos == text.size()) fail_at(pos, "expected ',' or ')'");
    if (text[pos] == ',') {
      ++pos;
      continue;
    }
    if (text[pos] == ')') {
      ++pos;
      break;
    }
    fail_at(pos, std::string("expected ',' or ')', got '") + text[pos] + "'");
  }
  skip_space(text, pos);
  if (pos != text.size()) {
    fail_at(pos, "trailing characters after ')'");
  }
  const int n = static_cast<int>(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] >= n) {
      fail_at(0, "image " + std::to_string(images[i] + 1) + " at position " +
                     std::to_string(i + 1) + " exceeds degree " +
                     std::to_string(n));
    }
  }
  return Transformation(std::move(images));
}

std::string format_transformation(const Transformation& f) {
  std::string out = "(";
  for (int i = 0; i < f.degree(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(f(i) + 1);
  }
  out += ')';
  return out;
}

}  // namespace gendef
