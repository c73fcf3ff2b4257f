#include "gendef/semigroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "gendef/error.hpp"

namespace gendef {

TransformationSemigroup closure(std::vector<Transformation> generators,
                              std::size_t cap) {
  if (generators.empty()) {
    throw std::invalid_argument("closure needs at least one generator");
  }
  const int degree = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw std::invalid_argument("generators of mixed degrees " +
                                  std::to_string(degree) + " and " +
                                  std::to_string(g.degree()));
    }
  }

  TransformationSemigroup out;
  out.degree = degree;
  out.generators = generators;

  detail::TransformationSet seen;
  for (const auto& g : generators) {
    if (!seen.insert(g).second) continue;
    if (out.elements.size() >= cap) {
      out.truncated = true;
      return out;
    }
    out.elements.push_back(g);
  }
  // Right-composition BFS: every element of the closure is reached by
  // extending an already discovered element with one generator.
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const auto& g : generators) {
      Transformation p = compose(out.elements[head], g);
      if (!seen.insert(p).second) continue;
      if (out.elements.size() >= cap) {
        out.truncated = true;
        return out;
      }
      out.elements.push_back(std::move(p));
    }
  }
  return out;
}

ClosureCheck is_closed(const TransformationSemigroup& s) {
  detail::TransformationSet members(s.elements.begin(), s.elements.end());
  for (const auto& f : s.elements) {
    for (const auto& g : s.elements) {
      if (!members.contains(compose(f, g))) {
        return {false, std::make_pair(f, g)};
      }
    }
  }
  return {true, std::nullopt};
}

FixedPointDecomposition fixed_point_decomposition(
    const TransformationSemigroup& s) {
  FixedPointDecomposition out;
  for (const auto& f : s.elements) {
    if (is_nonpermutational(f)) {
      out.classes[unique_fixed_point(f)].push_back(f);
    } else {
      out.residue.push_back(f);
    }
  }
  return out;
}

TransformationSemigroup candidate_b(int n, int guard) {
  if (n < 2 || n > guard) {
    throw std::invalid_argument("degree " + std::to_string(n) +
                                " outside [2, " + std::to_string(guard) + "]");
  }
  TransformationSemigroup out;
  out.degree = n;
  // Class i (0-based): points below i move strictly upwards, points from i
  // on are sent to i. Free choices exist only below i.
  for (int i = 0; i < n; ++i) {
    std::vector<State> v(n);
    for (int j = i; j < n; ++j) v[j] = i;
    for (int j = 0; j < i; ++j) v[j] = j + 1;
    while (true) {
      out.elements.emplace_back(v);
      int j = i - 1;
      while (j >= 0 && v[j] == n - 1) {
        v[j] = j + 1;
        --j;
      }
      if (j < 0) break;
      ++v[j];
    }
  }
  std::sort(out.elements.begin(), out.elements.end());

  if (out.elements.size() != floor_e_factorial(n)) {
    throw std::logic_error("candidate set has unexpected size");
  }
  for (const auto& f : out.elements) {
    if (!is_nonpermutational(f)) {
      throw std::logic_error("candidate set contains a permutational element");
    }
  }
  if (!is_closed(out).closed) {
    throw std::logic_error("candidate set is not closed");
  }
  return out;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t check_u64(u128 v, const char* what) {
  if (v > static_cast<u128>(UINT64_MAX)) {
    throw std::overflow_error(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

u128 factorial(int n) {
  u128 r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<unsigned>(i);
  return r;
}

}  // namespace

std::uint64_t floor_e_factorial(int n) {
  if (n < 1 || n > 20) {
    throw std::invalid_argument("floor_e_factorial requires 1 <= n <= 20");
  }
  // sum over j < n of (n-1)!/j!, accumulated backwards: the j = n-1 term
  // is 1 and each step multiplies by the next factor down.
  u128 term = 1;
  u128 sum = 1;
  for (int j = n - 1; j >= 1; --j) {
    term *= static_cast<unsigned>(j);
    sum += term;
  }
  return check_u64(sum, "floor_e_factorial");
}

std::uint64_t theorem_bound(int n) {
  if (n < 3 || n > 20) {
    throw std::invalid_argument("theorem_bound requires 3 <= n <= 20");
  }
  u128 v = static_cast<u128>(n) * (factorial(n - 1) - factorial(n - 3));
  return check_u64(v, "theorem_bound");
}

namespace {

IdentityCheck check_identity(const TransformationSemigroup& s,
                             bool sandwich) {
  if (s.truncated) {
    throw std::invalid_argument(
        "identity check needs the full semigroup, but the closure was "
        "truncated at the cap");
  }
  // The value of x enters only through x^w, so idempotents that already
  // passed the full y sweep can be skipped for later x.
  detail::TransformationSet passed;
  for (const auto& x : s.elements) {
    Transformation e = idempotent_power(x);
    if (passed.contains(e)) continue;
    for (const auto& y : s.elements) {
      Transformation lhs =
          sandwich ? compose(compose(e, y), e) : compose(y, e);
      if (lhs != e) {
        return {false, std::make_pair(x, y)};
      }
    }
    passed.insert(std::move(e));
  }
  return {true, std::nullopt};
}

}  // namespace

IdentityCheck satisfies_definite_identity(const TransformationSemigroup& s) {
  return check_identity(s, false);
}

IdentityCheck satisfies_gendef_identity(const TransformationSemigroup& s) {
  return check_identity(s, true);
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isspace(c);
  });
}

}  // namespace

TransformationSemigroup parse_semigroup_file(std::istream& in) {
  TransformationSemigroup out;
  std::string raw;
  int lineNo = 0;
  bool headerSeen = false;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = strip_comment(raw);
    if (blank(line)) continue;
    if (!headerSeen) {
      std::istringstream hs(line);
      std::string tag;
      long n = 0;
      hs >> tag >> n;
      std::string rest;
      if (tag != "degree:" || !hs || (hs >> rest)) {
        throw ParseError("expected 'degree: n' header", lineNo, 1);
      }
      if (n < 1 || n > 1'000'000) {
        throw ParseError("degree " + std::to_string(n) + " out of range",
                         lineNo, 1);
      }
      out.degree = static_cast<int>(n);
      headerSeen = true;
      continue;
    }
    Transformation f = [&] {
      try {
        return parse_transformation(line);
      } catch (const ParseError& pe) {
        throw ParseError(pe.reason(), lineNo, pe.column());
      }
    }();
    if (f.degree() != out.degree) {
      throw ParseError("transformation degree " + std::to_string(f.degree()) +
                           " does not match header degree " +
                           std::to_string(out.degree),
                       lineNo, 1);
    }
    out.elements.push_back(std::move(f));
  }
  if (!headerSeen) {
    throw ParseError("missing 'degree: n' header", lineNo > 0 ? lineNo : 1, 1);
  }
  return out;
}

std::string format_semigroup_file(const TransformationSemigroup& s) {
  std::string out = "degree: " + std::to_string(s.degree) + "\n";
  for (const auto& f : s.elements) {
    out += format_transformation(f);
    out += '\n';
  }
  return out;
}

}  // namespace gendef
