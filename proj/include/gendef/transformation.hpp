#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gendef {

/// States are 0-based internally; the text formats use 1-based numbering.
using State = int;

/// A total transformation of [n] = {0, ..., n-1}, stored as its image vector.
///
/// Composition is written left to right throughout: the action of fg on a
/// point p is (p.f).g, matching the right-action convention p -> p.f.
class Transformation {
 public:
  Transformation() = default;
  /// Throws std::invalid_argument if any image is out of range.
  explicit Transformation(std::vector<State> images);

  static Transformation identity(int degree);
  static Transformation constant(int degree, State value);

  int degree() const { return static_cast<int>(images_.size()); }
  State operator()(State p) const { return images_[p]; }
  const std::vector<State>& images() const { return images_; }

  bool operator==(const Transformation&) const = default;
  /// Lexicographic on the image vector; degrees compare first.
  auto operator<=>(const Transformation&) const = default;

 private:
  std::vector<State> images_;
};

/// f then g: compose(f, g)(p) == g(f(p)).
Transformation compose(const Transformation& f, const Transformation& g);

/// Nonpermutational means X.f = X implies |X| = 1; equivalently the
/// functional graph is a tree directed towards a single looped root.
///
/// Two independent decision procedures are kept side by side on purpose;
/// the test suite checks they agree.
bool is_nonpermutational_cycles(const Transformation& f);
bool is_nonpermutational_idempotent(const Transformation& f);
/// The cycle-peeling variant; O(degree).
bool is_nonpermutational(const Transformation& f);

/// All fixed points, ascending.
std::vector<State> fixed_points(const Transformation& f);

/// The unique fixed point of a nonpermutational transformation.
/// Throws std::invalid_argument if f is permutational.
State unique_fixed_point(const Transformation& f);

/// The idempotent power f^w: the unique idempotent among f, f^2, ...
/// Read off the functional graph in O(n + sum of tail lengths) rather than
/// by exponentiation (the exponent is the lcm of the cycle lengths, which
/// can be enormous); an explicit idempotence check guards the result.
Transformation idempotent_power(const Transformation& f);

/// Inverted looped arborescence of a nonpermutational transformation:
/// every non-root state points to its image, the root carries the loop.
struct IlaStructure {
  State root = 0;
  std::vector<State> parent;  ///< parent[root] == root
  std::vector<int> depth;     ///< depth[root] == 0
};

/// Throws std::invalid_argument if f is permutational.
IlaStructure ila_structure(const Transformation& f);

/// A function [k] -> [n] with k <= n, used for source maps out of an
/// initial block.
class PartialFunction {
 public:
  /// Throws std::invalid_argument if any image is outside [0, codomain).
  PartialFunction(std::vector<State> images, int codomain);

  int domain() const { return static_cast<int>(images_.size()); }
  int codomain() const { return codomain_; }
  State operator()(State p) const { return images_[p]; }
  const std::vector<State>& images() const { return images_; }

 private:
  std::vector<State> images_;
  int codomain_ = 0;
};

/// True iff i <= i.f for all i, with equality allowed only at the top
/// point i = n-1 (0-based), which forces domain == codomain.
bool is_elevating(const PartialFunction& f);

/// All nonpermutational transformations of [n] in lexicographic order.
/// Throws std::invalid_argument if n < 1 or n > guard.
std::vector<Transformation> enumerate_np(int n, int guard = 8);

/// Parses the vector notation "(2,3,3)"; 1-based entries, whitespace
/// anywhere. Throws ParseError (see error.hpp) with offset and reason.
Transformation parse_transformation(std::string_view text);

/// Renders 1-based vector notation without spaces, e.g. "(2,3,3)".
std::string format_transformation(const Transformation& f);

}  // namespace gendef
