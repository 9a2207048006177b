#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace koopnet {

using Element = std::size_t;
using Point = std::size_t;

/// Cayley table with validated group axioms. Elements are the indices
/// 0..order-1; names, if any, live in the file layer.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element product(Element g, Element h) const { return cayley_[g * order_ + h]; }
  Element inverse(Element g) const { return inverse_[g]; }

  /// Row-major order×order table, cayley()[g*order+h] = gh.
  std::span<const Element> cayley() const noexcept { return cayley_; }
  std::span<const Element> inverses() const noexcept { return inverse_; }

  /// A generating set. Never empty: the trivial group reports {e}.
  std::span<const Element> generators() const noexcept { return generators_; }

  bool is_abelian() const;

  // Factories live below; the constructor validates nothing.
  friend FiniteGroup build_from_cayley(const std::vector<std::vector<Element>>& table);
  friend FiniteGroup build_cyclic(std::size_t n);
  friend FiniteGroup build_symmetric(std::size_t n);

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> cayley_;
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
};

/// Z_n with (g+h) mod n. Throws InvalidParameterError for n = 0.
FiniteGroup build_cyclic(std::size_t n);

/// S_n in lexicographic one-line order (element 0 is the identity),
/// product (gh)(i) = g(h(i)). Throws SizeLimitError for n > 6.
FiniteGroup build_symmetric(std::size_t n);

/// Validates a user table: shape and range (StructuralError), identity
/// (StructuralError), Latin property and associativity (GroupAxiomError).
FiniteGroup build_from_cayley(const std::vector<std::vector<Element>>& table);

/// Greedy generating set: repeatedly adds the smallest element outside the
/// subgroup generated so far.
std::vector<Element> greedy_generators(const FiniteGroup& group);

/// Exhaustive associativity/identity/inverse scan for order <= kExhaustiveOrderLimit,
/// otherwise `samples` random triples. Throws GroupAxiomError on failure.
inline constexpr std::size_t kExhaustiveOrderLimit = 720;
void check_group_axioms(const FiniteGroup& group, std::size_t samples = 10000,
                        std::uint64_t seed = 0);

/// Left action of a finite group on points 0..num_points-1,
/// table(g, x) = g·x.
class GAction {
 public:
  /// Validates ranges, permutation rows, e·x = x and g·(h·x) = (gh)·x.
  GAction(std::shared_ptr<const FiniteGroup> group, std::size_t num_points,
          std::vector<std::vector<Point>> table, Point origin = 0);

  const FiniteGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const FiniteGroup>& group_ptr() const noexcept { return group_; }
  std::size_t num_points() const noexcept { return num_points_; }
  Point act(Element g, Point x) const { return table_[g * num_points_ + x]; }
  Point origin() const noexcept { return origin_; }
  bool is_transitive() const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::size_t num_points_;
  std::vector<Point> table_;
  Point origin_;
};

/// G acting on itself by left translation, origin = identity.
GAction regular_action(std::shared_ptr<const FiniteGroup> group);

/// Every element fixes every point.
GAction trivial_action(std::shared_ptr<const FiniteGroup> group, std::size_t num_points);

enum class MeasureSide { kLeft, kRight };

/// Per-point weights of a measure on a finite set. For finite groups the
/// left and right Haar measures coincide; the side tag is bookkeeping.
struct InvariantMeasure {
  std::vector<double> weights;
  MeasureSide side = MeasureSide::kLeft;

  std::size_t size() const noexcept { return weights.size(); }
  double total() const;

  /// sum_x w(x) f(g·x) = sum_x w(x) f(x) for all f and g, i.e. w is
  /// constant along every orbit.
  bool is_invariant_under(const GAction& action) const;

  friend bool operator==(const InvariantMeasure&, const InvariantMeasure&) = default;
};

/// Weight 1 per point. Throws InvalidParameterError for size = 0.
InvariantMeasure counting_measure(std::size_t size, MeasureSide side = MeasureSide::kLeft);

}  // namespace koopnet
