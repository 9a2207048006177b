#pragma once

#include <memory>
#include <vector>

#include "koopnet/function_space.hpp"
#include "koopnet/group.hpp"

namespace koopnet {

/// Koopman operators K_g[psi] = psi o g of a finite group action, as dense
/// matrices on L2(X, d_l x). K is a right action: K_g K_h = K_{hg}.
class KoopmanRep {
 public:
  /// Throws MeasureInvarianceError if the measure is not invariant under the action.
  KoopmanRep(std::shared_ptr<const GAction> action, std::shared_ptr<const InvariantMeasure> space_measure);

  const GAction& action() const noexcept { return *action_; }
  const FiniteGroup& group() const noexcept { return action_->group(); }
  std::size_t dim() const noexcept { return action_->num_points(); }
  std::size_t group_order() const noexcept { return action_->group().order(); }

  /// Left-invariant measure on X.
  const std::shared_ptr<const InvariantMeasure>& space_measure() const noexcept { return space_measure_; }
  /// Right-invariant counting measure on G, the measure of coefficient functions.
  const std::shared_ptr<const InvariantMeasure>& group_measure() const noexcept { return group_measure_; }

  /// Permutation matrix with K_g(x, g·x) = 1.
  const Matrix& matrix(Element g) const { return matrices_.at(g); }

 private:
  std::shared_ptr<const GAction> action_;
  std::shared_ptr<const InvariantMeasure> space_measure_;
  std::shared_ptr<const InvariantMeasure> group_measure_;
  std::vector<Matrix> matrices_;
};

/// Largest order * points^2 for which the per-element matrix cache is built.
inline constexpr std::size_t kMaxCachedEntries = 50'000'000;

KoopmanRep build_koopman(GAction action, InvariantMeasure measure);

/// (K_g psi)(x) = psi(g·x), by index permutation.
FieldFunction apply_koopman(const KoopmanRep& rep, Element g, const FieldFunction& psi);

/// Solves K_g[psi] = f with psi = K_g^dagger f = K_{g^-1} f. Exact.
FieldFunction solve_single_layer(const KoopmanRep& rep, Element g, const FieldFunction& f);

/// Dual action on coefficient functions, (K^_g gamma)(h) = gamma(h g^-1).
/// Like K it composes as K^_g K^_h = K^_{hg}.
FieldFunction dual_action(const FiniteGroup& group, Element g, const FieldFunction& gamma);

}  // namespace koopnet
