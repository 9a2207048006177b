#include "koopnet/koopman.hpp"

#include "koopnet/errors.hpp"

namespace koopnet {

KoopmanRep::KoopmanRep(std::shared_ptr<const GAction> action,
                       std::shared_ptr<const InvariantMeasure> space_measure)
    : action_(std::move(action)), space_measure_(std::move(space_measure)) {
  if (!action_ || !space_measure_) throw InvalidParameterError("Koopman rep needs an action and a measure");
  if (space_measure_->size() != action_->num_points()) {
    throw DimensionError("measure has " + std::to_string(space_measure_->size()) +
                         " points, action has " + std::to_string(action_->num_points()));
  }
  if (!space_measure_->is_invariant_under(*action_))
    throw MeasureInvarianceError("measure on X is not invariant under the group action");

  const std::size_t n = action_->num_points();
  const std::size_t order = action_->group().order();
  if (order * n * n > kMaxCachedEntries) {
    throw SizeLimitError("Koopman matrix cache would hold " + std::to_string(order * n * n) +
                         " entries");
  }
  group_measure_ = std::make_shared<const InvariantMeasure>(counting_measure(order, MeasureSide::kRight));

  matrices_.reserve(order);
  for (Element g = 0; g < order; ++g) {
    Matrix K = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Point x = 0; x < n; ++x)
      K(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(action_->act(g, x))) = 1.0;
    matrices_.push_back(std::move(K));
  }
}

KoopmanRep build_koopman(GAction action, InvariantMeasure measure) {
  return KoopmanRep(std::make_shared<const GAction>(std::move(action)),
                    std::make_shared<const InvariantMeasure>(std::move(measure)));
}

FieldFunction apply_koopman(const KoopmanRep& rep, Element g, const FieldFunction& psi) {
  if (psi.size() != rep.dim())
    throw DimensionError("psi has " + std::to_string(psi.size()) + " values, space has " +
                         std::to_string(rep.dim()));
  if (g >= rep.group_order()) throw DimensionError("group element out of range");
  Vector out(psi.values().size());
  for (Point x = 0; x < rep.dim(); ++x)
    out(static_cast<Eigen::Index>(x)) = psi(rep.action().act(g, x));
  return FieldFunction(psi.measure_ptr(), std::move(out));
}

FieldFunction solve_single_layer(const KoopmanRep& rep, Element g, const FieldFunction& f) {
  if (g >= rep.group_order()) throw DimensionError("group element out of range");
  return apply_koopman(rep, rep.group().inverse(g), f);
}

FieldFunction dual_action(const FiniteGroup& group, Element g, const FieldFunction& gamma) {
  if (gamma.size() != group.order())
    throw DimensionError("coefficient function has " + std::to_string(gamma.size()) +
                         " values, group has order " + std::to_string(group.order()));
  if (g >= group.order()) throw DimensionError("group element out of range");
  const Element g_inv = group.inverse(g);
  Vector out(gamma.values().size());
  for (Element h = 0; h < group.order(); ++h)
    out(static_cast<Eigen::Index>(h)) = gamma(group.product(h, g_inv));
  return FieldFunction(gamma.measure_ptr(), std::move(out));
}

}  // namespace koopnet
