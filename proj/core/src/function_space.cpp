#include "koopnet/function_space.hpp"

#include <cmath>

#include "koopnet/errors.hpp"

namespace koopnet {

namespace {

void require_same_space(const FieldFunction& a, const FieldFunction& b) {
  if (!same_space(a, b)) {
    throw DimensionError("functions live on different spaces (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + " points)");
  }
}

}  // namespace

FieldFunction::FieldFunction(std::shared_ptr<const InvariantMeasure> measure, Vector values)
    : measure_(std::move(measure)), values_(std::move(values)) {
  if (!measure_) throw InvalidParameterError("function requires a measure");
  if (static_cast<std::size_t>(values_.size()) != measure_->size()) {
    throw DimensionError("function has " + std::to_string(values_.size()) +
                         " values but the measure has " + std::to_string(measure_->size()) +
                         " points");
  }
}

FieldFunction FieldFunction::zeros(std::shared_ptr<const InvariantMeasure> measure) {
  const auto n = static_cast<Eigen::Index>(measure->size());
  return FieldFunction(std::move(measure), Vector::Zero(n));
}

FieldFunction FieldFunction::indicator(std::shared_ptr<const InvariantMeasure> measure, Point x) {
  if (x >= measure->size()) throw DimensionError("indicator point out of range");
  FieldFunction f = zeros(std::move(measure));
  f.values_(static_cast<Eigen::Index>(x)) = 1.0;
  return f;
}

FieldFunction& FieldFunction::operator+=(const FieldFunction& other) {
  require_same_space(*this, other);
  values_ += other.values_;
  return *this;
}

FieldFunction& FieldFunction::operator-=(const FieldFunction& other) {
  require_same_space(*this, other);
  values_ -= other.values_;
  return *this;
}

FieldFunction operator+(FieldFunction a, const FieldFunction& b) { return a += b; }
FieldFunction operator-(FieldFunction a, const FieldFunction& b) { return a -= b; }
FieldFunction operator*(Complex alpha, FieldFunction f) { return f *= alpha; }

bool same_space(const FieldFunction& a, const FieldFunction& b) {
  if (a.measure_ptr() == b.measure_ptr()) return true;
  return a.measure().weights == b.measure().weights;
}

Complex inner_product(const FieldFunction& f, const FieldFunction& h) {
  require_same_space(f, h);
  const auto& w = f.measure().weights;
  Complex acc = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) acc += w[x] * f(x) * std::conj(h(x));
  return acc;
}

double norm(const FieldFunction& f, const TolerancePolicy& tol) {
  const Complex ff = inner_product(f, f);
  const double scale = std::max(1.0, std::abs(ff.real()));
  if (std::abs(ff.imag()) > tol.zero * scale)
    throw Error("<f,f> has non-negligible imaginary part");
  return std::sqrt(std::max(0.0, ff.real()));
}

GramSchmidtResult gram_schmidt(const std::vector<FieldFunction>& fs, const TolerancePolicy& tol) {
  GramSchmidtResult out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!out.basis.empty()) require_same_space(out.basis.front(), fs[i]);
    FieldFunction r = fs[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out.basis) r -= inner_product(r, q) * q;
    }
    const double rn = norm(r, tol);
    if (rn < tol.rank) {
      out.dropped.push_back(i);
      continue;
    }
    r *= 1.0 / rn;
    out.basis.push_back(std::move(r));
  }
  return out;
}

FieldFunction random_function(std::shared_ptr<const InvariantMeasure> measure, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(measure->size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return FieldFunction(std::move(measure), std::move(v));
}

Eigen::VectorXd sqrt_weights(const InvariantMeasure& measure) {
  Eigen::VectorXd s(static_cast<Eigen::Index>(measure.size()));
  for (std::size_t i = 0; i < measure.size(); ++i)
    s(static_cast<Eigen::Index>(i)) = std::sqrt(measure.weights[i]);
  return s;
}

}  // namespace koopnet
