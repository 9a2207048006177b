#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <random>
#include <vector>

#include "koopnet/group.hpp"

namespace koopnet {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Numerical thresholds shared by the exact finite-group pipeline.
struct TolerancePolicy {
  double equality = 1e-9;  // relative, for law and membership checks
  double rank = 1e-10;     // absolute, on residual norms and relative singular values
  double zero = 1e-12;     // imaginary part of <f,f>, zero-vector detection
};

/// Complex function on a finite measure space. Used for both L2(X) and L2(G).
class FieldFunction {
 public:
  FieldFunction(std::shared_ptr<const InvariantMeasure> measure, Vector values);

  static FieldFunction zeros(std::shared_ptr<const InvariantMeasure> measure);
  static FieldFunction indicator(std::shared_ptr<const InvariantMeasure> measure, Point x);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  const Vector& values() const noexcept { return values_; }
  Vector& values() noexcept { return values_; }
  Complex operator()(Point x) const { return values_(static_cast<Eigen::Index>(x)); }

  const InvariantMeasure& measure() const noexcept { return *measure_; }
  const std::shared_ptr<const InvariantMeasure>& measure_ptr() const noexcept { return measure_; }

  FieldFunction& operator+=(const FieldFunction& other);
  FieldFunction& operator-=(const FieldFunction& other);
  FieldFunction& operator*=(Complex alpha) {
    values_ *= alpha;
    return *this;
  }

 private:
  std::shared_ptr<const InvariantMeasure> measure_;
  Vector values_;
};

FieldFunction operator+(FieldFunction a, const FieldFunction& b);
FieldFunction operator-(FieldFunction a, const FieldFunction& b);
FieldFunction operator*(Complex alpha, FieldFunction f);

/// Same number of points and identical weights.
bool same_space(const FieldFunction& a, const FieldFunction& b);

/// sum_x w(x) f(x) conj(h(x)). Linear in f, conjugate-linear in h.
Complex inner_product(const FieldFunction& f, const FieldFunction& h);

double norm(const FieldFunction& f, const TolerancePolicy& tol = {});

struct GramSchmidtResult {
  std::vector<FieldFunction> basis;
  std::vector<std::size_t> dropped;  // input positions whose residual fell below tol.rank
};

/// Modified Gram-Schmidt with one reorthogonalization pass.
GramSchmidtResult gram_schmidt(const std::vector<FieldFunction>& fs, const TolerancePolicy& tol = {});

/// Standard complex Gaussian values (real and imaginary parts N(0,1)).
FieldFunction random_function(std::shared_ptr<const InvariantMeasure> measure, std::mt19937_64& rng);

/// sqrt(w(x)) per point; multiplying values by it maps L2(X,w) isometrically to C^n.
Eigen::VectorXd sqrt_weights(const InvariantMeasure& measure);

}  // namespace koopnet
