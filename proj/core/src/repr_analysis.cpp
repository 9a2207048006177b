#include "koopnet/repr_analysis.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "koopnet/errors.hpp"

namespace koopnet {

namespace {

using Index = Eigen::Index;

Matrix unitary_frame(const std::vector<FieldFunction>& basis, std::size_t dim) {
  Matrix B(static_cast<Index>(dim), static_cast<Index>(basis.size()));
  if (basis.empty()) return B;
  const Eigen::VectorXd s = sqrt_weights(basis.front().measure());
  for (std::size_t j = 0; j < basis.size(); ++j)
    B.col(static_cast<Index>(j)) = s.cast<Complex>().cwiseProduct(basis[j].values());
  return B;
}

std::vector<Matrix> all_matrices(const KoopmanRep& rep) {
  std::vector<Matrix> out;
  out.reserve(rep.group_order());
  for (Element g = 0; g < rep.group_order(); ++g) out.push_back(rep.matrix(g));
  return out;
}

}  // namespace

CommutantBasis commutant_of(std::span<const Matrix> family, std::span<const Matrix> check,
                            const TolerancePolicy& tol) {
  if (family.empty()) throw InvalidParameterError("commutant of an empty family");
  const Index d = family.front().rows();
  if (static_cast<std::size_t>(d) > kMaxCommutantSide)
    throw SizeLimitError("commutant solve on " + std::to_string(d) + "-dimensional space exceeds limit");
  const Index d2 = d * d;
  const Matrix I = Matrix::Identity(d, d);

  // vec(T M) = (M^T (x) I) vec(T),  vec(M T) = (I (x) M) vec(T), column-major vec.
  Matrix stack = Matrix::Zero(static_cast<Index>(family.size()) * d2, d2);
  for (std::size_t m = 0; m < family.size(); ++m) {
    const Matrix& M = family[m];
    if (M.rows() != d || M.cols() != d) throw DimensionError("commutant family has mixed sizes");
    auto block = stack.middleRows(static_cast<Index>(m) * d2, d2);
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < d; ++b) {
        // (M^T (x) I) block (a,b) = M(b,a) * I
        if (M(b, a) != Complex(0.0)) block.block(a * d, b * d, d, d) += M(b, a) * I;
        // (I (x) M) block (a,a) = M
        if (a == b) block.block(a * d, b * d, d, d) -= M;
      }
    }
  }

  Eigen::BDCSVD<Matrix> svd(stack, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  // scalar families give a roundoff-sized stack, so sigma_max alone is no scale
  double family_norm = 0.0;
  for (const Matrix& M : family) family_norm = std::max(family_norm, M.norm());
  const double cutoff = tol.rank * std::max(sigma_max, family_norm);

  CommutantBasis out;
  const Matrix& V = svd.matrixV();
  for (Index i = 0; i < d2; ++i) {
    const bool zero = i >= sigma.size() || sigma(i) < cutoff;
    if (!zero) continue;
    Matrix T(d, d);
    for (Index c = 0; c < d; ++c) T.col(c) = V.col(i).segment(c * d, d);
    out.basis.push_back(std::move(T));
  }
  out.dimension = out.basis.size();

  const std::span<const Matrix> against = check.empty() ? family : check;
  for (const Matrix& T : out.basis) {
    const double tn = T.norm();
    for (const Matrix& M : against) out.residual = std::max(out.residual, (T * M - M * T).norm() / tn);
  }
  return out;
}

CommutantBasis compute_commutant(const KoopmanRep& rep, const TolerancePolicy& tol) {
  std::vector<Matrix> gens;
  for (Element g : rep.group().generators()) gens.push_back(rep.matrix(g));
  const std::vector<Matrix> all = all_matrices(rep);
  return commutant_of(gens, all, tol);
}

double invariance_residual(const KoopmanRep& rep, const std::vector<FieldFunction>& basis) {
  if (basis.empty()) return 0.0;
  const Matrix B = unitary_frame(basis, rep.dim());
  double worst = 0.0;
  for (Element g = 0; g < rep.group_order(); ++g) {
    const Matrix KB = rep.matrix(g) * B;
    worst = std::max(worst, (KB - B * (B.adjoint() * KB)).norm());
  }
  return worst;
}

std::vector<Matrix> restricted_matrices(const KoopmanRep& rep, const std::vector<FieldFunction>& basis,
                                        std::span<const Element> elements) {
  const Matrix B = unitary_frame(basis, rep.dim());
  std::vector<Matrix> out;
  out.reserve(elements.size());
  for (Element g : elements) out.push_back(B.adjoint() * rep.matrix(g) * B);
  return out;
}

IrreducibilityCertificate is_irreducible(const KoopmanRep& rep, const Subspace& sub,
                                         const TolerancePolicy& tol) {
  if (sub.basis.empty()) throw InvalidParameterError("irreducibility of the zero subspace is undefined");
  for (const auto& b : sub.basis) {
    if (b.size() != rep.dim()) throw DimensionError("subspace basis does not live on the rep's space");
  }
  const double residual = invariance_residual(rep, sub.basis);
  if (!(residual < tol.equality)) {
    throw NotInvariantError("subspace is not K-invariant (residual " + std::to_string(residual) + ")");
  }
  const auto gens = rep.group().generators();
  const std::vector<Matrix> restricted = restricted_matrices(rep, sub.basis, gens);
  const CommutantBasis c = commutant_of(restricted, {}, tol);
  return {c.dimension == 1, c.dimension};
}

Subspace make_subspace(const KoopmanRep& rep, const std::vector<FieldFunction>& span,
                       const TolerancePolicy& tol) {
  Subspace sub;
  sub.basis = gram_schmidt(span, tol).basis;
  sub.invariance_residual = invariance_residual(rep, sub.basis);
  const IrreducibilityCertificate cert = is_irreducible(rep, sub, tol);
  sub.irreducible = cert.irreducible;
  sub.commutant_dim_restricted = cert.commutant_dim;
  return sub;
}

std::vector<Subspace> decompose_invariant(const KoopmanRep& rep, std::uint64_t seed,
                                          const TolerancePolicy& tol) {
  constexpr int kRetries = 5;
  const CommutantBasis commutant = compute_commutant(rep, tol);
  const Index n = static_cast<Index>(rep.dim());
  const Eigen::VectorXd inv_sqrt_w = sqrt_weights(*rep.space_measure()).cwiseInverse();

  std::vector<Subspace> result;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix A = Matrix::Zero(n, n);
    for (const Matrix& T : commutant.basis) {
      const double re = normal(rng);
      const double im = normal(rng);
      const Complex c(re, im);
      A += 0.5 * (c * T + std::conj(c) * T.adjoint());
    }
    A = 0.5 * (A + A.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double radius = lambda.cwiseAbs().maxCoeff();
    const double gap = 1e-8 * radius;

    result.clear();
    bool all_irreducible = true;
    Index start = 0;
    while (start < n) {
      Index stop = start + 1;
      while (stop < n && lambda(stop) - lambda(stop - 1) < gap) ++stop;
      Subspace sub;
      for (Index j = start; j < stop; ++j) {
        Vector v = eig.eigenvectors().col(j).cwiseProduct(inv_sqrt_w.cast<Complex>());
        sub.basis.emplace_back(rep.space_measure(), std::move(v));
      }
      sub.invariance_residual = invariance_residual(rep, sub.basis);
      const IrreducibilityCertificate cert = is_irreducible(rep, sub, tol);
      sub.irreducible = cert.irreducible;
      sub.commutant_dim_restricted = cert.commutant_dim;
      all_irreducible = all_irreducible && cert.irreducible;
      result.push_back(std::move(sub));
      start = stop;
    }
    if (all_irreducible) break;
  }
  return result;
}

FieldFunction project(const Subspace& sub, const FieldFunction& f) {
  FieldFunction out = FieldFunction::zeros(f.measure_ptr());
  for (const auto& b : sub.basis) out += inner_product(f, b) * b;
  return out;
}

double projection_residual(const Subspace& sub, const FieldFunction& f) {
  return norm(f - project(sub, f));
}

std::size_t joint_commutant_dim(const KoopmanRep& rep, const Subspace& a, const Subspace& b,
                                const TolerancePolicy& tol) {
  std::vector<FieldFunction> span = a.basis;
  span.insert(span.end(), b.basis.begin(), b.basis.end());
  Subspace joint;
  joint.basis = gram_schmidt(span, tol).basis;
  return is_irreducible(rep, joint, tol).commutant_dim;
}

bool equivalent(const KoopmanRep& rep, const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  if (a.dim() != b.dim()) return false;
  return joint_commutant_dim(rep, a, b, tol) > a.commutant_dim_restricted + b.commutant_dim_restricted;
}

}  // namespace koopnet
