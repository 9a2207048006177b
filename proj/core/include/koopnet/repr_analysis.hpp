#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "koopnet/function_space.hpp"
#include "koopnet/koopman.hpp"

namespace koopnet {

/// Basis of {T : T K_g = K_g T for all g}, orthonormal in the Frobenius
/// inner product.
struct CommutantBasis {
  std::vector<Matrix> basis;
  std::size_t dimension = 0;
  double residual = 0.0;  // max_g ||T K_g - K_g T||_F / ||T||_F over the basis
};

/// Largest matrix side for which the vectorized commutator system is built.
inline constexpr std::size_t kMaxCommutantSide = 50;

/// Null space of T -> (T M - M T)_{M in family} via SVD of the stacked
/// Kronecker constraints. Singular values below tol.rank * max(sigma_max, max ||M||_F)
/// count as zero. `check` is the family the residual is measured against (defaults to
/// `family`).
CommutantBasis commutant_of(std::span<const Matrix> family, std::span<const Matrix> check = {},
                            const TolerancePolicy& tol = {});

/// Commutant of the Koopman operators, solved on the group's generators and
/// checked against every element.
CommutantBasis compute_commutant(const KoopmanRep& rep, const TolerancePolicy& tol = {});

/// K-invariant subspace of L2(X) given by a basis orthonormal in the weighted
/// inner product.
struct Subspace {
  std::vector<FieldFunction> basis;
  bool irreducible = false;
  std::size_t commutant_dim_restricted = 0;
  double invariance_residual = 0.0;

  std::size_t dim() const noexcept { return basis.size(); }
};

/// max_g ||(I - P) K_g P||_F, measured in the unitary frame.
double invariance_residual(const KoopmanRep& rep, const std::vector<FieldFunction>& basis);

/// Matrices <K_g b_j, b_i> of the restricted operators, one per element in `elements`.
std::vector<Matrix> restricted_matrices(const KoopmanRep& rep, const std::vector<FieldFunction>& basis,
                                        std::span<const Element> elements);

struct IrreducibilityCertificate {
  bool irreducible = false;
  std::size_t commutant_dim = 0;
};

/// Schur test: irreducible iff the restricted commutant is one-dimensional.
/// Throws NotInvariantError when the invariance residual is >= tol.equality.
IrreducibilityCertificate is_irreducible(const KoopmanRep& rep, const Subspace& sub,
                                         const TolerancePolicy& tol = {});

/// Orthonormalizes `span` and certifies it. Throws NotInvariantError if the
/// span is not K-invariant.
Subspace make_subspace(const KoopmanRep& rep, const std::vector<FieldFunction>& span,
                       const TolerancePolicy& tol = {});

/// Splits L2(X) into eigenspaces of a random self-adjoint commutant element
/// and certifies each one. Retries with seed+1 up to 5 times if a block fails
/// the certificate; after that the failing blocks come back flagged
/// irreducible = false.
std::vector<Subspace> decompose_invariant(const KoopmanRep& rep, std::uint64_t seed,
                                          const TolerancePolicy& tol = {});

/// Orthogonal projection onto span(sub.basis).
FieldFunction project(const Subspace& sub, const FieldFunction& f);

/// ||f - P f||.
double projection_residual(const Subspace& sub, const FieldFunction& f);

/// Commutant dimension of the restriction to a (+) b (orthogonal blocks).
/// For irreducible a, b it is 2 when they are inequivalent, 4 when equivalent.
std::size_t joint_commutant_dim(const KoopmanRep& rep, const Subspace& a, const Subspace& b,
                                const TolerancePolicy& tol = {});

bool equivalent(const KoopmanRep& rep, const Subspace& a, const Subspace& b,
                const TolerancePolicy& tol = {});

}  // namespace koopnet
