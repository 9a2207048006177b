#include "koopnet/ridgelet.hpp"

#include <cmath>
#include <cstring>

#include "koopnet/errors.hpp"

namespace koopnet {

namespace {

using Index = Eigen::Index;

void require_on_space(const KoopmanRep& rep, const FieldFunction& f, const char* name) {
  if (f.size() != rep.dim() || f.measure().weights != rep.space_measure()->weights) {
    throw DimensionError(std::string(name) + " does not live on L2(X) of this representation");
  }
}

void require_on_group(const KoopmanRep& rep, const FieldFunction& gamma) {
  if (gamma.size() != rep.group_order())
    throw DimensionError("coefficient function has " + std::to_string(gamma.size()) +
                         " values, group has order " + std::to_string(rep.group_order()));
}

// Columns sqrt(w)·K_g psi for every g.
Matrix orbit_frame(const KoopmanRep& rep, const FieldFunction& psi) {
  const Eigen::VectorXd s = sqrt_weights(*rep.space_measure());
  Matrix U(static_cast<Index>(rep.dim()), static_cast<Index>(rep.group_order()));
  for (Element g = 0; g < rep.group_order(); ++g)
    U.col(static_cast<Index>(g)) = s.cast<Complex>().cwiseProduct(apply_koopman(rep, g, psi).values());
  return U;
}

}  // namespace

std::uint64_t fingerprint(const FieldFunction& f) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Index i = 0; i < f.values().size(); ++i) {
    const double parts[2] = {f.values()(i).real(), f.values()(i).imag()};
    unsigned char bytes[sizeof parts];
    std::memcpy(bytes, parts, sizeof parts);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

RidgeletCoefficients ridgelet_transform(const KoopmanRep& rep, const FieldFunction& psi,
                                        const FieldFunction& f) {
  require_on_space(rep, psi, "psi");
  require_on_space(rep, f, "f");
  const auto& w = rep.space_measure()->weights;
  Vector gamma(static_cast<Index>(rep.group_order()));
  for (Element g = 0; g < rep.group_order(); ++g) {
    Complex acc = 0.0;
    for (Point x = 0; x < rep.dim(); ++x) acc += w[x] * f(x) * std::conj(psi(rep.action().act(g, x)));
    gamma(static_cast<Index>(g)) = acc;
  }
  return {FieldFunction(rep.group_measure(), std::move(gamma)), fingerprint(psi)};
}

FieldFunction dnn_apply(const KoopmanRep& rep, const FieldFunction& psi, const FieldFunction& gamma) {
  require_on_space(rep, psi, "psi");
  require_on_group(rep, gamma);
  const auto& wr = rep.group_measure()->weights;
  Vector out = Vector::Zero(static_cast<Index>(rep.dim()));
  for (Element g = 0; g < rep.group_order(); ++g) {
    const Complex coeff = wr[g] * gamma(g);
    for (Point x = 0; x < rep.dim(); ++x) out(static_cast<Index>(x)) += coeff * psi(rep.action().act(g, x));
  }
  return FieldFunction(rep.space_measure(), std::move(out));
}

FieldFunction dnn_apply(const KoopmanRep& rep, const FieldFunction& psi, const RidgeletCoefficients& gamma) {
  return dnn_apply(rep, psi, gamma.gamma);
}

double admissibility_constant(const KoopmanRep& rep, const FieldFunction& psi, const TolerancePolicy& tol) {
  const double pn = norm(psi, tol);
  if (pn == 0.0) throw ZeroVectorError("admissibility constant of the zero function");
  const double rn = norm(ridgelet_transform(rep, psi, psi).gamma, tol);
  return (rn * rn) / (pn * pn);
}

AdmissiblePair AdmissiblePair::make(const KoopmanRep& rep, FieldFunction psi, Subspace subspace,
                                    const TolerancePolicy& tol) {
  require_on_space(rep, psi, "psi");
  const double pn = norm(psi, tol);
  if (pn == 0.0) throw ZeroVectorError("admissible vector must be nonzero");
  const double residual = projection_residual(subspace, psi);
  if (!(residual < tol.equality * pn))
    throw SubspaceMembershipError("psi is not in the subspace (residual " + std::to_string(residual) + ")");
  const double c = admissibility_constant(rep, psi, tol);
  return AdmissiblePair(std::move(psi), std::move(subspace), c);
}

Reconstruction reconstruct(const KoopmanRep& rep, const AdmissiblePair& pair, const FieldFunction& f,
                           const TolerancePolicy& tol) {
  require_on_space(rep, f, "f");
  if (!pair.subspace().irreducible)
    throw PreconditionError("reconstruction requires a certified irreducible subspace");
  const double fn = norm(f, tol);
  const double residual = projection_residual(pair.subspace(), f);
  if (!(residual < tol.equality * std::max(1.0, fn)))
    throw SubspaceMembershipError("f is not in the subspace (residual " + std::to_string(residual) + ")");

  FieldFunction out = dnn_apply(rep, pair.psi(), ridgelet_transform(rep, pair.psi(), f));
  const FieldFunction target = Complex(pair.c_psi()) * f;
  const double denom = norm(target, tol);
  const double err = norm(out - target, tol);
  return {std::move(out), denom > 0.0 ? err / denom : err};
}

double adjointness_gap(const KoopmanRep& rep, const FieldFunction& psi, const FieldFunction& gamma,
                       const FieldFunction& f) {
  const Complex lhs = inner_product(gamma, ridgelet_transform(rep, psi, f).gamma);
  const Complex rhs = inner_product(dnn_apply(rep, psi, gamma), f);
  return std::abs(lhs - rhs);
}

IntertwiningGaps intertwining_gaps(const KoopmanRep& rep, const FieldFunction& psi, const FieldFunction& f,
                                   const FieldFunction& gamma, Element g) {
  const FieldFunction r_kf = ridgelet_transform(rep, psi, apply_koopman(rep, g, f)).gamma;
  const FieldFunction kh_rf = dual_action(rep.group(), g, ridgelet_transform(rep, psi, f).gamma);
  const FieldFunction dnn_kh = dnn_apply(rep, psi, dual_action(rep.group(), g, gamma));
  const FieldFunction k_dnn = apply_koopman(rep, g, dnn_apply(rep, psi, gamma));
  return {norm(r_kf - kh_rf), norm(dnn_kh - k_dnn)};
}

Matrix reconstruction_operator(const KoopmanRep& rep, const FieldFunction& psi) {
  require_on_space(rep, psi, "psi");
  const Matrix U = orbit_frame(rep, psi);
  // group measure is counting, so each orbit vector carries weight 1
  return U * U.adjoint();
}

CommutingCertificate commuting_certificate(const KoopmanRep& rep, const FieldFunction& psi) {
  const Matrix M = reconstruction_operator(rep, psi);
  CommutingCertificate cert;
  cert.operator_norm = M.norm();
  for (Element g = 0; g < rep.group_order(); ++g) {
    const Matrix& K = rep.matrix(g);
    cert.commutator_gap = std::max(cert.commutator_gap, (M * K - K * M).norm());
  }
  return cert;
}

SchurScalarCheck restricted_schur_check(const KoopmanRep& rep, const FieldFunction& psi, const Subspace& sub,
                                        const TolerancePolicy& tol) {
  const FieldFunction psi_h = project(sub, psi);
  if (norm(psi_h, tol) < tol.rank) throw ZeroVectorError("psi has no component in the subspace");
  const Matrix M = reconstruction_operator(rep, psi_h);

  const Eigen::VectorXd s = sqrt_weights(*rep.space_measure());
  Matrix B(static_cast<Index>(rep.dim()), static_cast<Index>(sub.dim()));
  for (std::size_t j = 0; j < sub.dim(); ++j)
    B.col(static_cast<Index>(j)) = s.cast<Complex>().cwiseProduct(sub.basis[j].values());

  SchurScalarCheck check;
  check.c_psi = admissibility_constant(rep, psi_h, tol);
  const Matrix restricted = B.adjoint() * M * B;
  const auto d = static_cast<Index>(sub.dim());
  check.gap = (restricted - check.c_psi * Matrix::Identity(d, d)).norm();
  return check;
}

}  // namespace koopnet
