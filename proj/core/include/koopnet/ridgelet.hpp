#pragma once

#include <cstdint>

#include "koopnet/function_space.hpp"
#include "koopnet/koopman.hpp"
#include "koopnet/repr_analysis.hpp"

namespace koopnet {

/// Coefficient function gamma on G (right-invariant counting measure) plus
/// a fingerprint of the psi it was computed with.
struct RidgeletCoefficients {
  FieldFunction gamma;
  std::uint64_t psi_id = 0;
};

/// FNV-1a over the raw values; identifies a psi in RidgeletCoefficients.
std::uint64_t fingerprint(const FieldFunction& f);

/// R_psi[f](g) = <f, K_g psi>_{L2(X)} = sum_x w(x) f(x) conj(psi(g·x)).
RidgeletCoefficients ridgelet_transform(const KoopmanRep& rep, const FieldFunction& psi,
                                        const FieldFunction& f);

/// DNN[gamma; psi](x) = sum_g w_r(g) gamma(g) psi(g·x): a gamma-weighted
/// mixture of the subnetworks psi o g. Linear in gamma.
FieldFunction dnn_apply(const KoopmanRep& rep, const FieldFunction& psi, const FieldFunction& gamma);
FieldFunction dnn_apply(const KoopmanRep& rep, const FieldFunction& psi, const RidgeletCoefficients& gamma);

/// c_psi = ||R_psi[psi]||^2_{L2(G)} / ||psi||^2_{L2(X)}. Throws ZeroVectorError for psi = 0.
double admissibility_constant(const KoopmanRep& rep, const FieldFunction& psi,
                              const TolerancePolicy& tol = {});

/// psi inside a certified subspace H, with its admissibility constant.
class AdmissiblePair {
 public:
  /// Throws ZeroVectorError for psi = 0 and SubspaceMembershipError if psi
  /// is not in span(H) to relative residual tol.equality.
  static AdmissiblePair make(const KoopmanRep& rep, FieldFunction psi, Subspace subspace,
                             const TolerancePolicy& tol = {});

  const FieldFunction& psi() const noexcept { return psi_; }
  const Subspace& subspace() const noexcept { return subspace_; }
  double c_psi() const noexcept { return c_psi_; }

 private:
  AdmissiblePair(FieldFunction psi, Subspace subspace, double c_psi)
      : psi_(std::move(psi)), subspace_(std::move(subspace)), c_psi_(c_psi) {}

  FieldFunction psi_;
  Subspace subspace_;
  double c_psi_;
};

struct Reconstruction {
  FieldFunction result;   // DNN_psi[R_psi[f]], not rescaled
  double relative_error;  // ||result - c_psi f|| / ||c_psi f||, or ||result|| when f = 0
};

/// Throws PreconditionError unless pair.subspace() is certified irreducible,
/// SubspaceMembershipError unless f lies in it.
Reconstruction reconstruct(const KoopmanRep& rep, const AdmissiblePair& pair, const FieldFunction& f,
                           const TolerancePolicy& tol = {});

/// |<gamma, R_psi f>_{L2(G)} - <DNN_psi gamma, f>_{L2(X)}|.
double adjointness_gap(const KoopmanRep& rep, const FieldFunction& psi, const FieldFunction& gamma,
                       const FieldFunction& f);

struct IntertwiningGaps {
  double ridgelet;  // ||R_psi[K_g f] - K^_g R_psi[f]||
  double network;   // ||DNN_psi[K^_g gamma] - K_g DNN_psi[gamma]||
};

IntertwiningGaps intertwining_gaps(const KoopmanRep& rep, const FieldFunction& psi, const FieldFunction& f,
                                   const FieldFunction& gamma, Element g);

/// Matrix of DNN_psi o R_psi acting on the unitary frame sqrt(w)·f.
Matrix reconstruction_operator(const KoopmanRep& rep, const FieldFunction& psi);

struct CommutingCertificate {
  double commutator_gap = 0.0;  // max_g ||M K_g - K_g M||_F
  double operator_norm = 0.0;   // ||M||_F
};

CommutingCertificate commuting_certificate(const KoopmanRep& rep, const FieldFunction& psi);

struct SchurScalarCheck {
  double c_psi = 0.0;  // of psi projected into H
  double gap = 0.0;    // ||M|_H - c_psi I_H||_F
};

/// Restricts M = DNN o R (built from psi projected into H) to H and compares
/// with the Schur scalar. Throws ZeroVectorError if psi has no component in H.
SchurScalarCheck restricted_schur_check(const KoopmanRep& rep, const FieldFunction& psi, const Subspace& sub,
                                        const TolerancePolicy& tol = {});

}  // namespace koopnet
