#pragma once

// Reference computations for the test suites. Nothing here calls the
// library's transforms, commutant solver or decomposition: values are
// computed by direct summation over the action table, combinatorics, or
// closed forms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <vector>

#include "koopnet/function_space.hpp"
#include "koopnet/group.hpp"
#include "koopnet/koopman.hpp"

namespace oracle {

using koopnet::Complex;

/// chi_k(x) = exp(2 pi i k x / n) on Z_n.
inline koopnet::FieldFunction character(std::shared_ptr<const koopnet::InvariantMeasure> measure, std::size_t n,
                                        std::size_t k) {
  koopnet::Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x)
    v(static_cast<Eigen::Index>(x)) =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k * x % n) / static_cast<double>(n));
  return koopnet::FieldFunction(std::move(measure), std::move(v));
}

inline Complex chi(std::size_t n, std::size_t k, std::size_t x) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k * x % n) / static_cast<double>(n));
}

/// Orbits of G on X x X. For a permutation representation this equals the
/// dimension of the commutant (T commutes iff T(g·x, g·y) = T(x, y)).
inline std::size_t orbital_count(const koopnet::GAction& action) {
  const std::size_t n = action.num_points();
  std::vector<char> seen(n * n, 0);
  std::size_t orbits = 0;
  for (std::size_t p = 0; p < n * n; ++p) {
    if (seen[p]) continue;
    ++orbits;
    const std::size_t x = p / n, y = p % n;
    for (koopnet::Element g = 0; g < action.group().order(); ++g) seen[action.act(g, x) * n + action.act(g, y)] = 1;
  }
  return orbits;
}

/// Rank over F_p of the commutator constraints T K_g - K_g T = 0 for every
/// element g, with T as an n x n unknown. Returns n^2 - rank.
inline std::size_t modular_commutant_dim(const koopnet::GAction& action) {
  constexpr std::int64_t p = 1'000'000'007;
  const std::size_t n = action.num_points();
  const std::size_t unknowns = n * n;
  std::vector<std::vector<std::int64_t>> rows;
  // (T K_g)(x, y) = T(x, g^-1 y) ... expressed via K_g(x, z) = [z = g·x]:
  // (T K)(x, y) = sum_z T(x, z) K(z, y) = sum_{z : g·z = y} T(x, z)
  // (K T)(x, y) = T(g·x, y)
  for (koopnet::Element g = 0; g < action.group().order(); ++g) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::vector<std::int64_t> row(unknowns, 0);
        for (std::size_t z = 0; z < n; ++z)
          if (action.act(g, z) == y) row[x * n + z] += 1;
        row[action.act(g, x) * n + y] -= 1;
        for (auto& v : row) v = ((v % p) + p) % p;
        rows.push_back(std::move(row));
      }
    }
  }
  auto power = [&](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= p;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::int64_t inv = power(rows[rank][col], p - 2);
    for (auto& v : rows[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::int64_t factor = rows[r][col];
      for (std::size_t c = col; c < unknowns; ++c) rows[r][c] = ((rows[r][c] - factor * rows[rank][c]) % p + p) % p;
    }
    ++rank;
  }
  return unknowns - rank;
}

/// (1/|G|) sum_g |tr rho(g)|^2 for the restriction to span(basis) (assumed
/// orthonormal and invariant); equals the restricted commutant dimension.
/// Traces are computed by direct summation over the action table.
inline double character_norm(const koopnet::KoopmanRep& rep, const std::vector<koopnet::FieldFunction>& basis) {
  const auto& w = rep.space_measure()->weights;
  double acc = 0.0;
  for (koopnet::Element g = 0; g < rep.group_order(); ++g) {
    Complex trace = 0.0;
    for (const auto& b : basis)
      for (std::size_t x = 0; x < rep.dim(); ++x) trace += w[x] * b(rep.action().act(g, x)) * std::conj(b(x));
    acc += std::norm(trace);
  }
  return acc / static_cast<double>(rep.group_order());
}

/// R_psi[f](g) by direct summation.
inline std::vector<Complex> ridgelet(const koopnet::KoopmanRep& rep, const koopnet::FieldFunction& psi,
                                     const koopnet::FieldFunction& f) {
  const auto& w = rep.space_measure()->weights;
  std::vector<Complex> out(rep.group_order(), 0.0);
  for (koopnet::Element g = 0; g < rep.group_order(); ++g)
    for (std::size_t x = 0; x < rep.dim(); ++x) out[g] += w[x] * f(x) * std::conj(psi(rep.action().act(g, x)));
  return out;
}

/// Explicit matrix of DNN_psi o R_psi in function coordinates:
/// M(x, y) = sum_g psi(g·x) w(y) conj(psi(g·y)).
inline koopnet::Matrix dnn_ridgelet_matrix(const koopnet::KoopmanRep& rep, const koopnet::FieldFunction& psi) {
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const auto& w = rep.space_measure()->weights;
  koopnet::Matrix M = koopnet::Matrix::Zero(n, n);
  for (koopnet::Element g = 0; g < rep.group_order(); ++g)
    for (std::size_t x = 0; x < rep.dim(); ++x)
      for (std::size_t y = 0; y < rep.dim(); ++y)
        M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) +=
            psi(rep.action().act(g, x)) * w[y] * std::conj(psi(rep.action().act(g, y)));
  return M;
}

/// Orthogonal projector onto span(vectors) in C^n (standard inner product),
/// via an independent QR of the stacked columns.
inline koopnet::Matrix projector(const koopnet::Matrix& columns) {
  Eigen::HouseholderQR<koopnet::Matrix> qr(columns);
  const koopnet::Matrix Q = qr.householderQ() * koopnet::Matrix::Identity(columns.rows(), columns.cols());
  return Q * Q.adjoint();
}

inline koopnet::Matrix columns_of(const std::vector<koopnet::FieldFunction>& fs) {
  koopnet::Matrix B(static_cast<Eigen::Index>(fs.front().size()), static_cast<Eigen::Index>(fs.size()));
  for (std::size_t j = 0; j < fs.size(); ++j) B.col(static_cast<Eigen::Index>(j)) = fs[j].values();
  return B;
}

}  // namespace oracle
