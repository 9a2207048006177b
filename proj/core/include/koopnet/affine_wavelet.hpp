#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace koopnet::affine {

using Complex = std::complex<double>;
using CoefficientMatrix = Eigen::MatrixXcd;  // rows: shifts b, columns: scales a

/// Uniformly sampled complex signal, sample i at x0 + i*dx.
struct SampledSignal {
  std::vector<Complex> values;
  double dx = 1.0;
  double x0 = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
  /// Linear interpolation, zero outside [x0, x0 + (n-1)dx].
  Complex interpolate(double t) const;
};

/// sqrt(dx * sum |f|^2).
double l2_norm(const SampledSignal& f);

/// ||a - b|| / ||b||; NaN when ||b|| = 0.
double relative_l2_error(const SampledSignal& approx, const SampledSignal& reference);

struct GridSpec {
  double a_min = 0.125;
  double a_max = 256.0;
  std::size_t n_a = 48;
  double b_min = -128.0;
  double b_max = 128.0;
  std::size_t n_b = 512;
  double x_min = -8.0;
  double x_max = 8.0;
  std::size_t n_x = 512;
};

/// Log-uniform scales, uniform shifts and signal grid, with trapezoidal
/// weights for the affine Haar measure db da / a^2 (da = a d(ln a)).
class AffineGrid {
 public:
  /// Throws InvalidParameterError unless all counts >= 2, 0 < a_min < a_max,
  /// b_min < b_max and x_min < x_max.
  explicit AffineGrid(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  const std::vector<double>& scales() const noexcept { return scales_; }
  const std::vector<double>& shifts() const noexcept { return shifts_; }
  double dx() const noexcept { return dx_; }
  double x(std::size_t i) const noexcept { return spec_.x_min + static_cast<double>(i) * dx_; }
  std::size_t n_x() const noexcept { return spec_.n_x; }

  /// Quadrature weight of cell (b_i, a_j).
  double weight(std::size_t ib, std::size_t ja) const noexcept { return b_weights_[ib] * a_weights_[ja]; }

 private:
  GridSpec spec_;
  std::vector<double> scales_;
  std::vector<double> shifts_;
  std::vector<double> b_weights_;
  std::vector<double> a_weights_;  // trapezoid in ln a, divided by a
  double dx_;
};

/// Samples of a callable on the grid's signal points.
template <typename F>
SampledSignal sample(const AffineGrid& grid, F&& fn) {
  SampledSignal s;
  s.dx = grid.dx();
  s.x0 = grid.spec().x_min;
  s.values.reserve(grid.n_x());
  for (std::size_t i = 0; i < grid.n_x(); ++i) s.values.emplace_back(fn(grid.x(i)));
  return s;
}

/// (1 - x^2) exp(-x^2 / 2).
SampledSignal mexican_hat(const AffineGrid& grid);
/// exp(-x^2 / (2 sigma^2)).
SampledSignal gaussian(const AffineGrid& grid, double sigma = 1.0);

/// W(b,a) = dx * sum_x f(x) conj(a^{-1/2} psi((x-b)/a)). Throws DimensionError
/// if psi or f is not sampled on the grid's signal points.
CoefficientMatrix wavelet_transform(const AffineGrid& grid, const SampledSignal& psi, const SampledSignal& f);

/// (1/C) sum_{b,a} W(b,a) a^{-1/2} psi((x-b)/a) w(b,a) on the signal grid.
/// Throws InadmissibleWaveletError if C is not finite or below 1e-12.
SampledSignal wavelet_reconstruct(const AffineGrid& grid, const SampledSignal& psi, const CoefficientMatrix& W,
                                  double c_psi);

/// sum_{b,a} |W(b,a)|^2 w(b,a); approximates C_psi ||f||^2.
double coefficient_energy(const AffineGrid& grid, const CoefficientMatrix& W);

struct AdmissibilityEstimate {
  bool admissible = false;
  double c_psi = 0.0;                    // +inf when inadmissible
  std::array<double, 3> refinement{};    // estimates at zero-padding 4x, 8x, 16x
};

/// C_psi = 1/2 * integral |psi^(w)|^2 / |w| dw with psi^(w) = int psi(x) e^{-iwx} dx,
/// via the DFT and the trapezoidal rule without w = 0. Flagged inadmissible
/// when the last refinement step changes the estimate by more than
/// `stability` relative (the w -> 0 contribution has not converged).
/// Throws ZeroVectorError for psi = 0.
AdmissibilityEstimate admissibility_affine(const SampledSignal& psi, double stability = 1e-3);

struct RefinementRow {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double relative_error = 0.0;
};

/// Reconstruction error of f at (n_a, n_b) = spec/4, spec/2, spec.
std::vector<RefinementRow> refinement_study(const GridSpec& spec, const SampledSignal& psi, const SampledSignal& f,
                                            double c_psi);

/// CSV with header "b,a,re,im", one row per cell.
void write_coefficients_csv(std::ostream& os, const AffineGrid& grid, const CoefficientMatrix& W);

}  // namespace koopnet::affine
