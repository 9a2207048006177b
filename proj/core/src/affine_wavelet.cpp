#include "koopnet/affine_wavelet.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "koopnet/errors.hpp"

namespace koopnet::affine {

namespace {

std::vector<double> trapezoid(std::size_t n, double step) {
  std::vector<double> w(n, step);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

void require_on_grid(const AffineGrid& grid, const SampledSignal& s, const char* name) {
  if (s.size() != grid.n_x() || std::abs(s.dx - grid.dx()) > 1e-12 * grid.dx() ||
      std::abs(s.x0 - grid.spec().x_min) > 1e-12 * std::max(1.0, std::abs(grid.spec().x_min))) {
    throw DimensionError(std::string(name) + " is not sampled on the grid's signal points");
  }
}

// Half-line trapezoid of |psi^|^2 / |w| from the first nonzero bin to Nyquist.
double half_line_integral(const std::vector<Complex>& spectrum, double dw, bool positive) {
  const std::size_t n = spectrum.size();
  const std::size_t half = n / 2;
  double acc = 0.0;
  for (std::size_t k = 1; k <= half; ++k) {
    const std::size_t idx = positive ? k : (n - k) % n;
    const double omega = dw * static_cast<double>(k);
    double term = std::norm(spectrum[idx]) / omega;
    if (k == 1 || k == half) term *= 0.5;
    acc += term;
  }
  return acc * dw;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Complex SampledSignal::interpolate(double t) const {
  const double p = (t - x0) / dx;
  if (!(p >= 0.0) || p > static_cast<double>(values.size() - 1)) return 0.0;
  const auto i = static_cast<std::size_t>(p);
  if (i + 1 >= values.size()) return values.back();
  const double frac = p - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

double l2_norm(const SampledSignal& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::norm(v);
  return std::sqrt(acc * f.dx);
}

double relative_l2_error(const SampledSignal& approx, const SampledSignal& reference) {
  if (approx.size() != reference.size()) throw DimensionError("signals have different lengths");
  const double ref = l2_norm(reference);
  if (ref == 0.0) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) acc += std::norm(approx.values[i] - reference.values[i]);
  return std::sqrt(acc * reference.dx) / ref;
}

AffineGrid::AffineGrid(const GridSpec& spec) : spec_(spec) {
  if (spec.n_a < 2 || spec.n_b < 2 || spec.n_x < 2)
    throw InvalidParameterError("grid counts must be at least 2");
  if (!(spec.a_min > 0.0) || !(spec.a_min < spec.a_max))
    throw InvalidParameterError("scales need 0 < a_min < a_max");
  if (!(spec.b_min < spec.b_max)) throw InvalidParameterError("shifts need b_min < b_max");
  if (!(spec.x_min < spec.x_max)) throw InvalidParameterError("signal grid needs x_min < x_max");

  const double du = std::log(spec.a_max / spec.a_min) / static_cast<double>(spec.n_a - 1);
  scales_.resize(spec.n_a);
  for (std::size_t j = 0; j < spec.n_a; ++j) scales_[j] = spec.a_min * std::exp(du * static_cast<double>(j));
  scales_.back() = spec.a_max;
  a_weights_ = trapezoid(spec.n_a, du);
  for (std::size_t j = 0; j < spec.n_a; ++j) a_weights_[j] /= scales_[j];

  const double db = (spec.b_max - spec.b_min) / static_cast<double>(spec.n_b - 1);
  shifts_.resize(spec.n_b);
  for (std::size_t i = 0; i < spec.n_b; ++i) shifts_[i] = spec.b_min + db * static_cast<double>(i);
  b_weights_ = trapezoid(spec.n_b, db);

  dx_ = (spec.x_max - spec.x_min) / static_cast<double>(spec.n_x - 1);
}

SampledSignal mexican_hat(const AffineGrid& grid) {
  return sample(grid, [](double x) { return (1.0 - x * x) * std::exp(-0.5 * x * x); });
}

SampledSignal gaussian(const AffineGrid& grid, double sigma) {
  return sample(grid, [sigma](double x) { return std::exp(-0.5 * x * x / (sigma * sigma)); });
}

CoefficientMatrix wavelet_transform(const AffineGrid& grid, const SampledSignal& psi, const SampledSignal& f) {
  require_on_grid(grid, psi, "psi");
  require_on_grid(grid, f, "f");
  const auto& a = grid.scales();
  const auto& b = grid.shifts();
  CoefficientMatrix W(static_cast<Eigen::Index>(b.size()), static_cast<Eigen::Index>(a.size()));
  for (std::size_t ja = 0; ja < a.size(); ++ja) {
    const double norm = 1.0 / std::sqrt(a[ja]);
    for (std::size_t ib = 0; ib < b.size(); ++ib) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < grid.n_x(); ++i) {
        const Complex fi = f.values[i];
        if (fi == Complex(0.0)) continue;
        acc += fi * std::conj(psi.interpolate((grid.x(i) - b[ib]) / a[ja]));
      }
      W(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(ja)) = acc * norm * grid.dx();
    }
  }
  return W;
}

SampledSignal wavelet_reconstruct(const AffineGrid& grid, const SampledSignal& psi, const CoefficientMatrix& W,
                                  double c_psi) {
  if (!std::isfinite(c_psi) || c_psi < 1e-12)
    throw InadmissibleWaveletError("wavelet is not admissible (C_psi = " + std::to_string(c_psi) + ")");
  require_on_grid(grid, psi, "psi");
  const auto& a = grid.scales();
  const auto& b = grid.shifts();
  if (W.rows() != static_cast<Eigen::Index>(b.size()) || W.cols() != static_cast<Eigen::Index>(a.size()))
    throw DimensionError("coefficient matrix does not match the grid");

  SampledSignal out;
  out.dx = grid.dx();
  out.x0 = grid.spec().x_min;
  out.values.assign(grid.n_x(), Complex(0.0));
  for (std::size_t ja = 0; ja < a.size(); ++ja) {
    const double norm = 1.0 / std::sqrt(a[ja]);
    for (std::size_t ib = 0; ib < b.size(); ++ib) {
      const Complex c = W(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(ja)) * grid.weight(ib, ja) * norm;
      if (c == Complex(0.0)) continue;
      for (std::size_t i = 0; i < grid.n_x(); ++i)
        out.values[i] += c * psi.interpolate((grid.x(i) - b[ib]) / a[ja]);
    }
  }
  for (auto& v : out.values) v /= c_psi;
  return out;
}

double coefficient_energy(const AffineGrid& grid, const CoefficientMatrix& W) {
  double acc = 0.0;
  for (Eigen::Index ja = 0; ja < W.cols(); ++ja)
    for (Eigen::Index ib = 0; ib < W.rows(); ++ib)
      acc += std::norm(W(ib, ja)) * grid.weight(static_cast<std::size_t>(ib), static_cast<std::size_t>(ja));
  return acc;
}

AdmissibilityEstimate admissibility_affine(const SampledSignal& psi, double stability) {
  if (l2_norm(psi) == 0.0) throw ZeroVectorError("admissibility constant of the zero signal");

  AdmissibilityEstimate est;
  Eigen::FFT<double> fft;
  const std::size_t base = next_pow2(psi.size());
  const std::array<std::size_t, 3> padding{4, 8, 16};
  for (std::size_t level = 0; level < padding.size(); ++level) {
    const std::size_t n = base * padding[level];
    std::vector<Complex> in(n, Complex(0.0)), spectrum;
    std::copy(psi.values.begin(), psi.values.end(), in.begin());
    fft.fwd(spectrum, in);
    for (auto& s : spectrum) s *= psi.dx;
    const double dw = 2.0 * std::numbers::pi / (static_cast<double>(n) * psi.dx);
    est.refinement[level] = 0.5 * (half_line_integral(spectrum, dw, true) + half_line_integral(spectrum, dw, false));
  }
  const double last = est.refinement[2];
  const double step = std::abs(est.refinement[2] - est.refinement[1]);
  est.admissible = std::isfinite(last) && last > 0.0 && step <= stability * last;
  est.c_psi = est.admissible ? last : std::numeric_limits<double>::infinity();
  return est;
}

std::vector<RefinementRow> refinement_study(const GridSpec& spec, const SampledSignal& psi, const SampledSignal& f,
                                            double c_psi) {
  std::vector<RefinementRow> rows;
  for (std::size_t divisor : {4u, 2u, 1u}) {
    GridSpec level = spec;
    level.n_a = std::max<std::size_t>(2, spec.n_a / divisor);
    level.n_b = std::max<std::size_t>(2, spec.n_b / divisor);
    const AffineGrid grid(level);
    const SampledSignal rec = wavelet_reconstruct(grid, psi, wavelet_transform(grid, psi, f), c_psi);
    rows.push_back({level.n_a, level.n_b, relative_l2_error(rec, f)});
  }
  return rows;
}

void write_coefficients_csv(std::ostream& os, const AffineGrid& grid, const CoefficientMatrix& W) {
  const auto old = os.precision(17);
  os << "b,a,re,im\n";
  for (std::size_t ja = 0; ja < grid.scales().size(); ++ja) {
    for (std::size_t ib = 0; ib < grid.shifts().size(); ++ib) {
      const Complex w = W(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(ja));
      os << grid.shifts()[ib] << ',' << grid.scales()[ja] << ',' << w.real() << ',' << w.imag() << '\n';
    }
  }
  os.precision(old);
}

}  // namespace koopnet::affine
