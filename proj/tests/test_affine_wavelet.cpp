#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "koopnet/affine_wavelet.hpp"
#include "koopnet/errors.hpp"

using namespace koopnet;
using namespace koopnet::affine;

namespace {

double hat(double x) { return (1.0 - x * x) * std::exp(-0.5 * x * x); }

GridSpec aligned_spec() {
  // signal and shift grids share the spacing 1/32
  GridSpec s;
  s.x_min = -8.0;
  s.x_max = 8.0;
  s.n_x = 513;
  s.b_min = -8.0;
  s.b_max = 8.0;
  s.n_b = 513;
  s.a_min = 0.25;
  s.a_max = 4.0;
  s.n_a = 5;
  return s;
}

}  // namespace

TEST_CASE("admissibility constant of the Mexican hat is pi") {
  const AffineGrid grid{GridSpec{}};
  const auto est = admissibility_affine(mexican_hat(grid));
  CHECK(est.admissible);
  CHECK(std::abs(est.c_psi - std::numbers::pi) / std::numbers::pi < 5e-4);
  // estimates refine monotonically toward the limit
  CHECK(std::abs(est.refinement[2] - std::numbers::pi) <= std::abs(est.refinement[0] - std::numbers::pi));
}

TEST_CASE("admissibility constant is invariant under L1-normalized dilation") {
  const AffineGrid grid{GridSpec{}};
  const double s = 1.5;
  const auto dilated = sample(grid, [s](double x) { return hat(x / s) / s; });
  const auto est = admissibility_affine(dilated);
  CHECK(est.admissible);
  CHECK(std::abs(est.c_psi - std::numbers::pi) / std::numbers::pi < 1e-3);
  // L2-normalized dilation scales C by s
  const auto l2 = sample(grid, [s](double x) { return hat(x / s) / std::sqrt(s); });
  CHECK(admissibility_affine(l2).c_psi / std::numbers::pi == doctest::Approx(s).epsilon(1e-3));
}

TEST_CASE("nonzero-mean and zero wavelets") {
  const AffineGrid grid{GridSpec{}};
  const auto est = admissibility_affine(gaussian(grid));
  CHECK_FALSE(est.admissible);
  CHECK(std::isinf(est.c_psi));
  // the estimate keeps rising as the frequency grid refines
  CHECK(est.refinement[2] > est.refinement[1]);
  CHECK(est.refinement[1] > est.refinement[0]);
  SampledSignal zero = gaussian(grid);
  for (auto& v : zero.values) v = 0.0;
  CHECK_THROWS_AS(admissibility_affine(zero), ZeroVectorError);
  const auto W = wavelet_transform(grid, gaussian(grid), gaussian(grid));
  CHECK_THROWS_AS(wavelet_reconstruct(grid, gaussian(grid), W, est.c_psi), InadmissibleWaveletError);
  CHECK_THROWS_AS(wavelet_reconstruct(grid, gaussian(grid), W, 0.0), InadmissibleWaveletError);
}

TEST_CASE("default grid reconstructs the Gaussian bump and refines") {
  const GridSpec spec;
  const AffineGrid grid{spec};
  const auto psi = mexican_hat(grid);
  const auto f = gaussian(grid);
  const double c = admissibility_affine(psi).c_psi;
  const auto W = wavelet_transform(grid, psi, f);
  CHECK(W.rows() == static_cast<Eigen::Index>(spec.n_b));
  CHECK(W.cols() == static_cast<Eigen::Index>(spec.n_a));
  const auto rec = wavelet_reconstruct(grid, psi, W, c);
  CHECK(relative_l2_error(rec, f) < 5e-2);
  const auto rows = refinement_study(spec, psi, f, c);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].n_a == spec.n_a);
  CHECK(rows[2].n_b == spec.n_b);
  CHECK(rows[0].relative_error > rows[1].relative_error);
  CHECK(rows[1].relative_error > rows[2].relative_error);
  CHECK(rows[2].relative_error == doctest::Approx(relative_l2_error(rec, f)));
}

TEST_CASE("narrow grid is truncation-limited for a nonzero-mean signal") {
  GridSpec narrow;
  narrow.a_min = 1.0 / 16.0;
  narrow.a_max = 16.0;
  narrow.n_a = 32;
  narrow.b_min = -8.0;
  narrow.b_max = 8.0;
  narrow.n_b = 256;
  const AffineGrid grid{narrow};
  const auto psi = mexican_hat(grid);
  const auto f = gaussian(grid);
  const auto rows = refinement_study(narrow, psi, f, admissibility_affine(psi).c_psi);
  CHECK(rows[2].relative_error > 0.2);
  CHECK(std::abs(rows[2].relative_error - rows[1].relative_error) < 0.05);
}

TEST_CASE("energy identity") {
  const AffineGrid grid{GridSpec{}};
  const auto psi = mexican_hat(grid);
  // a zero-mean signal keeps the large-scale tail small
  const auto f = sample(grid, [](double x) { return x * std::exp(-0.5 * x * x); });
  const double c = admissibility_affine(psi).c_psi;
  const double energy = coefficient_energy(grid, wavelet_transform(grid, psi, f));
  const double nf = l2_norm(f);
  CHECK(energy / (c * nf * nf) == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("translation covariance and localization") {
  const AffineGrid grid{aligned_spec()};
  REQUIRE(grid.dx() == doctest::Approx(1.0 / 32.0));
  REQUIRE(grid.shifts()[1] - grid.shifts()[0] == doctest::Approx(1.0 / 32.0));
  const auto psi = mexican_hat(grid);
  const auto f = gaussian(grid);
  const auto f_moved = sample(grid, [](double x) { return std::exp(-0.5 * (x - 1.0) * (x - 1.0)); });
  const auto W = wavelet_transform(grid, psi, f);
  const auto Wm = wavelet_transform(grid, psi, f_moved);
  const Eigen::Index step = 32;
  double gap = 0.0;
  for (Eigen::Index ib = 0; ib + step < W.rows(); ++ib)
    for (Eigen::Index ja = 0; ja < W.cols(); ++ja) gap = std::max(gap, std::abs(Wm(ib + step, ja) - W(ib, ja)));
  CHECK(gap < 1e-8 * W.cwiseAbs().maxCoeff());

  // autocorrelation of a shifted hat peaks at the shift, at a = 1
  REQUIRE(grid.scales()[2] == doctest::Approx(1.0));
  const auto bump = sample(grid, [](double x) { return hat(x - 1.0); });
  const auto Wb = wavelet_transform(grid, psi, bump);
  Eigen::Index arg = 0;
  Wb.col(2).cwiseAbs().maxCoeff(&arg);
  CHECK(grid.shifts()[static_cast<std::size_t>(arg)] == doctest::Approx(1.0));
}

TEST_CASE("linear in f, conjugate-linear in psi") {
  const AffineGrid grid{aligned_spec()};
  const auto psi = mexican_hat(grid);
  const auto psi2 = sample(grid, [](double x) { return x * std::exp(-0.5 * x * x); });
  const auto f = gaussian(grid);
  const auto h = sample(grid, [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); });
  const Complex a(0.5, 2.0), b(-1.0, 0.25);
  auto combine = [](Complex s, const SampledSignal& u, Complex t, const SampledSignal& v) {
    SampledSignal out = u;
    for (std::size_t i = 0; i < u.size(); ++i) out.values[i] = s * u.values[i] + t * v.values[i];
    return out;
  };
  const auto lhs = wavelet_transform(grid, psi, combine(a, f, b, h));
  const auto rhs = a * wavelet_transform(grid, psi, f) + b * wavelet_transform(grid, psi, h);
  CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
  const auto lhs2 = wavelet_transform(grid, combine(a, psi, b, psi2), f);
  const auto rhs2 = std::conj(a) * wavelet_transform(grid, psi, f) + std::conj(b) * wavelet_transform(grid, psi2, f);
  CHECK((lhs2 - rhs2).norm() < 1e-12 * rhs2.norm());
}

TEST_CASE("grid validation and sampling checks") {
  GridSpec bad;
  bad.n_a = 1;
  CHECK_THROWS_AS(AffineGrid{bad}, InvalidParameterError);
  bad = GridSpec{};
  bad.a_min = 0.0;
  CHECK_THROWS_AS(AffineGrid{bad}, InvalidParameterError);
  bad = GridSpec{};
  bad.b_max = bad.b_min;
  CHECK_THROWS_AS(AffineGrid{bad}, InvalidParameterError);

  const AffineGrid grid{GridSpec{}};
  const AffineGrid other{aligned_spec()};
  CHECK_THROWS_AS(wavelet_transform(grid, mexican_hat(other), gaussian(grid)), DimensionError);
  CHECK_THROWS_AS(wavelet_transform(grid, mexican_hat(grid), gaussian(other)), DimensionError);
}

TEST_CASE("sampled-signal helpers") {
  SampledSignal s{{0.0, 2.0, 4.0}, 0.5, -0.5};
  CHECK(s.interpolate(-0.25) == Complex(1.0));
  CHECK(s.interpolate(0.5) == Complex(4.0));
  CHECK(s.interpolate(0.6) == Complex(0.0));
  CHECK(s.interpolate(-0.6) == Complex(0.0));
  CHECK(l2_norm(s) == doctest::Approx(std::sqrt(0.5 * 20.0)));
  SampledSignal zero{{0.0, 0.0, 0.0}, 0.5, -0.5};
  CHECK(std::isnan(relative_l2_error(s, zero)));
  CHECK(relative_l2_error(zero, s) == doctest::Approx(1.0));
}

TEST_CASE("coefficient CSV") {
  GridSpec tiny = aligned_spec();
  tiny.n_b = 2;
  tiny.n_a = 2;
  const AffineGrid grid{tiny};
  const auto W = wavelet_transform(grid, mexican_hat(grid), gaussian(grid));
  std::ostringstream os;
  write_coefficients_csv(os, grid, W);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "b,a,re,im");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
}
