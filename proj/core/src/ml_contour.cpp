#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "mlfc/error.hpp"
#include "mlfc/mittag_leffler.hpp"

namespace mlfc {
namespace {

using ld = long double;
using cld = std::complex<ld>;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;

// E_{alpha,beta}(z) for beta < alpha + 1 via
//   sum of residues (1/alpha) s_j^{1-beta} e^{s_j} over poles s_j^alpha = z with
//   |arg s_j| < psi, plus (1/2 pi i) times the integral of
//   e^s s^{alpha-beta} / (s^alpha - z) along the rays arg s = -psi (inwards)
//   and arg s = +psi (outwards).
cld contour_core(ld alpha, ld beta, cld z) {
  const ld r = std::abs(z);
  const ld theta = std::arg(z);
  const ld logw = std::log(r) / alpha;
  const ld w = std::exp(logw);

  std::vector<ld> pole_args;
  for (int j = -3; j <= 3; ++j) {
    ld phi = (theta + 2 * kPiL * j) / alpha;
    if (std::fabs(phi) < kPiL) pole_args.push_back(phi);
  }
  // Ray angle as far as possible from every pole.
  ld psi = 0.8L * kPiL, best = -1;
  for (int i = 0; i <= 70; ++i) {
    ld cand = kPiL * (0.6L + 0.005L * i);
    ld d = INFINITY;
    for (ld phi : pole_args) d = std::min(d, std::fabs(std::fabs(phi) - cand));
    if (d > best) {
      best = d;
      psi = cand;
    }
  }

  cld residues = 0;
  for (ld phi : pole_args) {
    if (std::fabs(phi) >= psi) continue;
    cld e((1 - beta) * logw + w * std::cos(phi), (1 - beta) * phi + w * std::sin(phi));
    residues += std::exp(e) / alpha;
  }

  const cld rot_p = std::polar<ld>(1, psi), rot_m = std::polar<ld>(1, -psi);
  const cld za_p = std::polar<ld>(1, alpha * psi), za_m = std::polar<ld>(1, -alpha * psi);
  const cld pre_p = std::polar<ld>(1, (alpha - beta + 1) * psi);
  const cld pre_m = std::polar<ld>(1, -(alpha - beta + 1) * psi);
  // Integrand without the factor r^{alpha-beta}.
  auto h = [&](ld rr) -> cld {
    ld ra = std::pow(rr, alpha);
    cld fp = std::exp(rr * rot_p) * pre_p / (ra * za_p - z);
    cld fm = std::exp(rr * rot_m) * pre_m / (ra * za_m - z);
    return fp - fm;
  };
  const ld gamma_exp = alpha - beta;  // r^{alpha-beta}

  using GK = boost::math::quadrature::gauss_kronrod<ld, 61>;
  const ld tol = 1e-14L;
  cld integral = 0;

  // Near the origin r = u^m, m = 1/(alpha - beta + 1), absorbs r^{alpha-beta}.
  const ld c = std::min<ld>(1, w / 4);
  const ld m = 1 / (alpha - beta + 1);
  integral += GK::integrate(
      [&](ld u) -> cld { return m * h(std::pow(u, m)); }, 0, std::pow(c, 1 / m), 10, tol);

  // Panels resolve the e^{r cos psi} decay scale, plus extra breaks around the
  // pole radius when it lies in the non-negligible range.
  const ld decay = -std::cos(psi);
  const ld len = 4 / decay;
  const ld r_end = c + 130 / decay;
  std::vector<ld> cuts;
  for (ld x = c; x < r_end; x += len) cuts.push_back(x);
  cuts.push_back(r_end);
  for (ld f : {0.5L, 0.8L, 0.95L, 1.05L, 1.25L, 2.0L}) {
    if (f * w > c && f * w < r_end) cuts.push_back(f * w);
  }
  std::sort(cuts.begin(), cuts.end());
  auto g = [&](ld rr) -> cld { return h(rr) * std::pow(rr, gamma_exp); };
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    integral += GK::integrate(g, cuts[i], cuts[i + 1], 10, tol);
  }
  return residues + integral / cld(0, 2 * kPiL);
}

}  // namespace

complex ml_eval_contour(const MLParams& p, complex z) {
  p.validate();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorKind::InvalidArgument, "z must be finite");
  }
  if (z == complex(0.0, 0.0)) return rgamma(p.beta);
  const ld alpha = p.alpha;
  const cld zz(z.real(), z.imag());
  // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z lowers beta into the range
  // where the ray integrand is integrable at the origin.
  std::vector<ld> shifts;
  ld beta = p.beta;
  while (beta > alpha + 0.5L) {
    beta -= alpha;
    shifts.push_back(beta);
  }
  cld v = contour_core(alpha, beta, zz);
  for (auto it = shifts.rbegin(); it != shifts.rend(); ++it) {
    ld b = *it;
    ld rg = (b <= 0 && b == std::floor(b)) ? 0 : 1 / std::tgamma(b);
    v = (v - rg) / zz;
  }
  double re = static_cast<double>(v.real()), im = static_cast<double>(v.imag());
  if (!std::isfinite(re) || !std::isfinite(im)) {
    fail(ErrorKind::NonFinite, "contour value overflows double");
  }
  return complex(re, im);
}

}  // namespace mlfc
