#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mlfc/error.hpp"
#include "mlfc/text.hpp"
#include "mlfc/mittag_leffler.hpp"

namespace mlfc {

double envelope_formula(const MLParams& p, complex z, double c1, double c2) {
  const double r = std::abs(z);
  double re_root = 0.0;
  if (r > 0.0) re_root = std::exp(std::log(r) / p.alpha) * std::cos(std::arg(z) / p.alpha);
  return c1 * std::pow(1.0 + r, (1.0 - p.beta) / p.alpha) * std::exp(re_root) +
         c2 / (1.0 + r);
}

double sector_envelope(const MLParams& p, complex z, const SectorBoundParams& sb) {
  p.validate();
  const double pi = std::numbers::pi;
  if (!(sb.c1 > 0.0 && sb.c2 > 0.0)) {
    fail(ErrorKind::InvalidArgument, "sector constants must be positive");
  }
  if (p.alpha < 2.0 &&
      !(sb.theta_sector > 0.5 * pi * p.alpha && sb.theta_sector < std::min(pi, pi * p.alpha))) {
    fail(ErrorKind::InvalidArgument,
         "theta_sector must satisfy pi alpha/2 < theta < min(pi, pi alpha)");
  }
  double a = std::fabs(std::arg(z));
  if (a > sb.theta_sector) {
    fail(ErrorKind::OutsideSector, "|arg z| = " + format_double(a) +
                                       " exceeds theta_sector = " +
                                       format_double(sb.theta_sector));
  }
  return envelope_formula(p, z, sb.c1, sb.c2);
}

SectorFit fit_sector_constants(const MLParams& p, std::span<const complex> zs,
                               double rel_tol) {
  p.validate();
  if (zs.empty()) fail(ErrorKind::InvalidArgument, "empty z grid");
  MittagLeffler ml(p, rel_tol);
  const size_t n = zs.size();
  std::vector<double> a(n), b(n), e(n);
  double t_hi = 0.0;
  for (size_t i = 0; i < n; ++i) {
    a[i] = envelope_formula(p, zs[i], 1.0, 0.0);
    b[i] = envelope_formula(p, zs[i], 0.0, 1.0);
    e[i] = std::abs(ml(zs[i]));
    if (a[i] > 0.0) t_hi = std::max(t_hi, e[i] / a[i]);
  }
  // For fixed C1 = t the smallest admissible C2 is piecewise linear and convex
  // in t, so C1 + C2 is minimised by ternary search.
  auto c2_of = [&](double t) {
    double c2 = 0.0;
    for (size_t i = 0; i < n; ++i) c2 = std::max(c2, (e[i] - t * a[i]) / b[i]);
    return c2;
  };
  double lo = 0.0, hi = t_hi;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (m1 + c2_of(m1) <= m2 + c2_of(m2)) hi = m2; else lo = m1;
  }
  SectorFit fit;
  const double safety = 1.0 + 1e-9;
  fit.c1 = std::max(0.5 * (lo + hi), 1e-300) * safety;
  fit.c2 = std::max(c2_of(0.5 * (lo + hi)), 1e-300) * safety;
  for (size_t i = 0; i < n; ++i) {
    double env = fit.c1 * a[i] + fit.c2 * b[i];
    fit.max_ratio = std::max(fit.max_ratio, e[i] / env);
  }
  return fit;
}

}  // namespace mlfc
