#include "dpt/curve_fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpt::fixtures {

namespace {

constexpr double kRadius = 10.0;
constexpr int kSamples = 2001;
constexpr std::size_t kEast = 1000;
constexpr double kHalfWindow = 1.5;

// Small kinks placed on a coil turn; each adds one crossing.
const CoilShape kSubShape{0.12, 0.05, 0.03, 0.1, 0.35, 160};
constexpr double kSubHalfWindow = 0.1;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

struct Frame {
  Point origin;
  double dr, dz;  // unit tangent
  double nr, nz;  // unit normal on the chosen side
};

Frame frame_at(const std::vector<Point>& poly, std::size_t idx, Side side) {
  if (idx == 0 || idx + 1 >= poly.size()) throw std::out_of_range("insert index must be interior");
  double dr = poly[idx + 1].r - poly[idx - 1].r;
  double dz = poly[idx + 1].z - poly[idx - 1].z;
  const double len = std::hypot(dr, dz);
  dr /= len;
  dz /= len;
  const double s = side == Side::Left ? 1.0 : -1.0;
  return {poly[idx], dr, dz, -dz * s, dr * s};
}

Point place(const Frame& f, Point local) {
  return {f.origin.r + local.r * f.dr + local.z * f.nr, f.origin.z + local.r * f.dz + local.z * f.nz};
}

GeneratingCurve on_body(const std::vector<Point>& coil) {
  return {insert_template(half_circle(kRadius, kSamples), kEast, coil, Side::Left, kHalfWindow), 1e-9};
}

void require_odd(int k) {
  if (k % 2 == 0) throw std::invalid_argument("k must be odd");
}

}  // namespace

std::vector<Point> half_circle(double radius, int samples) {
  std::vector<Point> out;
  for (double th : linspace(0.0, std::numbers::pi, samples)) out.push_back({radius * std::sin(th), radius * std::cos(th)});
  out.front().r = 0.0;
  out.back().r = 0.0;
  return out;
}

std::vector<Point> coil_template(int m, CoilKind kind, const CoilShape& shape) {
  const int turns = m + 1;
  const double y = shape.a + shape.b + shape.gap;
  std::vector<Point> out{{-shape.len, 0.0}};
  for (double phi : linspace(shape.beta, 2 * std::numbers::pi * turns - shape.beta, shape.points_per_turn * turns)) {
    const double rho = shape.a + shape.b * std::cos(phi / turns);
    const double ux = kind == CoilKind::Splice ? -std::sin(phi) : std::sin(phi);
    const double uy = -std::cos(phi);
    out.push_back({rho * ux, y + rho * uy});
  }
  out.push_back({shape.len, 0.0});
  return out;
}

std::vector<Point> insert_template(const std::vector<Point>& poly, std::size_t idx, const std::vector<Point>& tmpl,
                                   Side side, double halfwin) {
  const Frame f = frame_at(poly, idx, side);
  std::vector<double> cum(poly.size(), 0.0);
  for (std::size_t i = 1; i < poly.size(); ++i)
    cum[i] = cum[i - 1] + std::hypot(poly[i].r - poly[i - 1].r, poly[i].z - poly[i - 1].z);
  const double s0 = cum[idx];
  std::size_t lo = 0;
  while (lo + 1 < poly.size() && cum[lo + 1] < s0 - halfwin) ++lo;
  std::size_t hi = poly.size() - 1;
  while (hi > 0 && cum[hi - 1] > s0 + halfwin) --hi;
  if (cum[lo] >= s0 - halfwin || cum[hi] <= s0 + halfwin) throw std::out_of_range("insert window exceeds the polyline");

  std::vector<Point> out(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(lo) + 1);
  for (std::size_t i = 1; i + 1 < tmpl.size(); ++i) out.push_back(place(f, tmpl[i]));
  out.insert(out.end(), poly.begin() + static_cast<std::ptrdiff_t>(hi), poly.end());
  return out;
}

GeneratingCurve f_curve(int k) {
  require_odd(k);
  if (k == 1) return {half_circle(kRadius, kSamples), 1e-9};
  const bool up = k > 1;
  const int m = up ? (k - 1) / 2 : (-k - 1) / 2;
  return on_body(coil_template(m, up ? CoilKind::Splice : CoilKind::Kink));
}

GeneratingCurve g_curve(int k) {
  require_odd(k);
  if (k == 1) return {half_circle(kRadius, kSamples), 1e-9};
  const bool up = k > 1;
  const int m = up ? (k - 1) / 2 : (-k - 1) / 2;
  const CoilKind kind = up ? CoilKind::Splice : CoilKind::Kink;
  const CoilShape outer;
  std::vector<Point> coil = coil_template(m, kind, outer);

  // Two kinks on opposite sides of the middle turn, the later one first so
  // the earlier index stays put.
  const int turns = m + 1;
  const auto phis = linspace(outer.beta, 2 * std::numbers::pi * turns - outer.beta, outer.points_per_turn * turns);
  const auto sub = coil_template(up ? m - 1 : m, CoilKind::Kink, kSubShape);
  const Side side = up ? Side::Left : Side::Right;
  for (double target : {std::numbers::pi * turns + std::numbers::pi / 2, std::numbers::pi * turns - std::numbers::pi / 2}) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < phis.size(); ++i)
      if (std::abs(phis[i] - target) < std::abs(phis[best] - target)) best = i;
    coil = insert_template(coil, best + 1, sub, side, kSubHalfWindow);
  }
  return on_body(coil);
}

GeneratingCurve j_curve() { return f_curve(3); }

Point j_inner_point() {
  const CoilShape shape;
  const Frame f = frame_at(half_circle(kRadius, kSamples), kEast, Side::Left);
  return place(f, {0.0, shape.a + shape.b + shape.gap});
}

GeneratingCurve two_lobes_curve() {
  const auto coil = coil_template(1, CoilKind::Splice);
  auto poly = half_circle(kRadius, kSamples);
  poly = insert_template(poly, 1400, coil, Side::Left, kHalfWindow);
  poly = insert_template(poly, 600, coil, Side::Left, kHalfWindow);
  return {poly, 1e-9};
}

}  // namespace dpt::fixtures
