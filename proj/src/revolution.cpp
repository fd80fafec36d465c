#include "dpt/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace dpt {

namespace {

struct Vec {
  double x, y;
};

Vec sub(Point a, Point b) { return {a.r - b.r, a.z - b.z}; }
double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
double norm(Vec a) { return std::hypot(a.x, a.y); }

double point_segment_distance(Point p, Point a, Point b) {
  const Vec ab = sub(b, a);
  const Vec ap = sub(p, a);
  const double len2 = dot(ab, ab);
  double t = len2 > 0 ? dot(ap, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(ap.x - t * ab.x, ap.y - t * ab.y);
}

std::string fmt(Point p) {
  std::ostringstream s;
  s << '(' << p.r << ", " << p.z << ')';
  return s.str();
}

// Cumulative arc length at each polyline vertex.
std::vector<double> arc_lengths(const std::vector<Point>& pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + norm(sub(pts[i], pts[i - 1]));
  return cum;
}

// Polyline plus its mirror image traversed backwards: a closed polygon.
std::vector<Point> doubled(const std::vector<Point>& pts) {
  std::vector<Point> out = pts;
  for (std::size_t i = pts.size() - 2; i >= 1; --i) out.push_back({-pts[i].r, pts[i].z});
  return out;
}

int winding_closed(const std::vector<Point>& poly, Point p) {
  // Crossing count: upward crossings with p on the left count +1.
  int w = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    const double side = (b.r - a.r) * (p.z - a.z) - (p.r - a.r) * (b.z - a.z);
    if (a.z <= p.z) {
      if (b.z > p.z && side > 0) ++w;
    } else if (b.z <= p.z && side < 0) {
      --w;
    }
  }
  // Clockwise traversal of the half circle's doubled curve counts as +1.
  return -w;
}

double min_distance_to_doubled(const std::vector<Point>& pts, Point p, std::size_t skip) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (i != skip) best = std::min(best, point_segment_distance(p, pts[i], pts[i + 1]));
    const Point a{-pts[i].r, pts[i].z};
    const Point b{-pts[i + 1].r, pts[i + 1].z};
    best = std::min(best, point_segment_distance(p, a, b));
  }
  return best;
}

}  // namespace

void check_curve(const GeneratingCurve& curve) {
  const auto& pts = curve.points;
  const double tol = curve.tolerance;
  if (!(tol > 0)) throw GeometryError("tolerance must be positive");
  if (pts.size() < 2) throw GeometryError("a generating curve needs at least two points");
  for (const Point& p : pts)
    if (!std::isfinite(p.r) || !std::isfinite(p.z)) throw GeometryError("non-finite coordinate");
  if (std::abs(pts.front().r) > tol || std::abs(pts.back().r) > tol)
    throw GeometryError("both endpoints must lie on the axis r = 0");
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if (!(pts[i].r > tol)) throw GeometryError("interior point " + fmt(pts[i]) + " is not strictly off the axis");
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (norm(sub(pts[i + 1], pts[i])) <= tol) throw GeometryError("degenerate segment at index " + std::to_string(i));
}

std::vector<PlanarCrossing> self_intersections(const GeneratingCurve& curve, const RevolutionOptions& opts) {
  check_curve(curve);
  const auto& pts = curve.points;
  const double tol = curve.tolerance;
  const std::size_t segs = pts.size() - 1;
  const auto cum = arc_lengths(pts);
  const double total = cum.back();
  const double min_sin = std::sin(opts.min_angle_degrees * std::numbers::pi / 180.0);

  struct Box {
    double r0, r1, z0, z1;
  };
  std::vector<Box> box(segs);
  for (std::size_t i = 0; i < segs; ++i)
    box[i] = {std::min(pts[i].r, pts[i + 1].r) - tol, std::max(pts[i].r, pts[i + 1].r) + tol,
              std::min(pts[i].z, pts[i + 1].z) - tol, std::max(pts[i].z, pts[i + 1].z) + tol};

  std::vector<PlanarCrossing> out;
  for (std::size_t i = 0; i < segs; ++i) {
    const Point p = pts[i];
    const Vec r = sub(pts[i + 1], p);
    const double lr = norm(r);
    for (std::size_t j = i + 2; j < segs; ++j) {
      if (box[i].r1 < box[j].r0 || box[j].r1 < box[i].r0 || box[i].z1 < box[j].z0 || box[j].z1 < box[i].z0) continue;
      const Point q = pts[j];
      const Vec s = sub(pts[j + 1], q);
      const double ls = norm(s);
      const double rxs = cross(r, s);
      const Vec qp = sub(q, p);
      if (std::abs(rxs) <= 1e-12 * lr * ls) {
        const double gap = std::min({point_segment_distance(q, p, pts[i + 1]), point_segment_distance(pts[j + 1], p, pts[i + 1]),
                                     point_segment_distance(p, q, pts[j + 1]), point_segment_distance(pts[i + 1], q, pts[j + 1])});
        if (gap <= tol) throw GeometryError("overlapping parallel segments " + std::to_string(i) + " and " + std::to_string(j));
        continue;
      }
      const double t = cross(qp, s) / rxs;
      const double u = cross(qp, r) / rxs;
      const double et = tol / lr;
      const double eu = tol / ls;
      if (t < -et || t > 1 + et || u < -eu || u > 1 + eu) continue;
      const Point x{p.r + t * r.x, p.z + t * r.y};
      if (t <= et || t >= 1 - et || u <= eu || u >= 1 - eu)
        throw GeometryError("crossing at a polyline vertex near " + fmt(x));
      if (x.r <= tol) throw GeometryError("crossing on the axis at " + fmt(x));
      if (std::abs(rxs) < min_sin * lr * ls) throw GeometryError("near-tangential crossing at " + fmt(x));
      const double angle = std::asin(std::min(1.0, std::abs(rxs) / (lr * ls))) * 180.0 / std::numbers::pi;
      out.push_back({x, (cum[i] + t * lr) / total, (cum[j] + u * ls) / total, i, j, angle});
    }
  }
  std::sort(out.begin(), out.end(), [](const PlanarCrossing& a, const PlanarCrossing& b) { return a.t1 < b.t1; });
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (norm(sub(out[a].location, out[b].location)) <= tol)
        throw GeometryError("two crossings coincide near " + fmt(out[a].location));
  return out;
}

int doubled_winding(const GeneratingCurve& curve, Point p, const RevolutionOptions& opts) {
  check_curve(curve);
  if (min_distance_to_doubled(curve.points, p, curve.points.size()) <= curve.tolerance)
    throw GeometryError("sample point " + fmt(p) + " is too close to the curve");
  const int w = winding_closed(doubled(curve.points), p);
  return opts.flip_orientation ? -w : w;
}

Tree tree_of_revolution(const GeneratingCurve& curve, const RevolutionOptions& opts) {
  const auto crossings = self_intersections(curve, opts);
  const auto& pts = curve.points;
  const double tol = curve.tolerance;
  const auto cum = arc_lengths(pts);
  const double total = cum.back();
  const auto closed = doubled(pts);

  // Each crossing parameter, tagged with its crossing and end.
  struct Cut {
    double t;
    std::size_t crossing;
    bool first;
  };
  std::vector<Cut> cuts;
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    cuts.push_back({crossings[c].t1, c, true});
    cuts.push_back({crossings[c].t2, c, false});
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.t < b.t; });

  std::vector<double> bounds{0.0};
  for (const Cut& c : cuts) bounds.push_back(c.t);
  bounds.push_back(1.0);

  auto point_at = [&](double t, std::size_t& seg) {
    const double s = t * total;
    seg = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin());
    seg = std::clamp<std::size_t>(seg, 1, pts.size() - 1) - 1;
    const double len = cum[seg + 1] - cum[seg];
    const double f = len > 0 ? (s - cum[seg]) / len : 0.0;
    return Point{pts[seg].r + f * (pts[seg + 1].r - pts[seg].r), pts[seg].z + f * (pts[seg + 1].z - pts[seg].z)};
  };

  auto degree_near = [&](double t, double lo, double hi, int& delta) {
    std::size_t seg = 0;
    Point m = point_at(t, seg);
    // Prefer the segment midpoint so the sample stays off polyline vertices.
    const double mid = 0.5 * (cum[seg] + cum[seg + 1]) / total;
    if (mid > lo && mid < hi) m = point_at(mid, seg);
    const Vec d = sub(pts[seg + 1], pts[seg]);
    const double ld = norm(d);
    const Vec n{-d.y / ld, d.x / ld};
    double eps = std::min(tol * 1e6, 0.25 * min_distance_to_doubled(pts, m, seg));
    for (int attempt = 0; attempt < 4 && eps > tol; ++attempt, eps /= 8) {
      const int w1 = winding_closed(closed, {m.r + eps * n.x, m.z + eps * n.y});
      const int w2 = winding_closed(closed, {m.r - eps * n.x, m.z - eps * n.y});
      if ((w1 + w2) % 2 != 0) {
        delta = w1 + w2;
        return true;
      }
    }
    return false;
  };

  Tree tree;
  for (std::size_t v = 0; v + 1 < bounds.size(); ++v) {
    const double lo = bounds[v];
    const double hi = bounds[v + 1];
    int delta = 0;
    bool ok = false;
    for (double frac : {0.5, 0.25, 0.75, 0.125, 0.875}) {
      if ((ok = degree_near(lo + frac * (hi - lo), lo, hi, delta))) break;
    }
    if (!ok) throw GeometryError("could not sample the faces beside arc " + std::to_string(v));
    tree.add_vertex("s" + std::to_string(v), opts.flip_orientation ? -delta : delta);
  }

  // The cut between vertices i and i+1; edges point away from the interval
  // (t1, t2) of their crossing.
  std::vector<int> edge_first(crossings.size(), -1);
  std::vector<int> edge_second(crossings.size(), -1);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const int lo = static_cast<int>(i);
    const int hi = lo + 1;
    const Cut& c = cuts[i];
    const std::string id = "x" + std::to_string(c.crossing) + (c.first ? "a" : "b");
    if (c.first) edge_first[c.crossing] = tree.add_edge(id, hi, lo);
    else edge_second[c.crossing] = tree.add_edge(id, lo, hi);
  }
  for (std::size_t c = 0; c < crossings.size(); ++c) tree.add_pair(edge_first[c], edge_second[c]);

  const ValidationReport rep = validate(tree);
  if (!rep.ok) {
    std::string msg = "extracted tree is invalid (curve is not generic at this tolerance):";
    for (const auto& v : rep.violations) msg += " " + std::string(rule_name(v.rule));
    throw GeometryError(msg);
  }
  return tree;
}

}  // namespace dpt
