#pragma once

// Double point trees of spheres of revolution from their generating curves.
// A generating curve is a polyline in the half-plane r >= 0 with both ends on
// the axis r = 0.

#include <cstddef>
#include <vector>

#include "dpt/tree.hpp"

namespace dpt {

/// Non-generic or malformed geometry.
class GeometryError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

struct Point {
  double r = 0;
  double z = 0;
};

struct GeneratingCurve {
  std::vector<Point> points;
  double tolerance = 1e-9;
};

struct PlanarCrossing {
  Point location;
  /// Arc-length parameters in [0,1], t1 < t2.
  double t1 = 0;
  double t2 = 0;
  /// Polyline segment indices carrying t1 and t2.
  std::size_t segment1 = 0;
  std::size_t segment2 = 0;
  /// Acute angle between the two strands, degrees.
  double angle = 0;
};

struct RevolutionOptions {
  /// Crossings at a smaller angle are rejected as tangential.
  double min_angle_degrees = 1.0;
  /// Models the opposite normal; negates every degree.
  bool flip_orientation = false;
};

/// Throws GeometryError when the curve is malformed.
void check_curve(const GeneratingCurve& curve);

/// All transverse self-crossings, sorted by t1.
std::vector<PlanarCrossing> self_intersections(const GeneratingCurve& curve, const RevolutionOptions& opts = {});

/// Winding number around p of the curve closed up by its mirror image
/// (r,z) -> (-r,z) traversed backwards. Points inside the half circle get +1.
int doubled_winding(const GeneratingCurve& curve, Point p, const RevolutionOptions& opts = {});

/// Path tree with one vertex per arc between crossing parameters, edges at
/// crossing parameters and the two edges of a crossing paired.
Tree tree_of_revolution(const GeneratingCurve& curve, const RevolutionOptions& opts = {});

}  // namespace dpt
