#pragma once

// Programmatic generating curves for the standard examples. All are built
// from a half circle of radius 10 sampled with 2001 points, with coils
// spliced in around its eastmost point.

#include <vector>

#include "dpt/revolution.hpp"

namespace dpt::fixtures {

enum class CoilKind {
  Splice,  // clockwise turns, connectors do not cross
  Kink,    // counterclockwise turns, connectors cross once
};

struct CoilShape {
  double a = 2.5;     // mean turn radius
  double b = 1.0;     // radius variation over the coil
  double gap = 0.5;   // clearance above the strand
  double len = 1.5;   // strand half length
  double beta = 0.35; // angle cut off at both ends
  int points_per_turn = 240;
};

/// Half circle from (0,R) to (0,-R) through (R,0).
std::vector<Point> half_circle(double radius, int samples);

/// A strand along +x from (-len,0) to (len,0) with m+1 turns above it, in
/// local coordinates.
std::vector<Point> coil_template(int m, CoilKind kind, const CoilShape& shape = {});

enum class Side { Left, Right };

/// Replaces the points within arc length halfwin of poly[idx] by the
/// template, placed in the frame of the local tangent and its normal.
std::vector<Point> insert_template(const std::vector<Point>& poly, std::size_t idx, const std::vector<Point>& tmpl,
                                   Side side, double halfwin);

/// Curve whose tree has invariant e_k (k odd).
GeneratingCurve f_curve(int k);

/// Curve whose tree has invariant 2e_1 - e_k (k odd).
GeneratingCurve g_curve(int k);

/// The curve of j (the same as f_curve(3)).
GeneratingCurve j_curve();

/// A point in the innermost region of j_curve().
Point j_inner_point();

/// Two separate single-crossing coils: two crossings in total.
GeneratingCurve two_lobes_curve();

}  // namespace dpt::fixtures
