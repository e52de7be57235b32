// Cubic Bezier evaluation and least-squares ridge fitting.
#pragma once

#include <span>

#include "fpbz/ridge_extract.hpp"

namespace fpbz {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

struct CubicBezier {
  Point2 p0, p1, p2, p3;
  bool operator==(const CubicBezier&) const = default;
};

// B(u) = (1-u)^3 p0 + 3u(1-u)^2 p1 + 3u^2(1-u) p2 + u^3 p3.
// Endpoints are reproduced exactly. Throws std::invalid_argument for
// u outside [0, 1].
Point2 evaluate(const CubicBezier& c, double u);

// Degree-N Bernstein evaluation for N+1 >= 2 control points.
Point2 evaluate_general(std::span<const Point2> controls, double u);

// Least-squares cubic through a point sequence: p0/p3 pinned to the first and
// last points, interior controls solved against chord-length parameters, then
// jointly refined with the per-point parameters (damped Gauss-Newton, squared
// error never increases). Chord length only approximates arc position, so the
// refinement is what lets a sampled cubic be recovered instead of merely
// approached. Falls back to thirds interpolation between the endpoints for
// sequences shorter than 4 points or a near-singular initial system.
CubicBezier fit_points(std::span<const Point2> pts);
CubicBezier fit_ridge(const RidgePath& path);

struct FitError {
  double rms = 0.0;
  double max = 0.0;
};

// Point-to-curve distances approximated by the nearest of 256 uniform curve
// samples refined locally around the winner.
FitError fit_error(const CubicBezier& c, std::span<const Point2> pts);
FitError fit_error(const CubicBezier& c, const RidgePath& path);

}  // namespace fpbz
