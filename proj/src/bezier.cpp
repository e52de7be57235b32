#include "fpbz/bezier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpbz/kernels.hpp"

namespace fpbz {
namespace {

void check_param(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("bezier: parameter " + std::to_string(u) +
                                " outside [0,1]");
  }
}

// Chord-length parameters, normalized to [0, 1].
std::vector<double> chord_params(std::span<const Point2> pts) {
  std::vector<double> u(pts.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    total += std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
    u[i] = total;
  }
  if (total > 0.0) {
    for (double& v : u) v /= total;
  }
  return u;
}

CubicBezier thirds_fallback(Point2 a, Point2 b) {
  return CubicBezier{
      a,
      {a.x + (b.x - a.x) / 3.0, a.y + (b.y - a.y) / 3.0},
      {a.x + 2.0 * (b.x - a.x) / 3.0, a.y + 2.0 * (b.y - a.y) / 3.0},
      b,
  };
}

}  // namespace

Point2 evaluate(const CubicBezier& c, double u) {
  check_param(u);
  double out_x, out_y;
  const double px[4] = {c.p0.x, c.p1.x, c.p2.x, c.p3.x};
  const double py[4] = {c.p0.y, c.p1.y, c.p2.y, c.p3.y};
  kernels::cubic_eval_batch(px, py, &u, &out_x, &out_y, 1);
  return {out_x, out_y};
}

Point2 evaluate_general(std::span<const Point2> controls, double u) {
  if (controls.size() < 2) {
    throw std::invalid_argument("evaluate_general: needs at least 2 control points");
  }
  check_param(u);
  const int n = static_cast<int>(controls.size()) - 1;
  const double s = 1.0 - u;
  // Bernstein weights via the binomial recurrence.
  double binom = 1.0;
  Point2 acc{0.0, 0.0};
  for (int i = 0; i <= n; ++i) {
    double w = binom * std::pow(u, i) * std::pow(s, n - i);
    acc.x += w * controls[i].x;
    acc.y += w * controls[i].y;
    binom = binom * (n - i) / (i + 1);
  }
  return acc;
}

namespace {

Point2 eval_raw(const CubicBezier& c, double t) {
  const double s = 1.0 - t;
  const double b0 = s * s * s, b1 = 3.0 * s * s * t, b2 = 3.0 * s * t * t,
               b3 = t * t * t;
  return {b0 * c.p0.x + b1 * c.p1.x + b2 * c.p2.x + b3 * c.p3.x,
          b0 * c.p0.y + b1 * c.p1.y + b2 * c.p2.y + b3 * c.p3.y};
}

Point2 eval_derivative(const CubicBezier& c, double t) {
  const double s = 1.0 - t;
  return {3.0 * ((c.p1.x - c.p0.x) * s * s + 2.0 * (c.p2.x - c.p1.x) * s * t +
                 (c.p3.x - c.p2.x) * t * t),
          3.0 * ((c.p1.y - c.p0.y) * s * s + 2.0 * (c.p2.y - c.p1.y) * s * t +
                 (c.p3.y - c.p2.y) * t * t)};
}

double fit_ssr(const CubicBezier& c, std::span<const Point2> pts,
               const std::vector<double>& u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 p = eval_raw(c, u[i]);
    acc += (p.x - pts[i].x) * (p.x - pts[i].x) +
           (p.y - pts[i].y) * (p.y - pts[i].y);
  }
  return acc;
}

// One-shot constrained least squares at fixed parameters: p1, p2 minimize
// sum |B(u_i) - pts_i|^2 with p0, p3 pinned. Falls back to the one-third
// placement when the 2x2 normal matrix is near singular.
CubicBezier solve_at_params(std::span<const Point2> pts,
                            const std::vector<double>& u) {
  const Point2 a = pts.front();
  const Point2 b = pts.back();
  double m00 = 0.0, m01 = 0.0, m11 = 0.0;
  double rx1 = 0.0, ry1 = 0.0, rx2 = 0.0, ry2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double t = u[i];
    const double s = 1.0 - t;
    const double b0 = s * s * s;
    const double b1 = 3.0 * s * s * t;
    const double b2 = 3.0 * s * t * t;
    const double b3 = t * t * t;
    const double rx = pts[i].x - b0 * a.x - b3 * b.x;
    const double ry = pts[i].y - b0 * a.y - b3 * b.y;
    m00 += b1 * b1;
    m01 += b1 * b2;
    m11 += b2 * b2;
    rx1 += b1 * rx;
    ry1 += b1 * ry;
    rx2 += b2 * rx;
    ry2 += b2 * ry;
  }
  const double det = m00 * m11 - m01 * m01;
  const double norm = m00 * m11;
  if (!(norm > 0.0) || det / norm < 1e-9) {
    return thirds_fallback(a, b);
  }
  CubicBezier c;
  c.p0 = a;
  c.p3 = b;
  c.p1 = {(m11 * rx1 - m01 * rx2) / det, (m11 * ry1 - m01 * ry2) / det};
  c.p2 = {(m00 * rx2 - m01 * rx1) / det, (m00 * ry2 - m01 * ry1) / det};
  return c;
}

// Parameter of the point on c nearest to p: coarse scan, then ternary
// refinement of the squared distance on the bracketing interval. The scan
// is global, so a parameter can jump between lobes of a looped curve. The
// scan density decides which lobe wins near a self-tangency, so callers
// that suspect a mismatched correspondence pass a denser grid.
double project_param(const CubicBezier& c, Point2 p, int coarse = 96) {
  double best = 0.0;
  double best_d = 1e300;
  for (int i = 0; i <= coarse; ++i) {
    const double t = double(i) / coarse;
    const Point2 q = eval_raw(c, t);
    const double d = (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
    if (d < best_d) {
      best_d = d;
      best = t;
    }
  }
  double lo = std::max(0.0, best - 1.0 / coarse);
  double hi = std::min(1.0, best + 1.0 / coarse);
  for (int i = 0; i < 48; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    const Point2 q1 = eval_raw(c, m1);
    const Point2 q2 = eval_raw(c, m2);
    const double d1 = (q1.x - p.x) * (q1.x - p.x) + (q1.y - p.y) * (q1.y - p.y);
    const double d2 = (q2.x - p.x) * (q2.x - p.x) + (q2.y - p.y) * (q2.y - p.y);
    if (d1 <= d2) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

// Joint Levenberg-Marquardt refinement over the interior controls and the
// interior sample parameters. Chord-length parameters are only an estimate
// of where each point sits on the curve; freezing them biases the fit, so
// the refinement lets them slide. The normal matrix is an arrow system
// (4 control unknowns bordered by one parameter unknown per point) and is
// solved through its Schur complement. Endpoint parameters stay pinned at
// 0 and 1. The step is accepted only when the squared residual drops, so
// the refined fit can never be worse than the starting point.
CubicBezier refine_fit(CubicBezier c, std::span<const Point2> pts,
                       std::vector<double>& u, double* out_ssr) {
  const std::size_t n = pts.size();
  double cur = fit_ssr(c, pts, u);
  double lambda = 1e-10;
  // Steps that push the interior controls far outside the data are the
  // start of a parameter-collapse runaway, not progress; treat them like
  // residual increases. See the matching bound in fit_points.
  double min_x = pts[0].x, max_x = pts[0].x;
  double min_y = pts[0].y, max_y = pts[0].y;
  for (const Point2& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double bcx = 0.5 * (min_x + max_x);
  const double bcy = 0.5 * (min_y + max_y);
  const double blim =
      4.0 * std::hypot(max_x - min_x, max_y - min_y) + 16.0;
  std::vector<double> dsq(n), gu(n);
  std::vector<std::array<double, 4>> bcol(n);
  std::vector<double> ut(n);
  for (int iter = 0; iter < 250; ++iter) {
    double A[4][4] = {};
    double g[4] = {};
    for (std::size_t i = 0; i < n; ++i) {
      const double t = u[i];
      const double s = 1.0 - t;
      const double b1 = 3.0 * s * s * t;
      const double b2 = 3.0 * s * t * t;
      const Point2 p = eval_raw(c, t);
      const double rx = p.x - pts[i].x;
      const double ry = p.y - pts[i].y;
      // Control order: p1x, p1y, p2x, p2y.
      g[0] += b1 * rx;
      g[1] += b1 * ry;
      g[2] += b2 * rx;
      g[3] += b2 * ry;
      A[0][0] += b1 * b1;
      A[0][2] += b1 * b2;
      A[2][2] += b2 * b2;
      if (i == 0 || i + 1 == n) {
        dsq[i] = 0.0;
        gu[i] = 0.0;
        bcol[i] = {0.0, 0.0, 0.0, 0.0};
        continue;
      }
      const Point2 d = eval_derivative(c, t);
      dsq[i] = d.x * d.x + d.y * d.y;
      gu[i] = d.x * rx + d.y * ry;
      bcol[i] = {b1 * d.x, b1 * d.y, b2 * d.x, b2 * d.y};
    }
    A[1][1] = A[0][0];
    A[1][3] = A[0][2];
    A[2][0] = A[0][2];
    A[3][1] = A[1][3];
    A[3][3] = A[2][2];

    bool stepped = false;
    for (int damping = 0; damping < 40 && !stepped; ++damping) {
      // Schur complement onto the four control unknowns.
      double As[4][5];
      for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) As[r][col] = A[r][col];
        As[r][r] += lambda;
        As[r][4] = -g[r];
      }
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double den = dsq[i] + lambda;
        if (!(den > 0.0)) continue;
        for (int r = 0; r < 4; ++r) {
          As[r][4] += bcol[i][r] * gu[i] / den;
          for (int col = 0; col < 4; ++col) {
            As[r][col] -= bcol[i][r] * bcol[i][col] / den;
          }
        }
      }
      double dc[4];
      bool singular = false;
      for (int col = 0; col < 4 && !singular; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
          if (std::abs(As[r][col]) > std::abs(As[piv][col])) piv = r;
        }
        for (int k = 0; k < 5; ++k) std::swap(As[col][k], As[piv][k]);
        if (std::abs(As[col][col]) < 1e-300) {
          singular = true;
          break;
        }
        for (int r = col + 1; r < 4; ++r) {
          const double f = As[r][col] / As[col][col];
          for (int k = col; k < 5; ++k) As[r][k] -= f * As[col][k];
        }
      }
      if (singular) {
        lambda *= 4.0;
        continue;
      }
      for (int r = 3; r >= 0; --r) {
        double acc = As[r][4];
        for (int k = r + 1; k < 4; ++k) acc -= As[r][k] * dc[k];
        dc[r] = acc / As[r][r];
      }

      CubicBezier trial = c;
      trial.p1.x += dc[0];
      trial.p1.y += dc[1];
      trial.p2.x += dc[2];
      trial.p2.y += dc[3];
      ut = u;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double den = dsq[i] + lambda;
        if (!(den > 0.0)) continue;
        double bd = 0.0;
        for (int r = 0; r < 4; ++r) bd += bcol[i][r] * dc[r];
        ut[i] = std::clamp(u[i] - (gu[i] + bd) / den, 0.0, 1.0);
      }
      const bool in_bounds =
          std::abs(trial.p1.x - bcx) <= blim &&
          std::abs(trial.p1.y - bcy) <= blim &&
          std::abs(trial.p2.x - bcx) <= blim &&
          std::abs(trial.p2.y - bcy) <= blim;
      const double trial_ssr = fit_ssr(trial, pts, ut);
      if (trial_ssr <= cur && in_bounds) {
        const double gain = cur - trial_ssr;
        c = trial;
        u.swap(ut);
        cur = trial_ssr;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        // A tiny gain only signals convergence once the damping has relaxed:
        // with lambda still large the step is truncated, and a small gain
        // means a small step, not a flat objective.
        if (gain <= 1e-15 * (cur + 1e-30) && lambda <= 1e-9) {
          if (out_ssr) *out_ssr = cur;
          return c;
        }
      } else {
        lambda *= 4.0;
      }
    }
    if (!stepped) break;  // damping exhausted, no descent direction left
  }
  if (out_ssr) *out_ssr = cur;
  return c;
}

}  // namespace

// Parameters placing each index at an equal fraction of c's arc length
// (dense polyline inversion). First and last pinned to 0 and 1.
std::vector<double> arc_uniform_params(const CubicBezier& c, std::size_t n) {
  constexpr int kDense = 512;
  std::vector<double> cum(kDense + 1, 0.0);
  Point2 prev = c.p0;
  for (int i = 1; i <= kDense; ++i) {
    const Point2 p = eval_raw(c, double(i) / kDense);
    cum[i] = cum[i - 1] + std::hypot(p.x - prev.x, p.y - prev.y);
    prev = p;
  }
  std::vector<double> u(n, 0.0);
  u.back() = 1.0;
  const double total = cum.back();
  if (!(total > 0.0)) {
    for (std::size_t i = 0; i < n; ++i) u[i] = double(i) / double(n - 1);
    return u;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double target = total * double(i) / double(n - 1);
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    std::size_t hi = std::size_t(it - cum.begin());
    if (hi == 0) hi = 1;
    const double seg = cum[hi] - cum[hi - 1];
    const double frac = seg > 0.0 ? (target - cum[hi - 1]) / seg : 0.0;
    u[i] = (double(hi - 1) + frac) / kDense;
  }
  return u;
}

CubicBezier fit_points(std::span<const Point2> pts) {
  if (pts.size() < 2) {
    throw std::invalid_argument("fit_points: needs at least 2 points");
  }
  if (pts.size() < 4) {
    return thirds_fallback(pts.front(), pts.back());
  }
  const std::size_t n = pts.size();
  const double exact = 1e-12 * double(n);

  // Iterating the linear solve against re-estimated parameters can crowd
  // the parameters into a short interval and fling the interior controls
  // far outside the data; such a curve sometimes scores a lower squared
  // residual than the honest fit, yet is useless (and unencodable). Any
  // candidate whose interior controls leave a generous inflation of the
  // data bounding box is rejected outright. A real cubic's controls sit
  // within a few diagonals of its own hull, so the bound never clips a
  // genuine fit.
  double min_x = pts[0].x, max_x = pts[0].x;
  double min_y = pts[0].y, max_y = pts[0].y;
  for (const Point2& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);
  const double lim =
      4.0 * std::hypot(max_x - min_x, max_y - min_y) + 16.0;
  const auto sane = [cx, cy, lim](const CubicBezier& q) {
    return std::abs(q.p1.x - cx) <= lim && std::abs(q.p1.y - cy) <= lim &&
           std::abs(q.p2.x - cx) <= lim && std::abs(q.p2.y - cy) <= lim;
  };

  // Alternate two movements until the residual is negligible or stops
  // falling: (a) global projection of the samples onto the current curve
  // with a linear re-solve of the controls, which has a wide basin (a
  // sample matched to the wrong lobe of a loop or S-bend can jump to the
  // right one) but crawls near the optimum; (b) the joint damped step,
  // which converges fast but only locally. Projection rounds stop at the
  // first failure to lower the squared residual; the outer cycle repeats
  // the pair in case the joint step stalled somewhere projection can leave.
  // The final parameters stay in u so a caller can resume from the result.
  const auto polish = [&pts, n, exact, &sane](CubicBezier c,
                                              std::vector<double>& u,
                                              int coarse, double* out_ssr) {
    double best = fit_ssr(c, pts, u);
    if (!sane(c)) {
      *out_ssr = best;
      return c;
    }
    for (int cycle = 0; cycle < 3; ++cycle) {
      for (int round = 0; round < 10; ++round) {
        std::vector<double> up(pts.size());
        up.front() = 0.0;
        up.back() = 1.0;
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
          up[i] = project_param(c, pts[i], coarse);
        }
        const CubicBezier next = solve_at_params(pts, up);
        const double ssr = fit_ssr(next, pts, up);
        if (!(ssr < best) || !sane(next)) break;
        const double prev = best;
        c = next;
        u = std::move(up);
        best = ssr;
        // A marginal round means the correspondence has settled; the joint
        // step finishes far faster from here than more rounds would.
        if (best > 0.99 * prev && best > exact) break;
      }
      const double before = best;
      c = refine_fit(c, pts, u, &best);
      if (best <= exact) break;
      // Repeat only while the joint step is still travelling. Its gain
      // collapses once it converges or truly stalls, and in either case
      // another projection round at the same resolution has nothing new
      // to offer.
      if (!(best < 0.99 * before)) break;
    }
    *out_ssr = best;
    return c;
  };

  // Two starts per pass. First: chord-length parameters straight into the
  // polish. Second, when the first leaves a residual: iterate "equal arc
  // fractions of the current curve" against the linear solve. On
  // near-equally spaced input that pairing models the sampling itself, so
  // it approaches the right correspondence from a different direction than
  // projection does.
  const auto attempt = [&](int coarse, std::vector<double>& out_u,
                           double* out_ssr) {
    std::vector<double> u1 = chord_params(pts);
    double ssr1 = 0.0;
    const CubicBezier c1 = polish(solve_at_params(pts, u1), u1, coarse, &ssr1);
    if (ssr1 <= exact) {
      out_u = std::move(u1);
      *out_ssr = ssr1;
      return c1;
    }
    CubicBezier c = c1;
    std::vector<double> ua = u1;
    for (int round = 0; round < 12; ++round) {
      ua = arc_uniform_params(c, n);
      const CubicBezier next = solve_at_params(pts, ua);
      if (!sane(next)) break;
      c = next;
    }
    double ssr2 = 0.0;
    const CubicBezier c2 = polish(c, ua, coarse, &ssr2);
    if (ssr2 < ssr1) {
      out_u = std::move(ua);
      *out_ssr = ssr2;
      return c2;
    }
    out_u = std::move(u1);
    *out_ssr = ssr1;
    return c1;
  };

  std::vector<double> u_cheap;
  double ssr_cheap = 0.0;
  const CubicBezier cheap = attempt(96, u_cheap, &ssr_cheap);
  if (ssr_cheap <= exact) {
    return cheap;
  }

  // Still off after both starts. Almost always the input is simply not a
  // clean cubic and this is the honest residual, but on a tight loop a
  // 96-point scan can keep matching samples to the wrong branch and hold
  // the whole fit in a false basin. Re-polishing the result with a dense
  // scan settles which case this is at little cost: when the matching was
  // already right the first dense round improves nothing and the polish
  // returns immediately.
  std::vector<double> u_warm = u_cheap;
  double ssr_warm = 0.0;
  const CubicBezier warm = polish(cheap, u_warm, 768, &ssr_warm);
  if (ssr_warm <= exact) {
    return warm;
  }
  if (ssr_warm > 0.5 * ssr_cheap) {
    return ssr_warm < ssr_cheap ? warm : cheap;
  }

  // The dense matching moved the fit substantially but not to exactness:
  // the cheap pass was in a false basin and the warm start may still sit
  // in its shadow. Worth one full restart at the dense resolution.
  std::vector<double> u_fine;
  double ssr_fine = 0.0;
  const CubicBezier fine = attempt(768, u_fine, &ssr_fine);
  return ssr_fine < ssr_warm ? fine : warm;
}

CubicBezier fit_ridge(const RidgePath& path) {
  std::vector<Point2> pts;
  pts.reserve(path.size());
  for (Pixel p : path) {
    pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  }
  return fit_points(pts);
}

FitError fit_error(const CubicBezier& c, std::span<const Point2> pts) {
  if (pts.empty()) {
    return {0.0, 0.0};
  }
  constexpr int kCoarse = 96;
  std::vector<double> us(kCoarse + 1), sx(kCoarse + 1), sy(kCoarse + 1);
  for (int i = 0; i <= kCoarse; ++i) us[i] = static_cast<double>(i) / kCoarse;
  const double px[4] = {c.p0.x, c.p1.x, c.p2.x, c.p3.x};
  const double py[4] = {c.p0.y, c.p1.y, c.p2.y, c.p3.y};
  kernels::cubic_eval_batch(px, py, us.data(), sx.data(), sy.data(), us.size());

  auto dist2_at = [&](double u, const Point2& q) {
    double s = 1.0 - u;
    double b0 = s * s * s, b1 = 3.0 * s * s * u, b2 = 3.0 * s * u * u, b3 = u * u * u;
    double x = b0 * px[0] + b1 * px[1] + b2 * px[2] + b3 * px[3];
    double y = b0 * py[0] + b1 * py[1] + b2 * py[2] + b3 * py[3];
    return (x - q.x) * (x - q.x) + (y - q.y) * (y - q.y);
  };

  double sum2 = 0.0;
  double worst = 0.0;
  for (const Point2& q : pts) {
    int best = 0;
    double best_d2 = (sx[0] - q.x) * (sx[0] - q.x) + (sy[0] - q.y) * (sy[0] - q.y);
    for (int i = 1; i <= kCoarse; ++i) {
      double d2 = (sx[i] - q.x) * (sx[i] - q.x) + (sy[i] - q.y) * (sy[i] - q.y);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    // Ternary refinement inside the bracketing interval.
    double lo = best > 0 ? us[best - 1] : 0.0;
    double hi = best < kCoarse ? us[best + 1] : 1.0;
    for (int it = 0; it < 60; ++it) {
      double m1 = lo + (hi - lo) / 3.0;
      double m2 = hi - (hi - lo) / 3.0;
      if (dist2_at(m1, q) <= dist2_at(m2, q)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    double d2 = std::min(best_d2, dist2_at((lo + hi) * 0.5, q));
    sum2 += d2;
    if (d2 > worst) worst = d2;
  }
  return {std::sqrt(sum2 / static_cast<double>(pts.size())), std::sqrt(worst)};
}

FitError fit_error(const CubicBezier& c, const RidgePath& path) {
  std::vector<Point2> pts;
  pts.reserve(path.size());
  for (Pixel p : path) {
    pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  }
  return fit_error(c, pts);
}

}  // namespace fpbz
