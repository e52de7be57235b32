#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fpbz::testing {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<std::uint8_t, 9> gather(const BinaryImage& img, int x, int y) {
  // x1 = east, then counter-clockwise.
  static constexpr int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static constexpr int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  std::array<std::uint8_t, 9> n{};
  for (int i = 0; i < 8; ++i) {
    const int nx = x + dx[i];
    const int ny = y + dy[i];
    n[i + 1] = img.in_bounds(nx, ny) ? img.bits[img.index(nx, ny)] : 0;
  }
  return n;
}

std::uint8_t nb(const std::array<std::uint8_t, 9>& n, int i) {
  return n[(i - 1) % 8 + 1];  // cyclic: x9 is x1
}

}  // namespace

bool ref_g1(const std::array<std::uint8_t, 9>& n) {
  int crossings = 0;
  for (int i = 1; i <= 4; ++i) {
    if (nb(n, 2 * i - 1) == 0 && (nb(n, 2 * i) == 1 || nb(n, 2 * i + 1) == 1)) {
      ++crossings;
    }
  }
  return crossings == 1;
}

bool ref_g2(const std::array<std::uint8_t, 9>& n) {
  int n1 = 0;
  int n2 = 0;
  for (int k = 1; k <= 4; ++k) {
    n1 += nb(n, 2 * k - 1) | nb(n, 2 * k);
    n2 += nb(n, 2 * k) | nb(n, 2 * k + 1);
  }
  const int m = std::min(n1, n2);
  return 2 <= m && m <= 3;
}

bool ref_g3(const std::array<std::uint8_t, 9>& n) {
  return ((nb(n, 2) | nb(n, 3) | (1 - nb(n, 8))) & nb(n, 1)) == 0;
}

bool ref_g3_prime(const std::array<std::uint8_t, 9>& n) {
  return ((nb(n, 6) | nb(n, 7) | (1 - nb(n, 4))) & nb(n, 5)) == 0;
}

namespace {

bool ref_set(const BinaryImage& img, int x, int y) {
  return x >= 0 && y >= 0 && x < img.width && y < img.height &&
         img.bits[img.index(x, y)] != 0;
}

int ref_degree(const BinaryImage& img, int x, int y) {
  int deg = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if ((dx || dy) && ref_set(img, x + dx, y + dy)) ++deg;
    }
  }
  return deg;
}

// Whether the set 8-neighbours of (x,y) are one 8-connected cluster,
// ignoring (x,y) itself. BFS over the ring cells.
bool ref_neighbours_connected(const BinaryImage& img, int x, int y) {
  std::vector<std::pair<int, int>> cells;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if ((dx || dy) && ref_set(img, x + dx, y + dy)) {
        cells.emplace_back(x + dx, y + dy);
      }
    }
  }
  if (cells.empty()) return false;
  std::vector<bool> visited(cells.size(), false);
  std::vector<std::size_t> queue = {0};
  visited[0] = true;
  while (!queue.empty()) {
    const auto [cx, cy] = cells[queue.back()];
    queue.pop_back();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!visited[i] && std::abs(cells[i].first - cx) <= 1 &&
          std::abs(cells[i].second - cy) <= 1) {
        visited[i] = true;
        queue.push_back(i);
      }
    }
  }
  return std::all_of(visited.begin(), visited.end(), [](bool v) { return v; });
}

// Same cleanup contract as the implementation under test, coded from the
// rules: per surviving 2x2 block (row-major), drop the first member whose
// removal keeps the foreground component count (local cluster test, then
// exact recount); if every member is pinned, eat an adjacent leaf pixel.
bool ref_block_cleanup(BinaryImage& img) {
  bool any = false;
  bool again = true;
  while (again) {
    again = false;
    for (int y = 0; y + 1 < img.height; ++y) {
      for (int x = 0; x + 1 < img.width; ++x) {
        if (!(ref_set(img, x, y) && ref_set(img, x + 1, y) &&
              ref_set(img, x, y + 1) && ref_set(img, x + 1, y + 1))) {
          continue;
        }
        const std::pair<int, int> member[4] = {
            {x, y}, {x + 1, y}, {x, y + 1}, {x + 1, y + 1}};
        bool deleted = false;
        for (const auto& [mx, my] : member) {
          if (ref_neighbours_connected(img, mx, my)) {
            img.bits[img.index(mx, my)] = 0;
            deleted = true;
            break;
          }
          const int before = ref_component_count(img);
          img.bits[img.index(mx, my)] = 0;
          if (ref_component_count(img) == before) {
            deleted = true;
            break;
          }
          img.bits[img.index(mx, my)] = 1;
        }
        if (!deleted) {
          static constexpr int ddx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
          static constexpr int ddy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
          for (int k = 0; k < 4 && !deleted; ++k) {
            for (int i = 0; i < 8 && !deleted; ++i) {
              const int ax = member[k].first + ddx[i];
              const int ay = member[k].second + ddy[i];
              if (!ref_set(img, ax, ay)) continue;
              if (ax >= x && ax <= x + 1 && ay >= y && ay <= y + 1) continue;
              if (ref_degree(img, ax, ay) == 1) {
                img.bits[img.index(ax, ay)] = 0;
                deleted = true;
              }
            }
          }
        }
        if (deleted) {
          again = true;
          any = true;
        }
      }
    }
  }
  return any;
}

}  // namespace

BinaryImage ref_thin(const BinaryImage& img) {
  BinaryImage cur = img;
  bool more = true;
  while (more) {
    more = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int sub = 0; sub < 2; ++sub) {
        const BinaryImage snapshot = cur;
        for (int y = 0; y < cur.height; ++y) {
          for (int x = 0; x < cur.width; ++x) {
            if (!snapshot.bits[snapshot.index(x, y)]) continue;
            const auto n = gather(snapshot, x, y);
            const bool g3 = sub == 0 ? ref_g3(n) : ref_g3_prime(n);
            if (ref_g1(n) && ref_g2(n) && g3) {
              cur.bits[cur.index(x, y)] = 0;
              changed = true;
            }
          }
        }
      }
      if (changed) more = true;
    }
    if (ref_block_cleanup(cur)) more = true;
  }
  return cur;
}

int ref_crossing_number(const BinaryImage& img, int x, int y) {
  if (!img.bits[img.index(x, y)]) {
    throw std::invalid_argument("crossing number of a background pixel");
  }
  const auto n = gather(img, x, y);
  int transitions = 0;
  for (int i = 1; i <= 8; ++i) {
    transitions += std::abs(int(nb(n, i)) - int(nb(n, i + 1)));
  }
  return transitions / 2;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int ref_component_count(const BinaryImage& img) {
  return static_cast<int>(ref_components(img).size());
}

std::vector<std::vector<Pixel>> ref_components(const BinaryImage& img) {
  UnionFind uf(img.width * img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!img.bits[img.index(x, y)]) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (img.in_bounds(nx, ny) && img.bits[img.index(nx, ny)]) {
            uf.unite(img.index(x, y), img.index(nx, ny));
          }
        }
      }
    }
  }
  std::vector<std::vector<Pixel>> out;
  std::vector<int> root_to_slot(img.width * img.height, -1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!img.bits[img.index(x, y)]) continue;
      const int root = uf.find(img.index(x, y));
      if (root_to_slot[root] < 0) {
        root_to_slot[root] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[root_to_slot[root]].push_back({x, y});
    }
  }
  // Row-major scan order already yields row-major sorted members and
  // components ordered by smallest pixel.
  return out;
}

std::vector<std::complex<double>> ref_dft2(const std::vector<double>& block, int n) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      std::complex<double> acc = 0.0;
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const double angle = -2.0 * kPi * (double(u) * x + double(v) * y) / n;
          acc += block[static_cast<std::size_t>(y) * n + x] *
                 std::complex<double>(std::cos(angle), std::sin(angle));
        }
      }
      out[static_cast<std::size_t>(v) * n + u] = acc;
    }
  }
  return out;
}

std::vector<double> ref_idft2_real(const std::vector<std::complex<double>>& freq,
                                   int n) {
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      std::complex<double> acc = 0.0;
      for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) {
          const double angle = 2.0 * kPi * (double(u) * x + double(v) * y) / n;
          acc += freq[static_cast<std::size_t>(v) * n + u] *
                 std::complex<double>(std::cos(angle), std::sin(angle));
        }
      }
      out[static_cast<std::size_t>(y) * n + x] = acc.real() / (double(n) * n);
    }
  }
  return out;
}

std::vector<double> ref_edt_sq(const BinaryImage& img) {
  std::vector<Pixel> fg;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.bits[img.index(x, y)]) fg.push_back({x, y});
    }
  }
  std::vector<double> out(static_cast<std::size_t>(img.width) * img.height,
                          std::numeric_limits<double>::infinity());
  if (fg.empty()) return out;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (const Pixel& p : fg) {
        const double dx = x - p.x;
        const double dy = y - p.y;
        best = std::min(best, dx * dx + dy * dy);
      }
      out[img.index(x, y)] = best;
    }
  }
  return out;
}

int ref_otsu(const GrayImage& img) {
  std::array<long long, 256> hist{};
  for (std::uint8_t p : img.pixels) ++hist[p];
  const double total = static_cast<double>(img.pixels.size());
  int best_t = -1;
  double best_score = 0.0;
  for (int t = 0; t < 256; ++t) {
    long long c0 = 0;
    long long c1 = 0;
    double s0 = 0.0;
    double s1 = 0.0;
    for (int i = 0; i <= t; ++i) {
      c0 += hist[i];
      s0 += double(i) * hist[i];
    }
    for (int i = t + 1; i < 256; ++i) {
      c1 += hist[i];
      s1 += double(i) * hist[i];
    }
    if (c0 == 0 || c1 == 0) continue;
    const double w0 = c0 / total;
    const double w1 = c1 / total;
    const double mu0 = s0 / c0;
    const double mu1 = s1 / c1;
    const double score = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (score > best_score) {
      best_score = score;
      best_t = t;
    }
  }
  return best_t < 0 ? 255 : best_t;
}

GrayImage ref_equalize(const GrayImage& img) {
  std::array<long long, 256> hist{};
  for (std::uint8_t p : img.pixels) ++hist[p];
  const double total = static_cast<double>(img.pixels.size());
  GrayImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    long long cum = 0;
    for (int v = 0; v <= img.pixels[i]; ++v) cum += hist[v];
    out.pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * cum / total));
  }
  return out;
}

Point2 ref_de_casteljau(const std::vector<Point2>& control, double u) {
  std::vector<Point2> work = control;
  while (work.size() > 1) {
    for (std::size_t i = 0; i + 1 < work.size(); ++i) {
      work[i].x = (1.0 - u) * work[i].x + u * work[i + 1].x;
      work[i].y = (1.0 - u) * work[i].y + u * work[i + 1].y;
    }
    work.pop_back();
  }
  return work[0];
}

double ref_curve_distance(const CubicBezier& c, Point2 p, int samples) {
  double best = std::numeric_limits<double>::infinity();
  const std::vector<Point2> control = {c.p0, c.p1, c.p2, c.p3};
  for (int i = 0; i <= samples; ++i) {
    const Point2 q = ref_de_casteljau(control, double(i) / samples);
    best = std::min(best, std::hypot(q.x - p.x, q.y - p.y));
  }
  return best;
}

bool ref_in_control_hull(const CubicBezier& c, Point2 p, double eps) {
  std::vector<Point2> pts = {c.p0, c.p1, c.p2, c.p3};
  std::swap(pts[0], *std::min_element(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }));
  const Point2 base = pts[0];
  std::sort(pts.begin() + 1, pts.end(), [&](Point2 a, Point2 b) {
    return std::atan2(a.y - base.y, a.x - base.x) <
           std::atan2(b.y - base.y, b.x - base.x);
  });
  std::vector<Point2> hull;
  for (const Point2& q : pts) {
    while (hull.size() >= 2) {
      const Point2 a = hull[hull.size() - 2];
      const Point2 b = hull[hull.size() - 1];
      const double cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }
  int sign = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i];
    const Point2 b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len < 1e-12) continue;
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (std::abs(cross) / len <= eps) continue;  // eps is a distance in px
    const int s = cross > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return true;
}

std::vector<Point2> chord_spaced_samples(const CubicBezier& c, int count) {
  // Cumulative chord length along a dense polyline, then one sample per
  // uniform length fraction. 200k segments keep the polyline within ~1e-10
  // relative arc-length error for curves at image scale.
  const std::vector<Point2> control = {c.p0, c.p1, c.p2, c.p3};
  constexpr int dense = 200000;
  std::vector<double> cum(dense + 1, 0.0);
  Point2 prev = c.p0;
  for (int i = 1; i <= dense; ++i) {
    const Point2 p = ref_de_casteljau(control, double(i) / dense);
    cum[i] = cum[i - 1] + std::hypot(p.x - prev.x, p.y - prev.y);
    prev = p;
  }
  std::vector<Point2> pts(count);
  if (count <= 0) return pts;
  pts.front() = c.p0;
  if (count == 1) return pts;
  pts.back() = c.p3;
  const double total = cum.back();
  for (int i = 1; i + 1 < count; ++i) {
    const double target = total * double(i) / (count - 1);
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    std::size_t hi = std::size_t(it - cum.begin());
    if (hi == 0) hi = 1;
    const double seg = cum[hi] - cum[hi - 1];
    const double frac = seg > 0.0 ? (target - cum[hi - 1]) / seg : 0.0;
    const double t = (double(hi - 1) + frac) / dense;
    pts[i] = ref_de_casteljau(control, t);
  }
  return pts;
}

}  // namespace fpbz::testing
