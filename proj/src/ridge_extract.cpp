#include "fpbz/ridge_extract.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace fpbz {
namespace {

std::int64_t key_of(int x, int y) {
  return (static_cast<std::int64_t>(y) << 32) | static_cast<std::uint32_t>(x);
}

}  // namespace

BinaryImage disconnect_at_minutiae(const BinaryImage& skeleton,
                                   const std::vector<MinutiaPoint>& minutiae) {
  BinaryImage out = skeleton;
  for (const MinutiaPoint& m : minutiae) {
    if (m.kind == MinutiaKind::Bifurcation && out.in_bounds(m.x, m.y)) {
      out.at(m.x, m.y) = 0;
    }
  }
  return out;
}

std::vector<PixelSet> label_components(const BinaryImage& img, int min_ridge_px) {
  if (min_ridge_px < 1) min_ridge_px = 1;
  std::vector<std::uint8_t> seen(img.bits.size(), 0);
  std::vector<PixelSet> out;
  std::vector<Pixel> stack;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!img.at(x, y) || seen[img.index(x, y)]) continue;
      PixelSet comp;
      stack.clear();
      stack.push_back({x, y});
      seen[img.index(x, y)] = 1;
      while (!stack.empty()) {
        Pixel p = stack.back();
        stack.pop_back();
        comp.push_back(p);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int nx = p.x + dx, ny = p.y + dy;
            if (!img.in_bounds(nx, ny) || !img.at(nx, ny)) continue;
            if (seen[img.index(nx, ny)]) continue;
            seen[img.index(nx, ny)] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      if (static_cast<int>(comp.size()) >= min_ridge_px) {
        std::sort(comp.begin(), comp.end(), row_major_less);
        out.push_back(std::move(comp));
      }
    }
  }
  // Discovery order already follows the smallest row-major pixel per component.
  return out;
}

RidgePath order_ridge_pixels(const PixelSet& component) {
  if (component.size() < 2) {
    throw std::invalid_argument("order_ridge_pixels: component smaller than 2 pixels");
  }
  PixelSet comp = component;
  std::sort(comp.begin(), comp.end(), row_major_less);

  std::unordered_set<std::int64_t> members;
  members.reserve(comp.size() * 2);
  for (Pixel p : comp) members.insert(key_of(p.x, p.y));

  auto neighbors_of = [&](Pixel p, const std::unordered_set<std::int64_t>& skip) {
    std::vector<Pixel> out;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        Pixel q{p.x + dx, p.y + dy};
        std::int64_t k = key_of(q.x, q.y);
        if (members.count(k) && !skip.count(k)) out.push_back(q);
      }
    }
    std::sort(out.begin(), out.end(), row_major_less);
    return out;
  };

  // Start at the first endpoint in row-major order; a closed loop has none and
  // is cut at its smallest row-major pixel.
  static const std::unordered_set<std::int64_t> kNone;
  Pixel start = comp.front();
  for (Pixel p : comp) {
    if (neighbors_of(p, kNone).size() == 1) {
      start = p;
      break;
    }
  }

  std::unordered_set<std::int64_t> visited;
  RidgePath path;
  path.reserve(comp.size());
  path.push_back(start);
  visited.insert(key_of(start.x, start.y));

  while (true) {
    Pixel cur = path.back();
    std::vector<Pixel> cands = neighbors_of(cur, visited);
    if (cands.empty()) break;
    Pixel next = cands.front();
    if (cands.size() > 1 && path.size() >= 2) {
      // Prefer the smallest turn from the current heading.
      Pixel prev = path[path.size() - 2];
      double hx = cur.x - prev.x, hy = cur.y - prev.y;
      double hn = std::hypot(hx, hy);
      double best = -2.0;
      for (Pixel c : cands) {
        double cx = c.x - cur.x, cy = c.y - cur.y;
        double dot = (hx * cx + hy * cy) / (hn * std::hypot(cx, cy));
        if (dot > best + 1e-12) {
          best = dot;
          next = c;
        }
      }
    }
    path.push_back(next);
    visited.insert(key_of(next.x, next.y));
  }
  return path;
}

std::string dump_ridges(const std::vector<RidgePath>& ridges) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ridges.size(); ++i) {
    out << i << ':';
    for (Pixel p : ridges[i]) {
      out << " (" << p.x << ',' << p.y << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fpbz
