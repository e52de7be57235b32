#include "fpbz/skeleton.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace fpbz {
namespace {

// Neighbour offsets for x1..x8: east, then counter-clockwise.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

Neighborhood unpack(unsigned code) {
  Neighborhood n;
  for (int i = 0; i < 8; ++i) {
    n.x[i] = (code >> i) & 1u;
  }
  return n;
}

// Deletion decision per packed neighbourhood, per subiteration.
struct ThinLuts {
  bool sub1[256];
  bool sub2[256];
};

const ThinLuts& thin_luts() {
  static const ThinLuts luts = [] {
    ThinLuts t;
    for (unsigned code = 0; code < 256; ++code) {
      Neighborhood n = unpack(code);
      bool base = condition_g1(n) && condition_g2(n);
      t.sub1[code] = base && condition_g3(n);
      t.sub2[code] = base && condition_g3_prime(n);
    }
    return t;
  }();
  return luts;
}

}  // namespace

Neighborhood neighborhood_at(const BinaryImage& img, int x, int y) {
  Neighborhood n;
  for (int i = 0; i < 8; ++i) {
    int nx = x + kDx[i];
    int ny = y + kDy[i];
    n.x[i] = (img.in_bounds(nx, ny) && img.at(nx, ny)) ? 1 : 0;
  }
  return n;
}

bool condition_g1(const Neighborhood& n) {
  int xh = 0;
  for (int i = 1; i <= 4; ++i) {
    int odd = n.get(2 * i - 1);
    int even = n.get(2 * i);
    int next = n.get(2 * i + 1);
    if (odd == 0 && (even == 1 || next == 1)) ++xh;
  }
  return xh == 1;
}

bool condition_g2(const Neighborhood& n) {
  int n1 = 0, n2 = 0;
  for (int k = 1; k <= 4; ++k) {
    n1 += (n.get(2 * k - 1) | n.get(2 * k));
    n2 += (n.get(2 * k) | n.get(2 * k + 1));
  }
  int m = n1 < n2 ? n1 : n2;
  return m >= 2 && m <= 3;
}

bool condition_g3(const Neighborhood& n) {
  return ((n.get(2) | n.get(3) | (n.get(8) ^ 1)) & n.get(1)) == 0;
}

bool condition_g3_prime(const Neighborhood& n) {
  return ((n.get(6) | n.get(7) | (n.get(4) ^ 1)) & n.get(5)) == 0;
}

namespace {

// After removing (x,y), would its set neighbours remain one 8-connected
// group among themselves? Non-consecutive ring positions can still touch
// (east and north bridge diagonally), so this is graph connectivity over
// the up-to-8 cells, not a transition count.
bool neighbours_stay_connected(const BinaryImage& img, int x, int y) {
  int px[8], py[8];
  int cells = 0;
  for (int i = 0; i < 8; ++i) {
    const int nx = x + kDx[i];
    const int ny = y + kDy[i];
    if (img.in_bounds(nx, ny) && img.at(nx, ny)) {
      px[cells] = nx;
      py[cells] = ny;
      ++cells;
    }
  }
  if (cells == 0) return false;
  bool mark[8] = {true};
  int seen = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 1; i < cells; ++i) {
      if (mark[i]) continue;
      for (int j = 0; j < cells; ++j) {
        if (mark[j] && std::abs(px[i] - px[j]) <= 1 &&
            std::abs(py[i] - py[j]) <= 1) {
          mark[i] = true;
          ++seen;
          grew = true;
          break;
        }
      }
    }
  }
  return seen == cells;
}

int count_components8(const BinaryImage& img) {
  std::vector<int> parent(img.bits.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
  const auto find = [&parent](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!img.at(x, y)) continue;
      for (int i = 0; i < 8; ++i) {
        const int nx = x + kDx[i];
        const int ny = y + kDy[i];
        if (img.in_bounds(nx, ny) && img.at(nx, ny)) {
          parent[find(int(img.index(x, y)))] = find(int(img.index(nx, ny)));
        }
      }
    }
  }
  int count = 0;
  for (std::size_t i = 0; i < img.bits.size(); ++i) {
    if (img.bits[i] && find(int(i)) == int(i)) ++count;
  }
  return count;
}

int degree8(const BinaryImage& img, int x, int y) {
  int deg = 0;
  for (int i = 0; i < 8; ++i) {
    const int nx = x + kDx[i];
    const int ny = y + kDy[i];
    if (img.in_bounds(nx, ny) && img.at(nx, ny)) ++deg;
  }
  return deg;
}

// The directional conditions alone cannot always reach unit width: a pixel
// may pass G1 and G2 yet be blocked by both G3 and G3', and a crossing can
// pin a solid 2x2 whose members each anchor a private arm. This sweep
// deletes, per remaining 2x2 block, the first member whose removal keeps
// the foreground component count (cheap local test first, exact global
// recount as fallback); for a fully pinned block it eats an adjacent leaf
// pixel so the next sweep can free the member it was holding.
bool block_cleanup(BinaryImage& img) {
  bool any = false;
  bool cleaned = true;
  while (cleaned) {
    cleaned = false;
    for (int y = 0; y + 1 < img.height; ++y) {
      for (int x = 0; x + 1 < img.width; ++x) {
        if (!(img.at(x, y) && img.at(x + 1, y) && img.at(x, y + 1) &&
              img.at(x + 1, y + 1))) {
          continue;
        }
        const int mx[4] = {x, x + 1, x, x + 1};
        const int my[4] = {y, y, y + 1, y + 1};
        bool deleted = false;
        for (int k = 0; k < 4 && !deleted; ++k) {
          bool safe = neighbours_stay_connected(img, mx[k], my[k]);
          if (!safe) {
            const int before = count_components8(img);
            img.at(mx[k], my[k]) = 0;
            safe = count_components8(img) == before;
            if (!safe) img.at(mx[k], my[k]) = 1;
            deleted = safe;
          } else {
            img.at(mx[k], my[k]) = 0;
            deleted = true;
          }
        }
        if (!deleted) {
          for (int k = 0; k < 4 && !deleted; ++k) {
            for (int i = 0; i < 8 && !deleted; ++i) {
              const int ax = mx[k] + kDx[i];
              const int ay = my[k] + kDy[i];
              if (!img.in_bounds(ax, ay) || !img.at(ax, ay)) continue;
              if (ax >= x && ax <= x + 1 && ay >= y && ay <= y + 1) continue;
              if (degree8(img, ax, ay) == 1) {
                img.at(ax, ay) = 0;
                deleted = true;
              }
            }
          }
        }
        if (deleted) {
          cleaned = true;
          any = true;
        }
      }
    }
  }
  return any;
}

}  // namespace

BinaryImage thin(const BinaryImage& img) {
  const ThinLuts& luts = thin_luts();
  BinaryImage cur = img;
  std::vector<std::pair<int, int>> kill;
  bool outer = true;
  while (outer) {
    outer = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int sub = 0; sub < 2; ++sub) {
        const bool* lut = sub == 0 ? luts.sub1 : luts.sub2;
        kill.clear();
        for (int y = 0; y < cur.height; ++y) {
          for (int x = 0; x < cur.width; ++x) {
            if (!cur.at(x, y)) continue;
            unsigned code = 0;
            for (int i = 0; i < 8; ++i) {
              int nx = x + kDx[i];
              int ny = y + kDy[i];
              if (cur.in_bounds(nx, ny) && cur.at(nx, ny)) code |= 1u << i;
            }
            if (lut[code]) kill.emplace_back(x, y);
          }
        }
        for (auto [x, y] : kill) cur.at(x, y) = 0;
        if (!kill.empty()) changed = true;
      }
      if (changed) outer = true;
    }
    if (block_cleanup(cur)) outer = true;
  }
  return cur;
}

int crossing_number(const BinaryImage& img, int x, int y) {
  if (!img.in_bounds(x, y) || !img.at(x, y)) {
    throw std::invalid_argument("crossing_number: (" + std::to_string(x) + "," +
                                std::to_string(y) + ") is not a foreground pixel");
  }
  Neighborhood n = neighborhood_at(img, x, y);
  int sum = 0;
  for (int i = 1; i <= 8; ++i) {
    sum += std::abs(static_cast<int>(n.get(i)) - static_cast<int>(n.get(i + 1)));
  }
  return sum / 2;
}

std::vector<MinutiaPoint> find_minutiae(const BinaryImage& skeleton) {
  std::vector<MinutiaPoint> out;
  for (int y = 1; y + 1 < skeleton.height; ++y) {
    for (int x = 1; x + 1 < skeleton.width; ++x) {
      if (!skeleton.at(x, y)) continue;
      int cn = crossing_number(skeleton, x, y);
      if (cn == 1) {
        out.push_back({x, y, MinutiaKind::Ending});
      } else if (cn >= 3) {
        out.push_back({x, y, MinutiaKind::Bifurcation});
      }
    }
  }
  return out;
}

}  // namespace fpbz
