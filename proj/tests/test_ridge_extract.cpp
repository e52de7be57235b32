#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fpbz/ridge_extract.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace fpbz;

namespace {

BinaryImage random_mask(std::mt19937& rng, int w, int h, int density_pct) {
  BinaryImage img(w, h);
  std::uniform_int_distribution<int> dist(0, 99);
  for (auto& b : img.bits) b = dist(rng) < density_pct ? 1 : 0;
  return img;
}

bool adjacent8(Pixel a, Pixel b) {
  return std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1 &&
         !(a.x == b.x && a.y == b.y);
}

}  // namespace

TEST_CASE("disconnect removes bifurcation pixels, keeps endings") {
  const BinaryImage y = testing::make_mask({
      ".......",
      ".#...#.",
      "..#.#..",
      "...#...",
      "...#...",
      "...#...",
      ".......",
  });
  const auto minutiae = find_minutiae(y);
  const BinaryImage cut = disconnect_at_minutiae(y, minutiae);
  CHECK(cut.foreground_count() == y.foreground_count() - 1);
  CHECK(cut.bits[cut.index(3, 3)] == 0);
  CHECK(cut.bits[cut.index(1, 1)] == 1);
  CHECK(testing::ref_component_count(y) == 1);
  CHECK(testing::ref_component_count(cut) == 3);
}

TEST_CASE("disconnect on an X crossing yields four components") {
  const BinaryImage x = testing::make_mask({
      ".......",
      ".#...#.",
      "..#.#..",
      "...#...",
      "..#.#..",
      ".#...#.",
      ".......",
  });
  const BinaryImage cut = disconnect_at_minutiae(x, find_minutiae(x));
  CHECK(testing::ref_component_count(cut) == 4);
}

TEST_CASE("disconnect with no bifurcations is the identity") {
  const BinaryImage line = testing::make_mask({
      ".....",
      ".###.",
      ".....",
  });
  const BinaryImage out = disconnect_at_minutiae(line, find_minutiae(line));
  CHECK(out.bits == line.bits);
}

TEST_CASE("label_components: basic counting and the size filter") {
  BinaryImage empty(6, 6);
  CHECK(label_components(empty, 2).empty());

  const BinaryImage two = testing::make_mask({
      "##....",
      "#.....",
      "....##",
      "....#.",
  });
  const auto comps = label_components(two, 2);
  REQUIRE(comps.size() == 2);
  // Ordered by smallest row-major pixel; members sorted row-major.
  CHECK(comps[0].front() == Pixel{0, 0});
  CHECK(comps[1].front() == Pixel{4, 2});
  for (const auto& c : comps) {
    CHECK(std::is_sorted(c.begin(), c.end(), row_major_less));
  }

  // min_ridge_px filters both of these 3-pixel components out.
  CHECK(label_components(two, 4).empty());
}

TEST_CASE("label_components partition matches the union-find oracle") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryImage img = random_mask(rng, 32, 32, 30);
    const auto got = label_components(img, 1);
    const auto want = testing::ref_components(img);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      REQUIRE(got[i].size() == want[i].size());
      for (std::size_t j = 0; j < got[i].size(); ++j) {
        REQUIRE(got[i][j] == want[i][j]);
      }
    }
  }
}

TEST_CASE("order_ridge_pixels: horizontal segment runs left to right") {
  PixelSet comp = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
  const RidgePath path = order_ridge_pixels(comp);
  REQUIRE(path.size() == 5);
  CHECK(path.front() == Pixel{1, 1});
  CHECK(path.back() == Pixel{5, 1});
  for (std::size_t i = 1; i < path.size(); ++i) {
    CHECK(adjacent8(path[i - 1], path[i]));
  }
}

TEST_CASE("order_ridge_pixels: L-shaped path visits every pixel once") {
  const BinaryImage l = testing::make_mask({
      "#....",
      "#....",
      "#....",
      "####.",
  });
  const auto comps = label_components(l, 2);
  REQUIRE(comps.size() == 1);
  const RidgePath path = order_ridge_pixels(comps[0]);
  REQUIRE(path.size() == comps[0].size());
  for (std::size_t i = 1; i < path.size(); ++i) {
    CHECK(adjacent8(path[i - 1], path[i]));
  }
  std::set<std::pair<int, int>> seen;
  for (const Pixel& p : path) seen.insert({p.x, p.y});
  CHECK(seen.size() == path.size());
  CHECK(path.front() == Pixel{0, 0});
  CHECK(path.back() == Pixel{3, 3});
}

TEST_CASE("order_ridge_pixels: closed ring is cut at the smallest pixel") {
  const BinaryImage ring = testing::make_mask({
      ".....",
      ".###.",
      ".#.#.",
      ".###.",
  });
  const auto comps = label_components(ring, 2);
  REQUIRE(comps.size() == 1);
  REQUIRE(comps[0].size() == 8);
  const RidgePath path = order_ridge_pixels(comps[0]);
  REQUIRE(path.size() == 8);
  CHECK(path.front() == Pixel{1, 1});
  for (std::size_t i = 1; i < path.size(); ++i) {
    CHECK(adjacent8(path[i - 1], path[i]));
  }
  // Ring closes: last pixel neighbours the first.
  CHECK(adjacent8(path.back(), path.front()));
  std::set<std::pair<int, int>> seen;
  for (const Pixel& p : path) seen.insert({p.x, p.y});
  CHECK(seen.size() == 8);
}

TEST_CASE("order_ridge_pixels rejects degenerate components") {
  CHECK_THROWS_AS(order_ridge_pixels(PixelSet{}), std::invalid_argument);
  CHECK_THROWS_AS(order_ridge_pixels(PixelSet{{3, 3}}), std::invalid_argument);
}

TEST_CASE("ordering spans every component of a thinned ripple skeleton") {
  // Thinned skeletons are not strict paths: staircase segments keep a
  // redundant partner pixel (no 2x2 block forms, so thinning retains it),
  // and branch points at the image border survive the minutia cut because
  // border pixels are never reported as minutiae. The walk therefore may
  // not visit every pixel. What it must deliver: an 8-connected duplicate
  // free trail through the component that strands nothing, with every
  // skipped pixel still touching the trail.
  const GrayImage gray = testing::make_ripple(5);
  BinaryImage mask(gray.width, gray.height);
  for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
    mask.bits[i] = gray.pixels[i] > 140 ? 1 : 0;
  }
  const BinaryImage skel = thin(mask);
  const BinaryImage cut = disconnect_at_minutiae(skel, find_minutiae(skel));
  const auto comps = label_components(cut, 4);
  REQUIRE(!comps.empty());
  for (const auto& comp : comps) {
    const RidgePath path = order_ridge_pixels(comp);
    REQUIRE(path.size() >= comp.size() / 2 + 1);
    std::size_t bad_steps = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (!adjacent8(path[i - 1], path[i])) ++bad_steps;
    }
    CHECK(bad_steps == 0);
    auto sorted = path;
    std::sort(sorted.begin(), sorted.end(), row_major_less);
    CHECK(std::adjacent_find(sorted.begin(), sorted.end(),
                             [](Pixel a, Pixel b) { return a == b; }) ==
          sorted.end());
    CHECK(std::includes(comp.begin(), comp.end(), sorted.begin(), sorted.end(),
                        row_major_less));
    std::vector<Pixel> missed;
    std::set_difference(comp.begin(), comp.end(), sorted.begin(), sorted.end(),
                        std::back_inserter(missed), row_major_less);
    for (const Pixel& p : missed) {
      const bool touches =
          std::any_of(path.begin(), path.end(),
                      [&](const Pixel& q) { return adjacent8(p, q); });
      CHECK(touches);
    }
  }
}

TEST_CASE("dump_ridges prints one indexed line per ridge") {
  std::vector<RidgePath> ridges = {
      {{1, 2}, {2, 3}},
      {{0, 0}, {1, 0}, {2, 1}},
  };
  CHECK(dump_ridges(ridges) == "0: (1,2) (2,3)\n1: (0,0) (1,0) (2,1)\n");
  CHECK(dump_ridges({}).empty());
}
