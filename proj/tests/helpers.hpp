#pragma once

#include <random>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit::testing {

// Jiggles every vertex by at most amp in each coordinate.
inline Truss jiggle(const Truss& t, double amp, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<Point> p = t.vertices();
  for (Point& q : p) {
    q.x += u(rng);
    q.y += u(rng);
  }
  return t.with_positions(p);
}

inline Truss make_truss(std::vector<Point> pts, const std::vector<std::pair<int, int>>& links,
                        std::vector<Face> faces = {}) {
  std::vector<Edge> edges;
  for (auto [a, b] : links) edges.push_back(Edge{a, b, std::nullopt, false, false});
  return Truss(std::move(pts), std::move(edges), std::move(faces));
}

}  // namespace trusskit::testing
