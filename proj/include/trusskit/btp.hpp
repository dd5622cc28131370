#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

// Vertex of a child part, by position in the node's children and its local id.
struct PinRef {
  int part = 0;
  int vertex = 0;
};

using PinPair = std::pair<PinRef, PinRef>;

enum class BtpKind { Segment, Bigon, Triangle, Prism, Pin };

std::string to_string(BtpKind k);

// Bigon: two children, pins (S,z1)~(T,z3), (S,z2)~(T,z4).
// Triangle: three children, pins (S,z2)~(T,z3), (T,z4)~(U,z5), (U,z6)~(S,z1).
// Prism: five children P,Q,R,S,T, pins (P,z1)~(R,z7), (P,z2)~(S,z8), (P,z3)~(T,z9),
//   (Q,z4)~(R,z10), (Q,z5)~(S,z11), (Q,z6)~(T,z12).
// Pin: one child, pins holds a single pair of two vertices of that child.
struct BtpNode {
  BtpKind kind = BtpKind::Segment;
  std::array<Point, 2> segment{};
  std::vector<BtpNode> children;
  std::vector<PinPair> pins;
};

BtpNode btp_segment(Point a, Point b);
BtpNode btp_bigon(BtpNode s, BtpNode t, std::array<PinPair, 2> pins);
BtpNode btp_triangle(BtpNode s, BtpNode t, BtpNode u, std::array<PinPair, 3> pins);
BtpNode btp_prism(std::array<BtpNode, 5> parts, std::array<PinPair, 6> pins);
BtpNode btp_pin(BtpNode t, int v1, int v2);

struct PrismLegs {
  std::array<Point, 6> z;  // legs z1z4, z2z5, z3z6
};

// Determinant of rows (x_i - x_{i+3}, y_i - y_{i+3}, x_i y_{i+3} - x_{i+3} y_i).
double prism_determinant(const PrismLegs& legs);

struct Assembly {
  Truss truss;
  bool degenerate = false;  // some prism has a vanishing determinant
  std::vector<std::string> warnings;
};

constexpr double kPinTol = 1e-9;

// Disjoint union then identification. Pin mismatches, collinear triangle
// anchors and malformed nodes throw InputError. Degenerate prisms only warn.
Assembly assemble(const BtpNode& node);

// Recursive compatibility count for a nondegenerate tree.
int predicted_compat(const BtpNode& node);

// Random nondegenerate tree of the given depth, built by fitting pieces
// onto each other with similarity maps.
BtpNode random_btp(std::uint64_t seed, int depth);

}  // namespace trusskit
