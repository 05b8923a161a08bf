#pragma once

#include <string>
#include <vector>

namespace snc {

// Logical circuit IR, one directive per line:
//
//   wires 2        # first non-comment line, wire count
//   rz 0 pi/4      # Z rotation; angle is a pi fraction or a decimal
//   rx 1 -0.25
//   cz 0 1         # entangler, adjacent wires only
//   id 0           # explicit no-op, occupies one gate cell
//
// '#' starts a comment. Parse errors carry "line L, column C" locations and
// throw errc::parse.

enum class GateKind { rz, rx, cz, id };

const char* gate_kind_name(GateKind k);

struct Gate {
  GateKind kind = GateKind::id;
  int q1 = -1;
  int q2 = -1;            // cz only
  double angle = 0.0;     // rotations only
  std::string angle_text; // source spelling, kept for round trips
  int line = 0;
};

struct Circuit {
  int wires = 0;
  std::vector<Gate> gates;

  std::string to_text() const;
};

Circuit parse_circuit(const std::string& text);

// Angle literal parser, shared with the CLI: "pi", "-pi/2", "3pi/4", or any
// decimal accepted by strtod. Throws errc::parse on anything else.
double parse_angle(const std::string& token);

// Gate cells each wire needs, with cz slots aligned across the pair the way
// the compiler lays them out (shorter wire padded with identities first).
std::vector<int> wire_depths(const Circuit& c);

} // namespace snc
