#pragma once

#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "lattice.hpp"
#include "patterns.hpp"

namespace snc {

// How entanglers reach the state: `live` applies each CZ right before its
// column is measured; `precoupled` bakes every coupler into the resource
// state up front, adding canceling pairs in free slots so the measurement
// phase runs with no two-qubit operations at all.
enum class CouplingMode { live, precoupled };

const char* coupling_mode_name(CouplingMode m);

struct CellOp {
  GateKind kind = GateKind::id;
  double angle = 0.0;
};

// A coupler placed at the step column of `cell` between `upper_wire` and
// the wire below. Consumed placements realize circuit entanglers; the rest
// come in adjacent-column pairs that multiply out to the identity.
struct CzPlacement {
  int upper_wire = -1;
  int cell = -1;
  bool consumed = true;
};

struct Schedule {
  int rows = 0;
  int cols = 0;
  int wires = 0; // wires the circuit actually uses
  CouplingMode mode = CouplingMode::live;
  std::vector<std::vector<CellOp>> cells; // [wire][cell] after padding
  std::vector<CzPlacement> placements;
  std::vector<Pattern> patterns; // measurement order
  std::vector<int> prologue;     // sites outside every pattern, Z-pinned first
  std::vector<std::pair<int, int>> precoupling; // state-prep CZs (precoupled mode)

  std::string to_json(int indent = -1) const;
};

// Lay the circuit onto the patch. Throws errc::capacity when it needs more
// wires or deeper cells than the patch provides.
Schedule compile_circuit(const Patch& patch, const Circuit& c, CouplingMode mode);

} // namespace snc
