#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "linalg.hpp"
#include "oracle.hpp"

namespace snc {

// Byproduct bookkeeping for one wire. The correlation-space state trails
// the intended one by X^v Z^r, and `enc` records which of the two bond
// encodings currently carries the logical qubit: 0 when the lower path
// copies the upper one, 1 when it is flipped.
struct PauliFrame {
  int v = 0;
  int r = 0;
  int enc = 0;
  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;
};

enum class PatternKind { path_step, rot_z, rot_x, cz_couple, init, readout };

const char* pattern_kind_name(PatternKind k);

// Sign rule for an adaptively chosen measurement angle:
//   measured angle = (-1)^(frame seed xor outcomes of `sites`) * base.
struct AngleRule {
  double base = 0.0;
  enum class Seed { none, v, r } seed = Seed::none;
  std::vector<int> sites;
};

struct PatternSite {
  int site = -1;
  int wire = -1;
  Role role = Role::a;
  MeasBasis::Family family = MeasBasis::Family::z;
  std::optional<AngleRule> angle; // rot families only
};

// One measurement pattern: a column's worth of sites on one wire (two for
// cz_couple), listed in the order they must be measured.
struct Pattern {
  PatternKind kind = PatternKind::path_step;
  int wire = -1;  // cz_couple: the upper wire of the pair
  int wire2 = -1; // cz_couple only
  int step = -1;  // gate cell index; -1 for init/readout/epilogue columns
  int column = 0; // x position, the schedule's ordering key
  std::vector<PatternSite> sites;
  // live-mode entangler: CZ between these two qubits right before the
  // column is measured (the in-halves flanking the coupling edge)
  std::optional<std::pair<int, int>> cz_pair;

  const PatternSite* find(int wire, Role role) const;
  int site_of(int wire, Role role) const; // throws errc::internal when absent
};

// Builders. `step_x` is the x of a step column (2, 4, ..., 2*cols);
// gate cells are addressed by their step index as in Patch::wire_cell.
Pattern make_path_step(const Patch& patch, int wire, int step_x);
Pattern make_rot_z(const Patch& patch, int wire, int step, double theta);
Pattern make_rot_x(const Patch& patch, int wire, int step, double theta);
Pattern make_cz_couple(const Patch& patch, int upper_wire, int step_x, bool live);
Pattern make_init(const Patch& patch, int wire);
Pattern make_readout(const Patch& patch, int wire);

// Fold a pattern's measurement outcomes (keyed by site id) into the frames
// (indexed by wire).
void apply_frame_update(const Pattern& pat, const std::map<int, int>& outcomes,
                        std::vector<PauliFrame>& frames);

// Readout decoding: logical outcome = h xor v. Throws errc::verification
// when the four readout outcomes are mutually inconsistent.
int readout_decode(const Pattern& pat, const std::map<int, int>& outcomes,
                   const PauliFrame& frame);

// Ideal logical gates and frame algebra, on the 2^wires-dimensional logical
// space (wire 0 on bit 0).
Mat ideal_rz(double theta);
Mat ideal_rx(double theta);
Mat ideal_cz();
Mat logical_byproduct(const PauliFrame& f); // X^v Z^r, 2x2
Mat bond_embedding(int enc);                // 4x2, bond bits (u, l) from logical

// Induced bond-space operator of one outcome branch, by contracting the
// pattern's column with the outcomes' bras. Rows index the outgoing bond
// edges' virtual bits (wire upper, wire lower, then the second wire for
// cz_couple), columns the incoming ones; init has one column, readout one
// row. `theta_sign` is the sign the rotated site (if any) was measured at.
Mat pattern_branch_operator(const Patch& patch, const Pattern& pat,
                            const std::map<int, int>& outcomes, int theta_sign = 1);

// Certification by direct contraction: for every outcome branch of the
// pattern and every frame preset, the induced bond-space operator must
// equal byproduct' * ideal * byproduct up to phase, with the adaptive sign
// applied to the measured angle.
struct PatternCheck {
  long branches = 0;      // nonzero branches checked (x frame presets)
  long zero_branches = 0; // outcome combinations of probability zero
  double max_residual = 0.0;
  bool pass = true;
  std::string detail; // first failure, empty when pass
};

PatternCheck verify_pattern(const Patch& patch, const Pattern& pat, double tol);

} // namespace snc
