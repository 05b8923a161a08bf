#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "compiler.hpp"
#include "lattice.hpp"
#include "patterns.hpp"

namespace snc {

// Strip evaluation of a compiled schedule.
//
// The engine sweeps the patch one vertex column at a time, carrying a
// "frontier" amplitude vector indexed by the occupation bits of the rows+1
// horizontal lines at the current cut. Crossing a column sums over the
// column's vertical edges (vertex parity fixes each line's outgoing bit),
// multiplies in the measurement bras of every site anchored there, and
// applies any entangler phase scheduled for the column. Outcome branches
// whose frontier collapses to zero are discarded; the survivors are grouped
// into classes that share byproduct frames, decoded bits, and a common
// frontier ray, so the branch count stays polynomial even though the raw
// outcome tree is exponential. Probabilities come out exact: classes merge
// only when their frontiers are numerically proportional, and the squared
// proportionality factors accumulate in the class weight.
//
// Cost scales with 2^(rows+1) * classes, not with the number of qubits, so
// strips far beyond the brute-force oracle's reach stay cheap.

struct RunOptions {
  double merge_tol = 1e-9;  // relative residual below which frontiers count
                            // as proportional and the branches merge
  double prune_tol = 1e-10; // relative frontier norm below which a branch is
                            // treated as structurally impossible; keep gate
                            // angles well above it (|theta| > 1e-6 is safe)
  long class_limit = 100000; // abort with errc::resource_limit beyond this
};

// One family of outcome branches that agree on frames, decoded bits, and
// frontier ray. `outcomes` belongs to a representative member; the
// probability is summed over the whole family.
struct BranchClass {
  std::map<int, int> outcomes; // site -> outcome for the representative
  double multiplicity = 1;     // branches folded into this class; exact as
                               // long as it fits a double's integer range
  double probability = 0.0;
  std::vector<int> decoded;       // logical bit per wire
  std::vector<PauliFrame> frames; // frames after the final column
};

struct RunResult {
  int wires = 0;
  std::vector<double> distribution; // over logical bitstrings, wire w on bit w
  double total_probability = 0.0;   // should be 1 up to roundoff
  double branches = 0;              // total multiplicity across classes
  std::vector<BranchClass> classes;
};

RunResult run_exhaustive(const Patch& patch, const Schedule& schedule,
                         const RunOptions& opts = {});

// Per-shot trajectory sampling. Each shot walks the same column sweep but
// draws one outcome set per column from its exact conditional distribution;
// the future weight of a partial branch is the frontier norm taken against
// backward loop-completion counts, which are measurement independent. Shots
// are i.i.d. and the stream is fully determined by `seed`.
struct SampleResult {
  int wires = 0;
  long shots = 0;
  std::vector<long> counts; // per logical bitstring, wire w on bit w
};

SampleResult run_sampled(const Patch& patch, const Schedule& schedule,
                         long shots, std::uint64_t seed,
                         const RunOptions& opts = {});

// Dense reference simulation of the logical circuit itself (wire w on bit w,
// all wires starting in |0>), and the comparison helpers the tests and the
// CLI build on.
std::vector<cx> ideal_statevector(const Circuit& c);
std::vector<double> ideal_distribution(const Circuit& c);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct AgreementReport {
  double tvd = 0.0;
  double total_probability = 0.0;
  long classes = 0;
  double branches = 0;
  std::vector<double> engine; // decoded distribution from the sweep
  std::vector<double> ideal;
};

// Compile `c` onto `patch` in `mode`, run the sweep, and compare against the
// dense reference.
AgreementReport check_against_ideal(const Patch& patch, const Circuit& c,
                                    CouplingMode mode, const RunOptions& opts = {});

} // namespace snc
