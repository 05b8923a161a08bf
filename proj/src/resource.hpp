#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "oracle.hpp"

namespace snc {

// All closed-loop edge configurations of the patch: subsets of edges meeting
// every vertex an even number of times, encoded as bitmasks with edge e on
// bit e. Built from a spanning tree's fundamental cycles, so the count is
// exactly 2^cycle_rank. Throws errc::resource_limit past `rank_cap` (the
// list doubles per unit of rank) or when the patch has more than 64 edges.
std::vector<std::uint64_t> enumerate_loops(const Patch& patch, int rank_cap = 20);

// Equal-weight superposition of the loop configurations, with both qubits of
// every occupied edge flipped to |1>. Site s lives on statevector qubit s.
Statevector ground_state(const Patch& patch, int qubit_cap = Statevector::default_cap);

// The same state obtained the oblivious way: start from |0...0> and apply
// every stabilizer projector (I + term)/2, then normalize. Slower, and
// deliberately independent of enumerate_loops.
Statevector stabilizer_project(const Patch& patch,
                               int qubit_cap = Statevector::default_cap);

// CZ between the two sites of each pair (used to pre-install entangling
// couplings before any measurement).
void apply_precoupling(Statevector& state, const Patch& patch,
                       const std::vector<std::pair<int, int>>& site_pairs);

struct EnergyReport {
  std::vector<double> plaquette_terms; // <product of X over the 12-site support>
  std::vector<double> vertex_terms;    // <product of Z over the vertex support>
  std::vector<double> edge_terms;      // <ZZ on the edge pair>
  double total = 0.0;                  // minus the sum of every term
};
EnergyReport energy_report(const Patch& patch, const Statevector& state);

} // namespace snc
