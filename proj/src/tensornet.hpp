#pragma once

#include <map>
#include <vector>

#include "lattice.hpp"
#include "linalg.hpp"
#include "oracle.hpp"
#include "tensor.hpp"

namespace snc {

// Virtual legs live on edges; physical legs are site ids. The two label
// namespaces stay disjoint by making virtual labels negative.
inline int virtual_leg(int edge) { return -(edge + 1); }

// Correlation space tensor of one vertex: per incident edge a virtual leg
// and the physical leg of the half anchored here. An entry is 1 exactly
// when every physical bit copies its virtual bit and the virtual bits have
// even parity; that parity rule is what confines edge occupations to
// closed loops once the tensors are contracted.
Tensor vertex_tensor(const Patch& patch, int vid);

// Contract the whole patch. The unnormalized result has one leg per site;
// normalized it reproduces the loop-superposition resource state.
Statevector contract_patch(const Patch& patch,
                           int qubit_cap = Statevector::default_cap);

// Contract a set of vertices, folding measurement bras onto their sites as
// the tensors are absorbed. Edges with one endpoint outside keep an open
// virtual leg unless pinned in `virtual_pins`. Unmeasured interior sites
// keep their physical legs.
Tensor contract_region(const Patch& patch, const std::vector<int>& vertices,
                       const std::map<int, std::array<cx, 2>>& site_bras,
                       const std::map<int, int>& virtual_pins = {});

// In-place (-1)^{ab} on two legs of a tensor, used for entangling couplings
// that act before the bras are folded.
void apply_cz_phase(Tensor& t, int leg_a, int leg_b);

// View a tensor as a matrix: bit i of the row index is leg row_legs[i],
// likewise for columns; together they must cover every leg exactly once.
Mat mat_from_tensor(const Tensor& t, const std::vector<int>& row_legs,
                    const std::vector<int>& col_legs);

// Bra row vector of a measurement outcome (the conjugated basis ket).
std::array<cx, 2> measurement_bra(const MeasBasis& basis, int outcome);

} // namespace snc
