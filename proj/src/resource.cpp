#include "resource.hpp"

#include <bit>
#include <cmath>
#include <queue>

#include "errors.hpp"

namespace snc {

std::vector<std::uint64_t> enumerate_loops(const Patch& patch, int rank_cap) {
  if (patch.edge_count() > 64)
    fail(errc::resource_limit, "loop masks support at most 64 edges");
  int rank = patch.cycle_rank();
  if (rank > rank_cap)
    fail(errc::resource_limit, "cycle rank " + std::to_string(rank) +
                                   " exceeds the enumeration cap of " +
                                   std::to_string(rank_cap));

  // BFS spanning tree; for each vertex remember the edge set of its tree
  // path from the root. A non-tree edge (u, v) closes the fundamental cycle
  // path(u) xor path(v) xor {e}.
  int nv = patch.vertex_count();
  std::vector<std::uint64_t> path(nv, 0);
  std::vector<char> seen(nv, 0);
  std::vector<char> in_tree(patch.edge_count(), 0);
  std::queue<int> frontier;
  seen[0] = 1;
  frontier.push(0);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int e : patch.incident_edges(u)) {
      int v = patch.edge(e).u == u ? patch.edge(e).v : patch.edge(e).u;
      if (seen[v]) continue;
      seen[v] = 1;
      in_tree[e] = 1;
      path[v] = path[u] ^ (std::uint64_t{1} << e);
      frontier.push(v);
    }
  }

  std::vector<std::uint64_t> basis;
  for (int e = 0; e < patch.edge_count(); ++e) {
    if (in_tree[e]) continue;
    const Edge& ed = patch.edge(e);
    basis.push_back(path[ed.u] ^ path[ed.v] ^ (std::uint64_t{1} << e));
  }
  if (static_cast<int>(basis.size()) != rank)
    fail(errc::internal, "fundamental cycle count does not match the rank");

  std::vector<std::uint64_t> loops(std::size_t{1} << rank, 0);
  for (std::size_t i = 1; i < loops.size(); ++i) {
    int bit = std::countr_zero(i);
    loops[i] = loops[i ^ (std::size_t{1} << bit)] ^ basis[bit];
  }
  return loops;
}

Statevector ground_state(const Patch& patch, int qubit_cap) {
  Statevector state(patch.site_count(), qubit_cap);
  state.set_amp(0, 0.0);
  auto loops = enumerate_loops(patch);
  double w = 1.0 / std::sqrt(static_cast<double>(loops.size()));
  for (std::uint64_t mask : loops) {
    // occupy both halves of every edge in the loop
    std::uint64_t idx = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      int e = std::countr_zero(m);
      idx |= std::uint64_t{3} << (2 * e);
    }
    state.set_amp(idx, w);
  }
  return state;
}

namespace {

// state <- (state + product of Paulis applied to state) / 2
void apply_half_projector(Statevector& state, char pauli, const std::vector<int>& sites) {
  Statevector moved = state;
  for (int s : sites) moved.apply_pauli(pauli, s);
  for (std::uint64_t i = 0; i < state.dim(); ++i)
    state.set_amp(i, 0.5 * (state.amp(i) + moved.amp(i)));
}

} // namespace

Statevector stabilizer_project(const Patch& patch, int qubit_cap) {
  Statevector state(patch.site_count(), qubit_cap);
  for (int p = 0; p < patch.plaquette_count(); ++p)
    apply_half_projector(state, 'X', patch.plaquette_sites(p));
  for (int v = 0; v < patch.vertex_count(); ++v)
    apply_half_projector(state, 'Z', patch.vertex_sites(v));
  for (int e = 0; e < patch.edge_count(); ++e) {
    auto pair = patch.edge_sites(e);
    apply_half_projector(state, 'Z', {pair[0], pair[1]});
  }
  state.normalize();
  state.canonicalize_phase();
  return state;
}

void apply_precoupling(Statevector& state, const Patch& patch,
                       const std::vector<std::pair<int, int>>& site_pairs) {
  for (const auto& [a, b] : site_pairs) {
    if (a < 0 || a >= patch.site_count() || b < 0 || b >= patch.site_count())
      fail(errc::range, "precoupling site out of range");
    state.apply_cz(a, b);
  }
}

EnergyReport energy_report(const Patch& patch, const Statevector& state) {
  if (state.qubit_count() != patch.site_count())
    fail(errc::invalid_argument, "state does not match the patch");
  EnergyReport rep;
  auto term = [&](char pauli, const std::vector<int>& sites) {
    std::vector<std::pair<char, int>> factors;
    for (int s : sites) factors.emplace_back(pauli, s);
    return state.expect_pauli_product(factors);
  };
  for (int p = 0; p < patch.plaquette_count(); ++p)
    rep.plaquette_terms.push_back(term('X', patch.plaquette_sites(p)));
  for (int v = 0; v < patch.vertex_count(); ++v)
    rep.vertex_terms.push_back(term('Z', patch.vertex_sites(v)));
  for (int e = 0; e < patch.edge_count(); ++e) {
    auto pair = patch.edge_sites(e);
    rep.edge_terms.push_back(term('Z', {pair[0], pair[1]}));
  }
  double sum = 0.0;
  for (double t : rep.plaquette_terms) sum += t;
  for (double t : rep.vertex_terms) sum += t;
  for (double t : rep.edge_terms) sum += t;
  rep.total = -sum;
  return rep;
}

} // namespace snc
