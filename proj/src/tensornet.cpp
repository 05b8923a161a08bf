#include "tensornet.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "errors.hpp"

namespace snc {

Tensor vertex_tensor(const Patch& patch, int vid) {
  const auto& edges = patch.incident_edges(vid);
  int deg = static_cast<int>(edges.size());
  std::vector<int> legs;
  for (int e : edges) legs.push_back(virtual_leg(e));
  for (int e : edges) legs.push_back(patch.site_at(e, vid));

  Tensor t(legs);
  // axis i = virtual of edges[i], axis deg+i = matching physical half
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << deg); ++v) {
    if (std::popcount(v) % 2 != 0) continue;
    t.set(v | (v << deg), 1.0);
  }
  return t;
}

Statevector contract_patch(const Patch& patch, int qubit_cap) {
  Tensor acc = Tensor::scalar_one();
  for (int v = 0; v < patch.vertex_count(); ++v)
    acc = acc.contract(vertex_tensor(patch, v));
  Statevector state = acc.to_statevector(qubit_cap);
  state.normalize();
  state.canonicalize_phase();
  return state;
}

Tensor contract_region(const Patch& patch, const std::vector<int>& vertices,
                       const std::map<int, std::array<cx, 2>>& site_bras,
                       const std::map<int, int>& virtual_pins) {
  std::set<int> inside(vertices.begin(), vertices.end());
  if (inside.size() != vertices.size())
    fail(errc::invalid_argument, "duplicate vertex in region");

  Tensor acc = Tensor::scalar_one();
  for (int v : vertices) {
    Tensor t = vertex_tensor(patch, v);
    // fold bras leaf-side so intermediates stay small
    for (int e : patch.incident_edges(v)) {
      int site = patch.site_at(e, v);
      auto bra = site_bras.find(site);
      if (bra != site_bras.end()) t = t.contract_leg(site, bra->second);
    }
    acc = acc.contract(t);
  }
  for (const auto& [edge, value] : virtual_pins) {
    if (!acc.has_leg(virtual_leg(edge)))
      fail(errc::invalid_argument, "pinned edge is not an open leg of the region");
    acc = acc.pin(virtual_leg(edge), value);
  }
  return acc;
}

void apply_cz_phase(Tensor& t, int leg_a, int leg_b) {
  std::uint64_t ma = std::uint64_t{1} << t.axis_of(leg_a);
  std::uint64_t mb = std::uint64_t{1} << t.axis_of(leg_b);
  for (std::uint64_t i = 0; i < t.size(); ++i)
    if ((i & ma) && (i & mb)) t.set(i, -t.at(i));
}

Mat mat_from_tensor(const Tensor& t, const std::vector<int>& row_legs,
                    const std::vector<int>& col_legs) {
  if (static_cast<int>(row_legs.size() + col_legs.size()) != t.rank())
    fail(errc::invalid_argument, "row and column legs must cover the tensor");
  Mat m(1 << row_legs.size(), 1 << col_legs.size());
  std::vector<std::uint64_t> row_mask(row_legs.size()), col_mask(col_legs.size());
  for (std::size_t i = 0; i < row_legs.size(); ++i)
    row_mask[i] = std::uint64_t{1} << t.axis_of(row_legs[i]);
  for (std::size_t i = 0; i < col_legs.size(); ++i)
    col_mask[i] = std::uint64_t{1} << t.axis_of(col_legs[i]);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      std::uint64_t idx = 0;
      for (std::size_t i = 0; i < row_mask.size(); ++i)
        if (r & (1 << i)) idx |= row_mask[i];
      for (std::size_t i = 0; i < col_mask.size(); ++i)
        if (c & (1 << i)) idx |= col_mask[i];
      m.at(r, c) = t.at(idx);
    }
  return m;
}

std::array<cx, 2> measurement_bra(const MeasBasis& basis, int outcome) {
  auto ket = basis.vector(outcome);
  return {std::conj(ket[0]), std::conj(ket[1])};
}

} // namespace snc
