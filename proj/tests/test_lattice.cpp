#include <doctest.h>

#include <set>

#include "errors.hpp"
#include "lattice.hpp"

using namespace snc;

TEST_CASE("single brick patch counts") {
  Patch p = build_patch(1, 1);
  CHECK(p.vertex_count() == 6);
  CHECK(p.edge_count() == 6);
  CHECK(p.site_count() == 12);
  CHECK(p.plaquette_count() == 1);
  CHECK(p.cycle_rank() == 1);
  CHECK(p.wire_count() == 0);
}

TEST_CASE("two bricks in a row share one vertical edge") {
  Patch p = build_patch(1, 2);
  CHECK(p.vertex_count() == 10);
  CHECK(p.edge_count() == 11);
  CHECK(p.site_count() == 22);
  CHECK(p.plaquette_count() == 2);
  CHECK(p.cycle_rank() == 2);
}

TEST_CASE("two stacked rows interlock") {
  Patch p = build_patch(2, 1);
  CHECK(p.vertex_count() == 10);
  CHECK(p.edge_count() == 11);
  CHECK(p.plaquette_count() == 2);
  CHECK(p.wire_count() == 1);
}

TEST_CASE("wider patches") {
  Patch p34 = build_patch(3, 4);
  CHECK(p34.vertex_count() == 38);
  CHECK(p34.edge_count() == 49);
  CHECK(p34.cycle_rank() == 12);
  CHECK(p34.wire_count() == 1);
  CHECK(p34.gate_cells_per_wire() == 3);

  Patch p53 = build_patch(5, 3);
  CHECK(p53.vertex_count() == 46);
  CHECK(p53.edge_count() == 60);
  CHECK(p53.cycle_rank() == 15);
  CHECK(p53.wire_count() == 2);
}

TEST_CASE("degenerate sizes are rejected") {
  CHECK_THROWS_AS(build_patch(0, 1), error);
  CHECK_THROWS_AS(build_patch(1, 0), error);
  CHECK_THROWS_AS(build_patch(-2, 3), error);
  try {
    build_patch(0, 1);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}

TEST_CASE("every bounded face is a plaquette") {
  // rank = E - V + 1 must equal the brick count on any patch
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) {
      Patch p = build_patch(r, c);
      CHECK(p.cycle_rank() == p.plaquette_count());
    }
}

TEST_CASE("vertex degrees are two or three") {
  Patch p = build_patch(3, 3);
  int boundary = 0;
  for (int v = 0; v < p.vertex_count(); ++v) {
    int deg = static_cast<int>(p.incident_edges(v).size());
    CHECK(deg >= 2);
    CHECK(deg <= 3);
    if (deg == 2) ++boundary;
  }
  CHECK(boundary > 0);
}

TEST_CASE("vertex ids are row major") {
  Patch p = build_patch(2, 2);
  for (int v = 0; v + 1 < p.vertex_count(); ++v) {
    CHECK(p.vertex(v) < p.vertex(v + 1));
  }
}

TEST_CASE("site numbering pairs each edge with its endpoints") {
  Patch p = build_patch(2, 3);
  for (int e = 0; e < p.edge_count(); ++e) {
    auto [s0, s1] = p.edge_sites(e);
    CHECK(s0 == 2 * e);
    CHECK(s1 == 2 * e + 1);
    CHECK(Patch::site_edge(s0) == e);
    CHECK(Patch::site_edge(s1) == e);
    CHECK(p.site_at(e, p.edge(e).u) == s0);
    CHECK(p.site_at(e, p.edge(e).v) == s1);
    // half 0 belongs to the lower-numbered endpoint
    CHECK(p.edge(e).u < p.edge(e).v);
  }
}

TEST_CASE("term supports have the right shapes") {
  Patch p = build_patch(2, 2);
  for (int pl = 0; pl < p.plaquette_count(); ++pl) {
    auto sites = p.plaquette_sites(pl);
    CHECK(sites.size() == 12);
    CHECK(std::set<int>(sites.begin(), sites.end()).size() == 12);
  }
  for (int v = 0; v < p.vertex_count(); ++v) {
    auto sites = p.vertex_sites(v);
    CHECK(sites.size() == 2 * p.incident_edges(v).size());
  }
}

TEST_CASE("plaquettes of one brick partition into six edges") {
  Patch p = build_patch(1, 1);
  const auto& es = p.plaquette_edges(0);
  std::set<int> all(es.begin(), es.end());
  CHECK(all.size() == 6);
  CHECK(*all.begin() == 0);
  CHECK(*all.rbegin() == 5);
}

TEST_CASE("wire cell roles on a full-height wire") {
  Patch p = build_patch(3, 2);
  WireCell cell = p.wire_cell(0, 0);
  CHECK(cell.has_d);
  CHECK(cell.step_x == 2);
  CHECK(cell.gate_x == 3);
  CHECK(cell.sites.size() == 12); // 11 letter roles + g_partner
  std::set<int> distinct;
  for (const auto& [role, site] : cell.sites) distinct.insert(site);
  CHECK(distinct.size() == 12);
  // the gate vertical carries both g and its partner
  CHECK(Patch::site_edge(cell.sites.at(Role::g)) ==
        Patch::site_edge(cell.sites.at(Role::g_partner)));
  CHECK(cell.sites.at(Role::g) != cell.sites.at(Role::g_partner));
}

TEST_CASE("bottom wire of an even patch has no d edge") {
  Patch p = build_patch(2, 2);
  WireCell cell = p.wire_cell(0, 0);
  CHECK_FALSE(cell.has_d);
  CHECK(cell.sites.count(Role::d) == 0);
  CHECK(cell.sites.size() == 11);
}

TEST_CASE("wire or step out of range is an error") {
  Patch p = build_patch(5, 3); // two wires, two gate cells each
  CHECK_THROWS_AS(p.wire_cell(5, 0), error);
  CHECK_THROWS_AS(p.wire_cell(2, 0), error);
  CHECK_THROWS_AS(p.wire_cell(0, 2), error);
  CHECK_THROWS_AS(p.wire_cell(0, -1), error);
  try {
    p.wire_cell(5, 0);
  } catch (const error& e) {
    CHECK(e.code() == errc::range);
  }
}

TEST_CASE("neighbouring cells share their path edges") {
  Patch p = build_patch(3, 4);
  WireCell c0 = p.wire_cell(0, 0);
  WireCell c1 = p.wire_cell(0, 1);
  CHECK(Patch::site_edge(c0.sites.at(Role::i)) == Patch::site_edge(c1.sites.at(Role::b)));
  CHECK(c0.sites.at(Role::i) != c1.sites.at(Role::b));
  CHECK(Patch::site_edge(c0.sites.at(Role::l)) == Patch::site_edge(c1.sites.at(Role::e)));
}

TEST_CASE("coupling edge is shared between stacked wires") {
  Patch p = build_patch(5, 3);
  WireCell upper = p.wire_cell(0, 0);
  WireCell lower = p.wire_cell(1, 0);
  int ce = p.coupling_edge(0, upper.step_x);
  CHECK(ce >= 0);
  CHECK(Patch::site_edge(upper.sites.at(Role::d)) == ce);
  CHECK(Patch::site_edge(lower.sites.at(Role::a)) == ce);
  CHECK(upper.sites.at(Role::d) != lower.sites.at(Role::a));
}

TEST_CASE("wire ends cover entry and readout columns") {
  Patch p = build_patch(3, 2);
  WireEnds ends = p.wire_ends(0);
  CHECK(ends.init_h >= 0);
  CHECK(ends.init_k >= 0);
  CHECK(ends.entry_lower_far >= 0);
  CHECK(Patch::site_edge(ends.init_g) == Patch::site_edge(ends.init_g_partner));
  CHECK(Patch::site_edge(ends.read_g) == Patch::site_edge(ends.read_g_partner));
  // readout in-halves continue the last cell's out edges
  WireCell last = p.wire_cell(0, 0);
  CHECK(ends.read_h != last.sites.at(Role::i));

  Patch even = build_patch(2, 2);
  WireEnds bottom = even.wire_ends(0);
  CHECK(bottom.init_k == -1);
  CHECK(bottom.entry_lower_far == -1);
  CHECK(bottom.read_k >= 0); // lower line still reaches the readout column
}

TEST_CASE("describe reports the basic counts") {
  Patch p = build_patch(1, 1);
  auto j = p.describe_json();
  CHECK(j.find("\"qubits\":12") != std::string::npos);
  CHECK(j.find("\"plaquettes\":1") != std::string::npos);
}
