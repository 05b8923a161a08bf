#include "lattice.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "errors.hpp"

namespace snc {

const char* role_name(Role r) {
  switch (r) {
    case Role::a: return "a";
    case Role::b: return "b";
    case Role::c: return "c";
    case Role::d: return "d";
    case Role::e: return "e";
    case Role::f: return "f";
    case Role::g: return "g";
    case Role::g_partner: return "g_partner";
    case Role::h: return "h";
    case Role::i: return "i";
    case Role::k: return "k";
    case Role::l: return "l";
  }
  return "?";
}

std::optional<Role> role_from_name(const std::string& name) {
  static const std::map<std::string, Role> table = {
      {"a", Role::a}, {"b", Role::b}, {"c", Role::c}, {"d", Role::d},
      {"e", Role::e}, {"f", Role::f}, {"g", Role::g}, {"g_partner", Role::g_partner},
      {"h", Role::h}, {"i", Role::i}, {"k", Role::k}, {"l", Role::l}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

Patch::Patch(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1)
    fail(errc::invalid_argument, "patch needs at least one brick row and column");

  // Gather the geometry brick by brick, then number everything.
  std::set<Point> points;
  std::set<std::pair<Point, Point>> segments;
  std::vector<std::array<std::pair<Point, Point>, 6>> brick_segments;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int x0 = (r & 1) + 2 * c;
      std::array<std::pair<Point, Point>, 6> segs = {{
          {{x0, r}, {x0 + 1, r}},
          {{x0 + 1, r}, {x0 + 2, r}},
          {{x0, r + 1}, {x0 + 1, r + 1}},
          {{x0 + 1, r + 1}, {x0 + 2, r + 1}},
          {{x0, r}, {x0, r + 1}},
          {{x0 + 2, r}, {x0 + 2, r + 1}},
      }};
      for (const auto& s : segs) {
        points.insert(s.first);
        points.insert(s.second);
        segments.insert(s);
      }
      brick_segments.push_back(segs);
    }
  }

  points_.assign(points.begin(), points.end());
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) point_ids_[points_[i]] = i;

  std::vector<std::pair<int, int>> edge_pairs;
  edge_pairs.reserve(segments.size());
  for (const auto& [p, q] : segments) {
    int u = point_ids_.at(p);
    int v = point_ids_.at(q);
    edge_pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edge_pairs.begin(), edge_pairs.end());
  edges_.reserve(edge_pairs.size());
  for (const auto& [u, v] : edge_pairs) {
    edge_ids_[{u, v}] = static_cast<int>(edges_.size());
    edges_.push_back({u, v, points_[u].x == points_[v].x});
  }

  incidence_.resize(points_.size());
  for (int e = 0; e < edge_count(); ++e) {
    incidence_[edges_[e].u].push_back(e);
    incidence_[edges_[e].v].push_back(e);
  }
  // edge ids grow with (u, v), so each incidence list is already sorted

  for (const auto& segs : brick_segments) {
    std::array<int, 6> es{};
    for (int i = 0; i < 6; ++i) {
      int u = point_ids_.at(segs[i].first);
      int v = point_ids_.at(segs[i].second);
      es[i] = edge_ids_.at({std::min(u, v), std::max(u, v)});
    }
    std::sort(es.begin(), es.end());
    plaquettes_.push_back(es);
  }
}

const Point& Patch::vertex(int vid) const {
  if (vid < 0 || vid >= vertex_count()) fail(errc::range, "vertex id out of range");
  return points_[vid];
}

const Edge& Patch::edge(int eid) const {
  if (eid < 0 || eid >= edge_count()) fail(errc::range, "edge id out of range");
  return edges_[eid];
}

const std::vector<int>& Patch::incident_edges(int vid) const {
  if (vid < 0 || vid >= vertex_count()) fail(errc::range, "vertex id out of range");
  return incidence_[vid];
}

int Patch::vertex_at(Point p) const {
  auto it = point_ids_.find(p);
  return it == point_ids_.end() ? -1 : it->second;
}

int Patch::edge_between(int u, int v) const {
  auto it = edge_ids_.find({std::min(u, v), std::max(u, v)});
  return it == edge_ids_.end() ? -1 : it->second;
}

int Patch::horizontal_edge(int x_left, int y) const {
  int u = vertex_at({x_left, y});
  int v = vertex_at({x_left + 1, y});
  if (u < 0 || v < 0) return -1;
  return edge_between(u, v);
}

int Patch::vertical_edge(int x, int y_top) const {
  int u = vertex_at({x, y_top});
  int v = vertex_at({x, y_top + 1});
  if (u < 0 || v < 0) return -1;
  return edge_between(u, v);
}

int Patch::site_at(int eid, int vid) const {
  const Edge& e = edge(eid);
  if (e.u == vid) return site_of(eid, 0);
  if (e.v == vid) return site_of(eid, 1);
  fail(errc::internal, "site_at: vertex is not an endpoint of the edge");
}

std::vector<int> Patch::plaquette_sites(int p) const {
  if (p < 0 || p >= plaquette_count()) fail(errc::range, "plaquette id out of range");
  std::vector<int> sites;
  sites.reserve(12);
  for (int e : plaquettes_[p]) {
    sites.push_back(site_of(e, 0));
    sites.push_back(site_of(e, 1));
  }
  return sites;
}

std::vector<int> Patch::vertex_sites(int vid) const {
  std::vector<int> sites;
  for (int e : incident_edges(vid)) {
    sites.push_back(site_of(e, 0));
    sites.push_back(site_of(e, 1));
  }
  return sites;
}

std::array<int, 2> Patch::edge_sites(int eid) const {
  if (eid < 0 || eid >= edge_count()) fail(errc::range, "edge id out of range");
  return {site_of(eid, 0), site_of(eid, 1)};
}

const std::array<int, 6>& Patch::plaquette_edges(int p) const {
  if (p < 0 || p >= plaquette_count()) fail(errc::range, "plaquette id out of range");
  return plaquettes_[p];
}

int Patch::wire_upper_line(int w) const {
  if (w < 0 || w >= wire_count()) fail(errc::range, "wire index out of range");
  return 2 * w + 1;
}

int Patch::wire_lower_line(int w) const { return wire_upper_line(w) + 1; }

bool Patch::wire_has_d(int w) const {
  // The d edges of wire w are the verticals of brick row 2w+2.
  return wire_upper_line(w) + 1 <= rows_ - 1;
}

WireCell Patch::wire_cell(int w, int step) const {
  int yu = wire_upper_line(w);
  int yl = yu + 1;
  if (step < 0 || step >= gate_cells_per_wire())
    fail(errc::range, "step index out of range for this patch");

  WireCell cell;
  cell.wire = w;
  cell.step = step;
  cell.step_x = 2 * step + 2;
  cell.gate_x = 2 * step + 3;
  cell.has_d = wire_has_d(w);

  auto half_at = [&](int eid, int x, int y) {
    if (eid < 0) fail(errc::internal, "wire_cell: expected edge is missing");
    return site_at(eid, vertex_at({x, y}));
  };
  int sx = cell.step_x;
  int gx = cell.gate_x;
  cell.sites[Role::a] = half_at(vertical_edge(sx, yu - 1), sx, yu);
  cell.sites[Role::b] = half_at(horizontal_edge(sx - 1, yu), sx, yu);
  cell.sites[Role::c] = half_at(horizontal_edge(sx, yu), sx, yu);
  if (cell.has_d) cell.sites[Role::d] = half_at(vertical_edge(sx, yl), sx, yl);
  cell.sites[Role::e] = half_at(horizontal_edge(sx - 1, yl), sx, yl);
  cell.sites[Role::f] = half_at(horizontal_edge(sx, yl), sx, yl);
  int gv = vertical_edge(gx, yu);
  cell.sites[Role::g] = half_at(gv, gx, yu);
  cell.sites[Role::g_partner] = half_at(gv, gx, yl);
  cell.sites[Role::h] = half_at(horizontal_edge(gx - 1, yu), gx, yu);
  cell.sites[Role::i] = half_at(horizontal_edge(gx, yu), gx, yu);
  cell.sites[Role::k] = half_at(horizontal_edge(gx - 1, yl), gx, yl);
  cell.sites[Role::l] = half_at(horizontal_edge(gx, yl), gx, yl);
  return cell;
}

WireEnds Patch::wire_ends(int w) const {
  int yu = wire_upper_line(w);
  int yl = yu + 1;
  WireEnds ends;

  auto half_at = [&](int eid, int x, int y) {
    if (eid < 0) fail(errc::internal, "wire_ends: expected edge is missing");
    return site_at(eid, vertex_at({x, y}));
  };

  int upper_in = horizontal_edge(0, yu);
  ends.init_h = half_at(upper_in, 1, yu);
  ends.entry_upper_far = half_at(upper_in, 0, yu);
  int lower_in = horizontal_edge(0, yl);
  if (lower_in >= 0) { // absent when the lower line starts at x = 1
    ends.init_k = half_at(lower_in, 1, yl);
    ends.entry_lower_far = half_at(lower_in, 0, yl);
  }
  int gv = vertical_edge(1, yu);
  ends.init_g = half_at(gv, 1, yu);
  ends.init_g_partner = half_at(gv, 1, yl);
  ends.init_i = half_at(horizontal_edge(1, yu), 1, yu);
  ends.init_l = half_at(horizontal_edge(1, yl), 1, yl);

  int xr = 2 * cols_ + 1;
  ends.read_h = half_at(horizontal_edge(xr - 1, yu), xr, yu);
  ends.read_k = half_at(horizontal_edge(xr - 1, yl), xr, yl);
  int rv = vertical_edge(xr, yu);
  ends.read_g = half_at(rv, xr, yu);
  ends.read_g_partner = half_at(rv, xr, yl);
  return ends;
}

int Patch::coupling_edge(int w, int step_x) const {
  if (!wire_has_d(w)) return -1;
  return vertical_edge(step_x, wire_lower_line(w));
}

std::string Patch::describe_json(int indent) const {
  nlohmann::json j;
  j["rows"] = rows_;
  j["cols"] = cols_;
  j["vertices"] = vertex_count();
  j["edges"] = edge_count();
  j["qubits"] = site_count();
  j["plaquettes"] = plaquette_count();
  j["cycle_rank"] = cycle_rank();
  j["wires"] = wire_count();
  j["gate_cells_per_wire"] = gate_cells_per_wire();
  auto wires = nlohmann::json::array();
  for (int w = 0; w < wire_count(); ++w) {
    wires.push_back({{"wire", w},
                     {"upper_line", wire_upper_line(w)},
                     {"lower_line", wire_lower_line(w)},
                     {"has_d", wire_has_d(w)}});
  }
  j["wire_layout"] = wires;
  return j.dump(indent);
}

} // namespace snc
