#include "compiler.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace snc {

const char* coupling_mode_name(CouplingMode m) {
  return m == CouplingMode::live ? "live" : "precoupled";
}

namespace {

struct CzGrid {
  std::set<std::pair<int, int>> busy; // (wire, cell) column taken by a coupler

  bool free_at(int wire, int cell) const { return !busy.count({wire, cell}); }
  void take(int upper_wire, int cell) {
    busy.insert({upper_wire, cell});
    busy.insert({upper_wire + 1, cell});
  }
};

std::pair<int, int> coupler_sites(const Patch& patch, int upper_wire, int cell) {
  Pattern probe = make_cz_couple(patch, upper_wire, 2 * cell + 2, true);
  return *probe.cz_pair;
}

} // namespace

Schedule compile_circuit(const Patch& patch, const Circuit& c, CouplingMode mode) {
  Schedule s;
  s.rows = patch.rows();
  s.cols = patch.cols();
  s.wires = c.wires;
  s.mode = mode;

  if (c.wires > patch.wire_count())
    fail(errc::capacity, "circuit uses " + std::to_string(c.wires) + " wires but a " +
                             std::to_string(s.rows) + "x" + std::to_string(s.cols) +
                             " patch provides " + std::to_string(patch.wire_count()));
  int cells = patch.gate_cells_per_wire();
  std::vector<int> depth = wire_depths(c);
  for (int w = 0; w < c.wires; ++w)
    if (depth[w] > cells)
      fail(errc::capacity, "wire " + std::to_string(w) + " needs " + std::to_string(depth[w]) +
                               " gate cells but the patch provides " + std::to_string(cells));

  s.cells.assign(c.wires, std::vector<CellOp>(cells));
  CzGrid grid;
  std::vector<int> next(c.wires, 0);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::cz) {
      int slot = std::max(next[g.q1], next[g.q2]);
      int upper = std::min(g.q1, g.q2);
      s.placements.push_back({upper, slot, true});
      grid.take(upper, slot);
      next[g.q1] = slot + 1;
      next[g.q2] = slot + 1;
    } else {
      s.cells[g.q1][next[g.q1]++] = {g.kind, g.angle};
    }
  }

  if (mode == CouplingMode::precoupled) {
    // Fill free identity slots with canceling coupler pairs: two couplers
    // one cell apart with nothing but identities in between multiply out to
    // the identity on the logical pair.
    for (int w = 0; w + 1 < c.wires; ++w) {
      for (int t = 0; t + 1 < cells; ++t) {
        bool ok = true;
        for (int tt : {t, t + 1})
          ok = ok && grid.free_at(w, tt) && grid.free_at(w + 1, tt) &&
               s.cells[w][tt].kind == GateKind::id && s.cells[w + 1][tt].kind == GateKind::id;
        if (!ok) continue;
        s.placements.push_back({w, t, false});
        s.placements.push_back({w, t + 1, false});
        grid.take(w, t);
        grid.take(w, t + 1);
        ++t; // the pair claims both columns
      }
    }
    std::sort(s.placements.begin(), s.placements.end(),
              [](const CzPlacement& a, const CzPlacement& b) {
                return std::tie(a.cell, a.upper_wire) < std::tie(b.cell, b.upper_wire);
              });
    for (const CzPlacement& pl : s.placements)
      s.precoupling.push_back(coupler_sites(patch, pl.upper_wire, pl.cell));
  }

  for (int w = 0; w < c.wires; ++w) s.patterns.push_back(make_init(patch, w));
  for (int t = 0; t < cells; ++t) {
    int step_x = 2 * t + 2;
    std::set<int> coupled;
    for (const CzPlacement& pl : s.placements)
      if (pl.cell == t) {
        coupled.insert(pl.upper_wire);
        coupled.insert(pl.upper_wire + 1);
      }
    for (int w = 0; w < c.wires; ++w) {
      bool is_upper = false;
      for (const CzPlacement& pl : s.placements)
        is_upper = is_upper || (pl.cell == t && pl.upper_wire == w);
      if (is_upper)
        s.patterns.push_back(make_cz_couple(patch, w, step_x, mode == CouplingMode::live));
      else if (!coupled.count(w))
        s.patterns.push_back(make_path_step(patch, w, step_x));
    }
    for (int w = 0; w < c.wires; ++w) {
      const CellOp& op = s.cells[w][t];
      if (op.kind == GateKind::rx)
        s.patterns.push_back(make_rot_x(patch, w, t, op.angle));
      else
        s.patterns.push_back(make_rot_z(patch, w, t, op.kind == GateKind::rz ? op.angle : 0.0));
    }
  }
  for (int w = 0; w < c.wires; ++w)
    s.patterns.push_back(make_path_step(patch, w, 2 * patch.cols()));
  for (int w = 0; w < c.wires; ++w) s.patterns.push_back(make_readout(patch, w));

  std::set<int> covered;
  for (const Pattern& pat : s.patterns)
    for (const PatternSite& ps : pat.sites) {
      if (!covered.insert(ps.site).second)
        fail(errc::internal, "schedule measures a site twice");
    }
  for (int site = 0; site < 2 * patch.edge_count(); ++site)
    if (!covered.count(site)) s.prologue.push_back(site);

  return s;
}

namespace {

nlohmann::json pattern_json(const Pattern& pat) {
  nlohmann::json j;
  j["kind"] = pattern_kind_name(pat.kind);
  j["wire"] = pat.wire;
  if (pat.wire2 >= 0) j["wire2"] = pat.wire2;
  if (pat.step >= 0) j["cell"] = pat.step;
  j["column"] = pat.column;
  if (pat.cz_pair) j["cz_pair"] = {pat.cz_pair->first, pat.cz_pair->second};
  nlohmann::json sites = nlohmann::json::array();
  for (const PatternSite& ps : pat.sites) {
    nlohmann::json sj;
    sj["site"] = ps.site;
    sj["wire"] = ps.wire;
    sj["role"] = role_name(ps.role);
    switch (ps.family) {
      case MeasBasis::Family::z: sj["basis"] = "z"; break;
      case MeasBasis::Family::x: sj["basis"] = "x"; break;
      case MeasBasis::Family::rot_z: sj["basis"] = "rot_z"; break;
      case MeasBasis::Family::rot_x: sj["basis"] = "rot_x"; break;
    }
    if (ps.angle) {
      sj["angle"]["base"] = ps.angle->base;
      sj["angle"]["seed"] = ps.angle->seed == AngleRule::Seed::v   ? "v"
                            : ps.angle->seed == AngleRule::Seed::r ? "r"
                                                                   : "none";
      sj["angle"]["sites"] = ps.angle->sites;
    }
    sites.push_back(sj);
  }
  j["sites"] = sites;
  return j;
}

} // namespace

std::string Schedule::to_json(int indent) const {
  nlohmann::json j;
  j["patch"]["rows"] = rows;
  j["patch"]["cols"] = cols;
  j["mode"] = coupling_mode_name(mode);
  j["wires"] = wires;
  j["prologue"] = prologue;
  nlohmann::json pats = nlohmann::json::array();
  for (const Pattern& pat : patterns) pats.push_back(pattern_json(pat));
  j["patterns"] = pats;
  nlohmann::json pls = nlohmann::json::array();
  for (const CzPlacement& pl : placements)
    pls.push_back({{"upper_wire", pl.upper_wire},
                   {"cell", pl.cell},
                   {"consumed", pl.consumed}});
  j["placements"] = pls;
  nlohmann::json pre = nlohmann::json::array();
  for (const auto& [a, b] : precoupling) pre.push_back({a, b});
  j["precoupling"] = pre;
  return j.dump(indent);
}

} // namespace snc
