#include <doctest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "compiler.hpp"
#include "errors.hpp"

using namespace snc;

namespace {

int count_kind(const Schedule& s, PatternKind k) {
  int n = 0;
  for (const Pattern& p : s.patterns) n += p.kind == k;
  return n;
}

int count_live_pairs(const Schedule& s) {
  int n = 0;
  for (const Pattern& p : s.patterns) n += p.cz_pair.has_value();
  return n;
}

void check_full_coverage(const Patch& patch, const Schedule& s) {
  std::set<int> seen(s.prologue.begin(), s.prologue.end());
  CHECK(seen.size() == s.prologue.size());
  for (const Pattern& pat : s.patterns)
    for (const PatternSite& ps : pat.sites) CHECK(seen.insert(ps.site).second);
  CHECK(int(seen.size()) == 2 * patch.edge_count());
}

} // namespace

TEST_CASE("capacity checks") {
  Patch p = build_patch(3, 3); // one wire, two gate cells
  CHECK_THROWS_AS(compile_circuit(p, parse_circuit("wires 2\n"), CouplingMode::live), error);
  try {
    compile_circuit(p, parse_circuit("wires 2\n"), CouplingMode::live);
  } catch (const error& e) {
    CHECK(e.code() == errc::capacity);
  }
  CHECK_THROWS_AS(
      compile_circuit(p, parse_circuit("wires 1\nrz 0 pi\nid 0\nrx 0 1\n"), CouplingMode::live),
      error);
  CHECK_NOTHROW(
      compile_circuit(p, parse_circuit("wires 1\nrz 0 pi\nid 0\n"), CouplingMode::live));
}

TEST_CASE("single wire schedule layout") {
  Patch p = build_patch(3, 3);
  Schedule s = compile_circuit(p, parse_circuit("wires 1\nrz 0 pi/4\n"), CouplingMode::live);
  CHECK(s.wires == 1);
  REQUIRE(s.cells.size() == 1);
  REQUIRE(s.cells[0].size() == 2);
  CHECK(s.cells[0][0].kind == GateKind::rz);
  CHECK(s.cells[0][1].kind == GateKind::id);

  // init, two (step + gate) pairs, epilogue, readout
  REQUIRE(s.patterns.size() == 7);
  CHECK(s.patterns[0].kind == PatternKind::init);
  CHECK(s.patterns[1].kind == PatternKind::path_step);
  CHECK(s.patterns[2].kind == PatternKind::rot_z);
  CHECK(s.patterns[2].sites[2].angle->base == doctest::Approx(M_PI / 4));
  CHECK(s.patterns[4].kind == PatternKind::rot_z);
  CHECK(s.patterns[4].sites[2].angle->base == 0.0); // padded identity
  CHECK(s.patterns[5].kind == PatternKind::path_step);
  CHECK(s.patterns[5].column == 2 * p.cols());
  CHECK(s.patterns[6].kind == PatternKind::readout);
  // columns never decrease along the schedule
  for (std::size_t i = 1; i < s.patterns.size(); ++i)
    CHECK(s.patterns[i - 1].column <= s.patterns[i].column);
  check_full_coverage(p, s);
  CHECK(s.precoupling.empty());
}

TEST_CASE("entangler placement and padding") {
  Patch p = build_patch(5, 4); // two wires, three cells
  Circuit c = parse_circuit("wires 2\nrz 0 pi/4\nrz 0 pi/4\ncz 0 1\n");
  Schedule s = compile_circuit(p, c, CouplingMode::live);
  REQUIRE(s.placements.size() == 1);
  CHECK(s.placements[0].upper_wire == 0);
  CHECK(s.placements[0].cell == 2); // padded past wire 0's rotations
  CHECK(s.placements[0].consumed);
  CHECK(s.cells[1][0].kind == GateKind::id);
  CHECK(count_kind(s, PatternKind::cz_couple) == 1);
  CHECK(count_live_pairs(s) == 1);
  CHECK(s.precoupling.empty());
  check_full_coverage(p, s);

  // the coupling column schedules one pattern spanning both wires
  for (const Pattern& pat : s.patterns)
    if (pat.kind == PatternKind::cz_couple) {
      CHECK(pat.column == 2 * 2 + 2);
      CHECK(pat.wire == 0);
      CHECK(pat.wire2 == 1);
    }
}

TEST_CASE("precoupled mode replaces live entanglers and fills free slots") {
  Patch p = build_patch(5, 4);
  Circuit c = parse_circuit("wires 2\ncz 0 1\n");
  Schedule s = compile_circuit(p, c, CouplingMode::precoupled);
  // consumed coupler at cell 0, canceling pair in the free cells 1 and 2
  REQUIRE(s.placements.size() == 3);
  CHECK(s.placements[0].consumed);
  CHECK(s.placements[0].cell == 0);
  CHECK(!s.placements[1].consumed);
  CHECK(s.placements[1].cell == 1);
  CHECK(!s.placements[2].consumed);
  CHECK(s.placements[2].cell == 2);
  CHECK(s.precoupling.size() == 3);
  CHECK(count_kind(s, PatternKind::cz_couple) == 3);
  CHECK(count_live_pairs(s) == 0); // measurement phase has no live entangler
  check_full_coverage(p, s);

  // each precoupling pair joins the two incoming halves at its column
  for (std::size_t i = 0; i < s.precoupling.size(); ++i) {
    auto [a, b] = s.precoupling[i];
    CHECK(a != b);
    CHECK(Patch::site_edge(a) != Patch::site_edge(b));
  }
}

TEST_CASE("canceling pairs respect occupied and non-identity cells") {
  Patch p = build_patch(5, 4);
  // wire 0 rotates in cell 0; only cells 1,2 are a free identity pair
  Circuit c = parse_circuit("wires 2\nrz 0 pi/4\n");
  Schedule s = compile_circuit(p, c, CouplingMode::precoupled);
  REQUIRE(s.placements.size() == 2);
  CHECK(!s.placements[0].consumed);
  CHECK(s.placements[0].cell == 1);
  CHECK(s.placements[1].cell == 2);

  // rotations everywhere leave no room at all
  Circuit busy = parse_circuit("wires 2\nrz 0 1\nrz 0 1\nrz 0 1\nrx 1 1\nrx 1 1\nrx 1 1\n");
  Schedule s2 = compile_circuit(p, busy, CouplingMode::precoupled);
  CHECK(s2.placements.empty());
  CHECK(s2.precoupling.empty());
}

TEST_CASE("unused wires stay in the prologue") {
  Patch p = build_patch(5, 3); // two wires available
  Schedule s = compile_circuit(p, parse_circuit("wires 1\nrz 0 0.5\n"), CouplingMode::live);
  CHECK(s.wires == 1);
  check_full_coverage(p, s);
  // wire 1's read-in half lives on the lower wire's lines, so it must be
  // among the unpatterned sites
  WireEnds lower = p.wire_ends(1);
  bool found = false;
  for (int site : s.prologue) found = found || site == lower.read_h;
  CHECK(found);
}

TEST_CASE("schedule json is deterministic and complete") {
  Patch p = build_patch(5, 3);
  Circuit c = parse_circuit("wires 2\nrx 0 pi/2\ncz 0 1\n");
  Schedule s = compile_circuit(p, c, CouplingMode::live);
  std::string a = s.to_json();
  std::string b = s.to_json();
  CHECK(a == b);

  nlohmann::json j = nlohmann::json::parse(a);
  CHECK(j["patch"]["rows"] == 5);
  CHECK(j["patch"]["cols"] == 3);
  CHECK(j["mode"] == "live");
  CHECK(j["wires"] == 2);
  CHECK(j["patterns"].is_array());
  CHECK(j["patterns"].size() == s.patterns.size());
  CHECK(j["prologue"].size() == s.prologue.size());
  bool saw_adaptive = false;
  for (const auto& pat : j["patterns"])
    for (const auto& site : pat["sites"])
      if (site.contains("angle")) {
        saw_adaptive = true;
        CHECK((site["angle"]["seed"] == "v" || site["angle"]["seed"] == "r"));
      }
  CHECK(saw_adaptive);

  std::string pretty = s.to_json(2);
  CHECK(pretty.find('\n') != std::string::npos);
}
