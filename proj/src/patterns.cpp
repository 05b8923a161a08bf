#include "patterns.hpp"

#include <cmath>

#include "errors.hpp"
#include "tensor.hpp"
#include "tensornet.hpp"

namespace snc {

const char* pattern_kind_name(PatternKind k) {
  switch (k) {
    case PatternKind::path_step: return "path_step";
    case PatternKind::rot_z: return "rot_z";
    case PatternKind::rot_x: return "rot_x";
    case PatternKind::cz_couple: return "cz_couple";
    case PatternKind::init: return "init";
    case PatternKind::readout: return "readout";
  }
  return "?";
}

const PatternSite* Pattern::find(int w, Role role) const {
  for (const PatternSite& ps : sites)
    if (ps.wire == w && ps.role == role) return &ps;
  return nullptr;
}

int Pattern::site_of(int w, Role role) const {
  const PatternSite* ps = find(w, role);
  if (!ps) fail(errc::internal, "pattern has no such role");
  return ps->site;
}

namespace {

// Sites of one step column (roles a..f). Valid for every even x in
// [2, 2*cols]; the last one is the epilogue column in front of readout.
std::map<Role, int> step_roles(const Patch& p, int w, int sx) {
  int yu = p.wire_upper_line(w), yl = yu + 1;
  if (sx < 2 || sx > 2 * p.cols() || sx % 2 != 0)
    fail(errc::range, "not a step column of this patch");
  auto half = [&](int eid, int x, int y) {
    if (eid < 0) fail(errc::internal, "step column edge is missing");
    return p.site_at(eid, p.vertex_at({x, y}));
  };
  std::map<Role, int> roles;
  roles[Role::a] = half(p.vertical_edge(sx, yu - 1), sx, yu);
  roles[Role::b] = half(p.horizontal_edge(sx - 1, yu), sx, yu);
  roles[Role::c] = half(p.horizontal_edge(sx, yu), sx, yu);
  if (p.wire_has_d(w)) roles[Role::d] = half(p.vertical_edge(sx, yl), sx, yl);
  roles[Role::e] = half(p.horizontal_edge(sx - 1, yl), sx, yl);
  roles[Role::f] = half(p.horizontal_edge(sx, yl), sx, yl);
  return roles;
}

PatternSite plain(int site, int wire, Role role, MeasBasis::Family family) {
  return {site, wire, role, family, std::nullopt};
}

void push_step_sites(Pattern& pat, const Patch& patch, int wire, int sx) {
  auto roles = step_roles(patch, wire, sx);
  pat.sites.push_back(plain(roles.at(Role::a), wire, Role::a, MeasBasis::Family::z));
  if (roles.count(Role::d))
    pat.sites.push_back(plain(roles.at(Role::d), wire, Role::d, MeasBasis::Family::z));
  for (Role r : {Role::b, Role::c, Role::e, Role::f})
    pat.sites.push_back(plain(roles.at(r), wire, r, MeasBasis::Family::x));
}

} // namespace

Pattern make_path_step(const Patch& patch, int wire, int step_x) {
  Pattern pat;
  pat.kind = PatternKind::path_step;
  pat.wire = wire;
  pat.step = step_x >= 2 && step_x <= 2 * (patch.cols() - 1) ? (step_x - 2) / 2 : -1;
  pat.column = step_x;
  push_step_sites(pat, patch, wire, step_x);
  return pat;
}

Pattern make_rot_z(const Patch& patch, int wire, int step, double theta) {
  WireCell cell = patch.wire_cell(wire, step);
  Pattern pat;
  pat.kind = PatternKind::rot_z;
  pat.wire = wire;
  pat.step = step;
  pat.column = cell.gate_x;
  pat.sites.push_back(plain(cell.sites.at(Role::g), wire, Role::g, MeasBasis::Family::z));
  pat.sites.push_back(
      plain(cell.sites.at(Role::g_partner), wire, Role::g_partner, MeasBasis::Family::z));
  PatternSite h = plain(cell.sites.at(Role::h), wire, Role::h, MeasBasis::Family::rot_z);
  h.angle = AngleRule{theta, AngleRule::Seed::v, {}};
  pat.sites.push_back(h);
  for (Role r : {Role::i, Role::k, Role::l})
    pat.sites.push_back(plain(cell.sites.at(r), wire, r, MeasBasis::Family::x));
  return pat;
}

Pattern make_rot_x(const Patch& patch, int wire, int step, double theta) {
  WireCell cell = patch.wire_cell(wire, step);
  Pattern pat;
  pat.kind = PatternKind::rot_x;
  pat.wire = wire;
  pat.step = step;
  pat.column = cell.gate_x;
  // the partner and both incoming halves feed the adaptive sign (their
  // byproducts land before the rotation acts), so they are measured first
  for (Role r : {Role::g_partner, Role::h, Role::k})
    pat.sites.push_back(plain(cell.sites.at(r), wire, r, MeasBasis::Family::x));
  PatternSite g = plain(cell.sites.at(Role::g), wire, Role::g, MeasBasis::Family::rot_x);
  g.angle = AngleRule{theta,
                      AngleRule::Seed::r,
                      {cell.sites.at(Role::g_partner), cell.sites.at(Role::h),
                       cell.sites.at(Role::k)}};
  pat.sites.push_back(g);
  for (Role r : {Role::i, Role::l})
    pat.sites.push_back(plain(cell.sites.at(r), wire, r, MeasBasis::Family::x));
  return pat;
}

Pattern make_cz_couple(const Patch& patch, int upper_wire, int step_x, bool live) {
  if (upper_wire + 1 >= patch.wire_count())
    fail(errc::range, "cz needs the wire below to exist");
  Pattern pat;
  pat.kind = PatternKind::cz_couple;
  pat.wire = upper_wire;
  pat.wire2 = upper_wire + 1;
  pat.step = step_x >= 2 && step_x <= 2 * (patch.cols() - 1) ? (step_x - 2) / 2 : -1;
  pat.column = step_x;
  auto up = step_roles(patch, upper_wire, step_x);
  auto dn = step_roles(patch, pat.wire2, step_x);
  // The shared vertical edge appears twice: as the upper wire's d half and
  // the lower wire's a half. Both are plain Z pins.
  pat.sites.push_back(plain(up.at(Role::a), pat.wire, Role::a, MeasBasis::Family::z));
  pat.sites.push_back(plain(up.at(Role::d), pat.wire, Role::d, MeasBasis::Family::z));
  pat.sites.push_back(plain(dn.at(Role::a), pat.wire2, Role::a, MeasBasis::Family::z));
  if (dn.count(Role::d))
    pat.sites.push_back(plain(dn.at(Role::d), pat.wire2, Role::d, MeasBasis::Family::z));
  for (int w : {pat.wire, pat.wire2}) {
    const auto& roles = w == pat.wire ? up : dn;
    for (Role r : {Role::b, Role::c, Role::e, Role::f})
      pat.sites.push_back(plain(roles.at(r), w, r, MeasBasis::Family::x));
  }
  if (live) pat.cz_pair = {up.at(Role::e), dn.at(Role::b)};
  return pat;
}

Pattern make_init(const Patch& patch, int wire) {
  WireEnds ends = patch.wire_ends(wire);
  Pattern pat;
  pat.kind = PatternKind::init;
  pat.wire = wire;
  pat.column = 1;
  auto z = MeasBasis::Family::z;
  pat.sites.push_back(plain(ends.entry_upper_far, wire, Role::b, z));
  pat.sites.push_back(plain(ends.init_h, wire, Role::h, z));
  if (ends.init_k >= 0) {
    pat.sites.push_back(plain(ends.entry_lower_far, wire, Role::e, z));
    pat.sites.push_back(plain(ends.init_k, wire, Role::k, z));
  }
  pat.sites.push_back(plain(ends.init_g, wire, Role::g, z));
  pat.sites.push_back(plain(ends.init_g_partner, wire, Role::g_partner, z));
  pat.sites.push_back(plain(ends.init_i, wire, Role::i, z));
  pat.sites.push_back(plain(ends.init_l, wire, Role::l, z));
  return pat;
}

Pattern make_readout(const Patch& patch, int wire) {
  WireEnds ends = patch.wire_ends(wire);
  Pattern pat;
  pat.kind = PatternKind::readout;
  pat.wire = wire;
  pat.column = 2 * patch.cols() + 1;
  auto z = MeasBasis::Family::z;
  pat.sites.push_back(plain(ends.read_h, wire, Role::h, z));
  pat.sites.push_back(plain(ends.read_k, wire, Role::k, z));
  pat.sites.push_back(plain(ends.read_g, wire, Role::g, z));
  pat.sites.push_back(plain(ends.read_g_partner, wire, Role::g_partner, z));
  return pat;
}

namespace {

int out_of(const Pattern& pat, const std::map<int, int>& outcomes, int wire, Role role,
           int absent = 0) {
  const PatternSite* ps = pat.find(wire, role);
  if (!ps) return absent;
  auto it = outcomes.find(ps->site);
  if (it == outcomes.end()) fail(errc::invalid_argument, "missing outcome for pattern site");
  return it->second;
}

void apply_step_update(const Pattern& pat, const std::map<int, int>& outcomes, int wire,
                       PauliFrame& f) {
  int a = out_of(pat, outcomes, wire, Role::a);
  int d = out_of(pat, outcomes, wire, Role::d);
  f.v ^= a;
  f.enc ^= a ^ d;
  f.r ^= out_of(pat, outcomes, wire, Role::b) ^ out_of(pat, outcomes, wire, Role::c) ^
         out_of(pat, outcomes, wire, Role::e) ^ out_of(pat, outcomes, wire, Role::f);
}

} // namespace

void apply_frame_update(const Pattern& pat, const std::map<int, int>& outcomes,
                        std::vector<PauliFrame>& frames) {
  if (pat.wire < 0 || pat.wire >= static_cast<int>(frames.size()))
    fail(errc::range, "frame index out of range");
  PauliFrame& f = frames[pat.wire];
  switch (pat.kind) {
    case PatternKind::path_step:
      apply_step_update(pat, outcomes, pat.wire, f);
      return;
    case PatternKind::rot_z:
    case PatternKind::rot_x:
      f.v ^= out_of(pat, outcomes, pat.wire, Role::g);
      f.r ^= out_of(pat, outcomes, pat.wire, Role::h) ^
             out_of(pat, outcomes, pat.wire, Role::i) ^
             out_of(pat, outcomes, pat.wire, Role::k) ^
             out_of(pat, outcomes, pat.wire, Role::l);
      return;
    case PatternKind::cz_couple: {
      if (pat.wire2 < 0 || pat.wire2 >= static_cast<int>(frames.size()))
        fail(errc::range, "frame index out of range");
      PauliFrame& f2 = frames[pat.wire2];
      // byproducts push through the entangler, and a type-II upper wire
      // shifts the coupling onto the flipped lower-path bit
      int vu = f.v, vl = f2.v, enc_u = f.enc;
      f.r ^= vl;
      f2.r ^= vu ^ enc_u;
      apply_step_update(pat, outcomes, pat.wire, f);
      apply_step_update(pat, outcomes, pat.wire2, f2);
      return;
    }
    case PatternKind::init: {
      int h = out_of(pat, outcomes, pat.wire, Role::h);
      int g = out_of(pat, outcomes, pat.wire, Role::g);
      int k = out_of(pat, outcomes, pat.wire, Role::k);
      f.v = h ^ g;
      f.r = 0;
      f.enc = h ^ k; // k reads 0 when the lower line starts pinned
      return;
    }
    case PatternKind::readout:
      return; // nothing after the terminal column
  }
}

int readout_decode(const Pattern& pat, const std::map<int, int>& outcomes,
                   const PauliFrame& frame) {
  int h = out_of(pat, outcomes, pat.wire, Role::h);
  int k = out_of(pat, outcomes, pat.wire, Role::k);
  int g = out_of(pat, outcomes, pat.wire, Role::g);
  int gp = out_of(pat, outcomes, pat.wire, Role::g_partner);
  if (g != h || gp != h || k != h || frame.enc != 0)
    fail(errc::verification, "readout outcomes are inconsistent");
  return h ^ frame.v;
}

Mat ideal_rz(double theta) {
  Mat m(2, 2);
  m.at(0, 0) = std::exp(cx{0.0, -theta / 2});
  m.at(1, 1) = std::exp(cx{0.0, theta / 2});
  return m;
}

Mat ideal_rx(double theta) {
  Mat m(2, 2);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m.at(0, 0) = c;
  m.at(1, 1) = c;
  m.at(0, 1) = cx{0.0, -s};
  m.at(1, 0) = cx{0.0, -s};
  return m;
}

Mat ideal_cz() {
  Mat m = Mat::identity(4);
  m.at(3, 3) = -1.0;
  return m;
}

Mat logical_byproduct(const PauliFrame& f) {
  Mat m = Mat::identity(2);
  if (f.r) {
    m.at(1, 1) = -m.at(1, 1);
  }
  if (f.v) {
    std::swap(m.a[0], m.a[2]);
    std::swap(m.a[1], m.a[3]);
  }
  return m;
}

Mat bond_embedding(int enc) {
  // bond index: bit 0 the upper path, bit 1 the lower path
  Mat m(4, 2);
  for (int a = 0; a < 2; ++a) m.at(a | ((a ^ enc) << 1), a) = 1.0;
  return m;
}

namespace {

struct FragmentSpec {
  std::vector<int> vertices;
  std::vector<int> in_edges;  // bond order: wire upper, wire lower, wire2 ...
  std::vector<int> out_edges;
  std::vector<std::pair<int, int>> transverse; // (edge, site pinning it)
};

void add_column_vertices(const Patch& p, int yu, int x, FragmentSpec& spec) {
  spec.vertices.push_back(p.vertex_at({x, yu}));
  spec.vertices.push_back(p.vertex_at({x, yu + 1}));
}

FragmentSpec fragment_for(const Patch& p, const Pattern& pat) {
  FragmentSpec spec;
  int yu = p.wire_upper_line(pat.wire), yl = yu + 1;
  int x = pat.column;
  switch (pat.kind) {
    case PatternKind::path_step:
    case PatternKind::cz_couple: {
      add_column_vertices(p, yu, x, spec);
      spec.in_edges = {p.horizontal_edge(x - 1, yu), p.horizontal_edge(x - 1, yl)};
      spec.out_edges = {p.horizontal_edge(x, yu), p.horizontal_edge(x, yl)};
      spec.transverse.emplace_back(p.vertical_edge(x, yu - 1), pat.site_of(pat.wire, Role::a));
      if (pat.kind == PatternKind::path_step) {
        if (pat.find(pat.wire, Role::d))
          spec.transverse.emplace_back(p.vertical_edge(x, yl), pat.site_of(pat.wire, Role::d));
        break;
      }
      int yu2 = p.wire_upper_line(pat.wire2), yl2 = yu2 + 1;
      add_column_vertices(p, yu2, x, spec);
      spec.in_edges.push_back(p.horizontal_edge(x - 1, yu2));
      spec.in_edges.push_back(p.horizontal_edge(x - 1, yl2));
      spec.out_edges.push_back(p.horizontal_edge(x, yu2));
      spec.out_edges.push_back(p.horizontal_edge(x, yl2));
      if (pat.find(pat.wire2, Role::d))
        spec.transverse.emplace_back(p.vertical_edge(x, yl2), pat.site_of(pat.wire2, Role::d));
      break;
    }
    case PatternKind::rot_z:
    case PatternKind::rot_x:
      add_column_vertices(p, yu, x, spec);
      spec.in_edges = {p.horizontal_edge(x - 1, yu), p.horizontal_edge(x - 1, yl)};
      spec.out_edges = {p.horizontal_edge(x, yu), p.horizontal_edge(x, yl)};
      break;
    case PatternKind::init: {
      // The x = 0 vertices stay outside: their spacer qubits belong to the
      // boundary cleanup, so the entry edges enter as pinned stubs instead.
      add_column_vertices(p, yu, 1, spec);
      spec.out_edges = {p.horizontal_edge(1, yu), p.horizontal_edge(1, yl)};
      spec.transverse.emplace_back(p.horizontal_edge(0, yu), pat.site_of(pat.wire, Role::h));
      if (pat.find(pat.wire, Role::k))
        spec.transverse.emplace_back(p.horizontal_edge(0, yl), pat.site_of(pat.wire, Role::k));
      break;
    }
    case PatternKind::readout:
      add_column_vertices(p, yu, x, spec);
      spec.in_edges = {p.horizontal_edge(x - 1, yu), p.horizontal_edge(x - 1, yl)};
      break;
  }
  for (int v : spec.vertices)
    if (v < 0) fail(errc::internal, "fragment vertex is missing");
  for (int e : spec.in_edges)
    if (e < 0) fail(errc::internal, "fragment bond edge is missing");
  for (int e : spec.out_edges)
    if (e < 0) fail(errc::internal, "fragment bond edge is missing");
  return spec;
}

MeasBasis site_basis(const PatternSite& ps, int sign) {
  switch (ps.family) {
    case MeasBasis::Family::z: return MeasBasis::Z();
    case MeasBasis::Family::x: return MeasBasis::X();
    case MeasBasis::Family::rot_z: return MeasBasis::RotZ(sign * ps.angle->base);
    case MeasBasis::Family::rot_x: return MeasBasis::RotX(sign * ps.angle->base);
  }
  fail(errc::internal, "unknown basis family");
}

// Induced bond operator of one outcome branch, with the rotated site (if
// any) measured at sign * base angle.
Mat branch_operator(const Patch& p, const Pattern& pat, const FragmentSpec& spec,
                    const std::map<int, int>& outcomes, int sign) {
  std::map<int, std::array<cx, 2>> bras;
  for (const PatternSite& ps : pat.sites) {
    if (pat.cz_pair && (ps.site == pat.cz_pair->first || ps.site == pat.cz_pair->second))
      continue; // folded after the entangling phase
    bras[ps.site] = measurement_bra(site_basis(ps, sign), outcomes.at(ps.site));
  }
  std::map<int, int> pins;
  for (const auto& [edge, site] : spec.transverse) pins[edge] = outcomes.at(site);

  Tensor t = contract_region(p, spec.vertices, bras, pins);
  if (pat.cz_pair) {
    auto [sa, sb] = *pat.cz_pair;
    apply_cz_phase(t, sa, sb);
    for (int s : {sa, sb}) {
      const PatternSite* ps = nullptr;
      for (const PatternSite& cand : pat.sites)
        if (cand.site == s) ps = &cand;
      t = t.contract_leg(s, measurement_bra(site_basis(*ps, sign), outcomes.at(s)));
    }
  }
  std::vector<int> rows, cols;
  for (int e : spec.out_edges) rows.push_back(virtual_leg(e));
  for (int e : spec.in_edges) cols.push_back(virtual_leg(e));
  return mat_from_tensor(t, rows, cols);
}

Mat ideal_gate(const Pattern& pat) {
  switch (pat.kind) {
    case PatternKind::rot_z: {
      const PatternSite* ps = pat.find(pat.wire, Role::h);
      return ideal_rz(ps->angle->base);
    }
    case PatternKind::rot_x: {
      const PatternSite* ps = pat.find(pat.wire, Role::g);
      return ideal_rx(ps->angle->base);
    }
    case PatternKind::cz_couple: return ideal_cz();
    default: return Mat::identity(2);
  }
}

} // namespace

Mat pattern_branch_operator(const Patch& patch, const Pattern& pat,
                            const std::map<int, int>& outcomes, int theta_sign) {
  return branch_operator(patch, pat, fragment_for(patch, pat), outcomes, theta_sign);
}

namespace {

int rule_sign(const AngleRule& rule, const PauliFrame& f, const std::map<int, int>& outcomes) {
  int bit = 0;
  if (rule.seed == AngleRule::Seed::v) bit ^= f.v;
  if (rule.seed == AngleRule::Seed::r) bit ^= f.r;
  for (int s : rule.sites) bit ^= outcomes.at(s);
  return bit ? -1 : 1;
}

} // namespace

PatternCheck verify_pattern(const Patch& patch, const Pattern& pat, double tol) {
  PatternCheck check;
  FragmentSpec spec = fragment_for(patch, pat);
  int n = static_cast<int>(pat.sites.size());
  if (n > 16) fail(errc::resource_limit, "pattern too large to enumerate");

  const PatternSite* adaptive = nullptr;
  for (const PatternSite& ps : pat.sites)
    if (ps.angle) adaptive = &ps;

  bool two_wires = pat.kind == PatternKind::cz_couple;
  int frame_combos = pat.kind == PatternKind::init      ? 1
                     : pat.kind == PatternKind::readout ? 4 // v, r only; enc stays 0
                     : two_wires                        ? 64
                                                        : 8;

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::map<int, int> outcomes;
    for (int i = 0; i < n; ++i) outcomes[pat.sites[i].site] = (mask >> i) & 1;

    Mat plus = branch_operator(patch, pat, spec, outcomes, +1);
    Mat minus = adaptive ? branch_operator(patch, pat, spec, outcomes, -1) : plus;
    if (plus.norm() < tol && minus.norm() < tol) {
      ++check.zero_branches;
      continue;
    }

    for (int fc = 0; fc < frame_combos; ++fc) {
      std::vector<PauliFrame> frames(patch.wire_count());
      if (pat.kind == PatternKind::readout) {
        frames[pat.wire] = {fc & 1, (fc >> 1) & 1, 0};
      } else if (pat.kind != PatternKind::init) {
        frames[pat.wire] = {fc & 1, (fc >> 1) & 1, (fc >> 2) & 1};
        if (two_wires) frames[pat.wire2] = {(fc >> 3) & 1, (fc >> 4) & 1, (fc >> 5) & 1};
      }
      std::vector<PauliFrame> updated = frames;
      apply_frame_update(pat, outcomes, updated);

      const Mat& O = adaptive && rule_sign(*adaptive->angle, frames[pat.wire], outcomes) < 0
                         ? minus
                         : plus;

      Mat actual, expected;
      if (pat.kind == PatternKind::init) {
        Mat logical_zero(2, 1);
        logical_zero.at(0, 0) = 1.0;
        actual = O; // 4x1 column, no incoming bond
        expected = bond_embedding(updated[pat.wire].enc) *
                   logical_byproduct(updated[pat.wire]) * logical_zero;
      } else if (pat.kind == PatternKind::readout) {
        actual = O * bond_embedding(frames[pat.wire].enc) *
                 logical_byproduct(frames[pat.wire]); // 1x2 row
        if (actual.norm() < tol) {
          continue; // this bond subspace never reaches the branch
        }
        int decoded = readout_decode(pat, outcomes, frames[pat.wire]);
        expected = Mat(1, 2);
        expected.at(0, decoded) = 1.0;
      } else if (!two_wires) {
        actual = O * bond_embedding(frames[pat.wire].enc) *
                 logical_byproduct(frames[pat.wire]);
        expected = bond_embedding(updated[pat.wire].enc) *
                   logical_byproduct(updated[pat.wire]) * ideal_gate(pat);
      } else {
        Mat embed_in = bond_embedding(frames[pat.wire2].enc).kron(
            bond_embedding(frames[pat.wire].enc));
        Mat embed_out = bond_embedding(updated[pat.wire2].enc).kron(
            bond_embedding(updated[pat.wire].enc));
        Mat byp_in =
            logical_byproduct(frames[pat.wire2]).kron(logical_byproduct(frames[pat.wire]));
        Mat byp_out = logical_byproduct(updated[pat.wire2])
                          .kron(logical_byproduct(updated[pat.wire]));
        actual = O * embed_in * byp_in;
        expected = embed_out * byp_out * ideal_gate(pat);
      }

      double res = proportional_residual(actual, expected);
      check.max_residual = std::max(check.max_residual, res);
      ++check.branches;
      if (!proportional(actual, expected, tol)) {
        check.pass = false;
        if (check.detail.empty())
          check.detail = std::string(pattern_kind_name(pat.kind)) + " branch " +
                         std::to_string(mask) + " frame " + std::to_string(fc) +
                         " residual " + std::to_string(res);
      }
    }
  }
  return check;
}

} // namespace snc
