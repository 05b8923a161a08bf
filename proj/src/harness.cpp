#include "harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <utility>

#include "errors.hpp"
#include "oracle.hpp"

namespace snc {
namespace {

// Frontier amplitudes, sparse over line-occupation bitmasks: sorted by mask,
// zero entries dropped. Bit y is the occupation of the horizontal edge
// currently crossing line y.
using Frontier = std::vector<std::pair<int, cx>>;

cx frontier_inner(const Frontier& a, const Frontier& b) {
  cx s = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

// Outcome history as a shared chain so branching columns copy O(1) state.
struct OutcomeNode {
  std::shared_ptr<const OutcomeNode> parent;
  std::vector<std::pair<int, int>> column; // (site, outcome)
};

std::map<int, int> materialize(const std::shared_ptr<const OutcomeNode>& trail) {
  std::map<int, int> out;
  for (const OutcomeNode* n = trail.get(); n; n = n->parent.get())
    for (const auto& [site, o] : n->column) out.emplace(site, o);
  return out;
}

// How one site is measured, resolved against the schedule.
struct SiteRule {
  MeasBasis::Family family = MeasBasis::Family::z;
  const AngleRule* angle = nullptr; // rot families only
  int pattern = -1;                 // -1 for prologue pins
  int order = 0;                    // position within its pattern
};

// A site anchored at the current column. Its qubit value in a configuration
// is the parity of the incoming line bits under line_mask xor the vertical
// bits under vert_mask.
struct ColSite {
  int site = -1;
  int line_mask = 0;
  int vert_mask = 0;
};

struct ColumnPlan {
  int x = 0;
  struct VertexLine {
    int y = 0;
    bool has_out = false;
    int vert_j = -1; // index into vert_edges of the vertical at this vertex
  };
  std::vector<VertexLine> vertices;
  int vertex_line_mask = 0;
  std::vector<int> vert_edges;              // vertical edge ids, top down
  std::vector<ColSite> zsites;              // pinned bases, outcome = value
  std::vector<ColSite> xsites;              // branching bases, pattern order
  unsigned plain_mask = 0;                  // xsites bits with a plain x basis
  std::vector<int> rot_slots;               // xsites indices with rot bases
  double xscale = 1.0;                      // product of the plain 1/sqrt(2)
  std::vector<std::pair<int, int>> cz_pairs; // line pairs picking up a -1
  std::vector<int> completed;               // pattern indices ending here
  bool has_readout = false;
  bool straddles = false; // some site's pattern completes in a later column
};

struct EnginePlan {
  int lines = 0;
  int last_x = 0;
  std::vector<SiteRule> rules; // per site
  std::vector<ColumnPlan> columns;
};

int site_value(const ColSite& cs, int zin, int vm) {
  return (std::popcount(unsigned(zin & cs.line_mask)) ^
          std::popcount(unsigned(vm & cs.vert_mask))) & 1;
}

int anchor_vertex(const Patch& patch, int site) {
  const Edge& e = patch.edge(Patch::site_edge(site));
  return Patch::site_half(site) == 0 ? e.u : e.v;
}

EnginePlan build_plan(const Patch& patch, const Schedule& schedule) {
  if (schedule.rows != patch.rows() || schedule.cols != patch.cols())
    fail(errc::invalid_argument, "schedule was compiled for a different patch");
  EnginePlan plan;
  plan.lines = patch.rows() + 1;
  if (plan.lines > 20)
    fail(errc::resource_limit, "patch has too many lines for the column sweep");
  plan.last_x = 2 * patch.cols() + 1;

  plan.rules.resize(patch.site_count());
  std::vector<int> owner(patch.site_count(), -2);
  for (int s : schedule.prologue) {
    if (s < 0 || s >= patch.site_count())
      fail(errc::invalid_argument, "prologue site out of range");
    owner[s] = -1;
  }
  for (size_t pi = 0; pi < schedule.patterns.size(); ++pi) {
    const Pattern& pat = schedule.patterns[pi];
    for (size_t j = 0; j < pat.sites.size(); ++j) {
      const PatternSite& ps = pat.sites[j];
      if (ps.site < 0 || ps.site >= patch.site_count())
        fail(errc::invalid_argument, "pattern site out of range");
      if (owner[ps.site] != -2)
        fail(errc::invalid_argument, "schedule measures a site twice");
      owner[ps.site] = static_cast<int>(pi);
      SiteRule& r = plan.rules[ps.site];
      r.family = ps.family;
      r.angle = ps.angle ? &*ps.angle : nullptr;
      r.pattern = static_cast<int>(pi);
      r.order = static_cast<int>(j);
    }
  }
  for (int s = 0; s < patch.site_count(); ++s)
    if (owner[s] == -2)
      fail(errc::invalid_argument, "schedule leaves a site unmeasured");

  // Every pattern ends at the largest column any of its sites touches.
  std::vector<int> done(schedule.patterns.size(), 0);
  for (size_t pi = 0; pi < schedule.patterns.size(); ++pi)
    for (const PatternSite& ps : schedule.patterns[pi].sites)
      done[pi] = std::max(done[pi],
                          patch.vertex(anchor_vertex(patch, ps.site)).x);

  plan.columns.resize(plan.last_x + 1);
  for (int x = 0; x <= plan.last_x; ++x) {
    ColumnPlan& col = plan.columns[x];
    col.x = x;
    for (int yt = 0; yt + 1 <= patch.rows(); ++yt)
      if (patch.vertical_edge(x, yt) >= 0)
        col.vert_edges.push_back(patch.vertical_edge(x, yt));

    struct Raw {
      ColSite cs;
      int pattern = -1;
      int order = 0;
      MeasBasis::Family family = MeasBasis::Family::z;
    };
    std::vector<Raw> raw;
    for (int y = 0; y <= patch.rows(); ++y) {
      int vid = patch.vertex_at({x, y});
      if (vid < 0) continue;
      ColumnPlan::VertexLine vl;
      vl.y = y;
      vl.has_out = patch.horizontal_edge(x, y) >= 0;
      for (size_t j = 0; j < col.vert_edges.size(); ++j) {
        const Edge& ve = patch.edge(col.vert_edges[j]);
        if (ve.u == vid || ve.v == vid) vl.vert_j = static_cast<int>(j);
      }
      col.vertex_line_mask |= 1 << y;

      for (int eid : patch.incident_edges(vid)) {
        int s = patch.site_at(eid, vid);
        const Edge& e = patch.edge(eid);
        Raw r;
        r.cs.site = s;
        if (e.vertical) {
          for (size_t j = 0; j < col.vert_edges.size(); ++j)
            if (col.vert_edges[j] == eid) r.cs.vert_mask = 1 << j;
          if (!r.cs.vert_mask) fail(errc::internal, "vertical edge not at its column");
        } else {
          int other = e.u == vid ? e.v : e.u;
          r.cs.line_mask = 1 << y;
          if (patch.vertex(other).x > x && vl.vert_j >= 0)
            r.cs.vert_mask = 1 << vl.vert_j; // outgoing half reads z_out
        }
        const SiteRule& sr = plan.rules[s];
        r.pattern = sr.pattern;
        r.order = sr.order;
        r.family = sr.family;
        raw.push_back(r);
      }
      col.vertices.push_back(vl);
    }

    std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
      if (a.pattern != b.pattern) return a.pattern < b.pattern;
      if (a.order != b.order) return a.order < b.order;
      return a.cs.site < b.cs.site;
    });
    for (const Raw& r : raw) {
      if (r.family == MeasBasis::Family::z) {
        col.zsites.push_back(r.cs);
      } else {
        unsigned j = static_cast<unsigned>(col.xsites.size());
        if (r.family == MeasBasis::Family::x) {
          col.plain_mask |= 1u << j;
          col.xscale *= M_SQRT1_2;
        } else {
          col.rot_slots.push_back(static_cast<int>(j));
        }
        col.xsites.push_back(r.cs);
      }
      if (r.pattern >= 0 && done[r.pattern] > x) col.straddles = true;
    }
    if (col.zsites.size() > 62 || col.xsites.size() > 24)
      fail(errc::resource_limit, "too many sites in one column");
  }

  for (size_t pi = 0; pi < schedule.patterns.size(); ++pi) {
    ColumnPlan& col = plan.columns[done[pi]];
    col.completed.push_back(static_cast<int>(pi));
    if (schedule.patterns[pi].kind == PatternKind::readout) col.has_readout = true;
  }

  // Entangler phases: live pairs from the patterns plus every state-prep
  // coupler. Both sites must be incoming halves of the same column.
  std::vector<std::pair<int, int>> pairs = schedule.precoupling;
  for (const Pattern& pat : schedule.patterns)
    if (pat.cz_pair) pairs.push_back(*pat.cz_pair);
  for (auto [s1, s2] : pairs) {
    int v1 = anchor_vertex(patch, s1);
    int v2 = anchor_vertex(patch, s2);
    const Point& p1 = patch.vertex(v1);
    const Point& p2 = patch.vertex(v2);
    if (p1.x != p2.x || patch.edge(Patch::site_edge(s1)).vertical ||
        patch.edge(Patch::site_edge(s2)).vertical)
      fail(errc::internal, "coupler pair is not a pair of incoming halves");
    plan.columns[p1.x].cz_pairs.push_back({p1.y, p2.y});
  }
  return plan;
}

// One branch class mid-sweep.
struct Cls {
  Frontier F;
  double norm2 = 1.0;
  double wsum = 1.0; // sum of squared proportionality factors of members
  double mult = 1;   // branches folded in
  std::vector<PauliFrame> frames;
  std::vector<int> decoded; // per wire, -1 until read out
  std::map<int, int> pending; // outcomes of patterns still in flight
  std::shared_ptr<const OutcomeNode> trail;
};

Cls initial_class(const Schedule& schedule) {
  Cls c;
  c.F = {{0, cx{1.0, 0.0}}};
  c.frames.assign(schedule.wires, PauliFrame{});
  c.decoded.assign(schedule.wires, -1);
  return c;
}

std::uint64_t pack_state(const Cls& c) {
  std::uint64_t k = 0;
  for (size_t w = 0; w < c.frames.size(); ++w) {
    std::uint64_t bits = std::uint64_t(c.frames[w].v) | std::uint64_t(c.frames[w].r) << 1 |
                         std::uint64_t(c.frames[w].enc) << 2 |
                         std::uint64_t(c.decoded[w] + 1) << 3;
    k |= bits << (5 * w);
  }
  return k;
}

void unpack_state(std::uint64_t k, Cls& c) {
  for (size_t w = 0; w < c.frames.size(); ++w) {
    std::uint64_t bits = k >> (5 * w);
    c.frames[w] = {int(bits & 1), int(bits >> 1 & 1), int(bits >> 2 & 1)};
    c.decoded[w] = int(bits >> 3 & 3) - 1;
  }
}

// Frame/decode bookkeeping for one candidate, the direct way: merge the
// column outcomes into the pending pool and run every pattern that ends at
// this column.
void settle_column(const Schedule& schedule, const ColumnPlan& col,
                   const EnginePlan& plan, Cls& c,
                   const std::vector<std::pair<int, int>>& col_outcomes) {
  for (const auto& [site, o] : col_outcomes)
    if (plan.rules[site].pattern >= 0) c.pending[site] = o;
  for (int pi : col.completed) {
    const Pattern& pat = schedule.patterns[pi];
    if (pat.kind == PatternKind::readout)
      c.decoded[pat.wire] = readout_decode(pat, c.pending, c.frames[pat.wire]);
    else
      apply_frame_update(pat, c.pending, c.frames);
    for (const PatternSite& ps : pat.sites) c.pending.erase(ps.site);
  }
}

// The frame updates are xor-affine in the outcomes for every pattern this
// library emits. Probe that structure once per (class, column) so the hot
// loop can fold outcome bits with a handful of xors; verify the probe on a
// couple of mixed combinations and fall back to settle_column if anything
// disagrees. Columns with readouts or patterns that keep running past the
// column always take the direct path.
struct UpdateModel {
  bool fast = false;
  std::uint64_t base = 0;
  std::vector<std::uint64_t> delta_z, delta_x;
};

UpdateModel probe_updates(const Schedule& schedule, const ColumnPlan& col,
                          const EnginePlan& plan, const Cls& parent) {
  UpdateModel m;
  if (col.has_readout || col.straddles || !parent.pending.empty()) return m;

  auto packed_after = [&](auto fill) -> std::uint64_t {
    Cls probe;
    probe.frames = parent.frames;
    probe.decoded = parent.decoded;
    std::vector<std::pair<int, int>> outs;
    for (const ColSite& cs : col.zsites) outs.push_back({cs.site, 0});
    for (const ColSite& cs : col.xsites) outs.push_back({cs.site, 0});
    fill(outs);
    settle_column(schedule, col, plan, probe, outs);
    if (!probe.pending.empty()) fail(errc::internal, "pattern outcomes left over");
    return pack_state(probe);
  };

  m.base = packed_after([](auto&) {});
  size_t nz = col.zsites.size(), nx = col.xsites.size();
  for (size_t j = 0; j < nz + nx; ++j) {
    std::uint64_t one = packed_after([&](auto& outs) { outs[j].second = 1; });
    (j < nz ? m.delta_z : m.delta_x).push_back(one ^ m.base);
  }

  auto predict = [&](std::uint64_t zk, unsigned xk) {
    std::uint64_t p = m.base;
    for (size_t j = 0; j < nz; ++j)
      if (zk >> j & 1) p ^= m.delta_z[j];
    for (size_t j = 0; j < nx; ++j)
      if (xk >> j & 1) p ^= m.delta_x[j];
    return p;
  };
  std::uint64_t all_z = nz ? (~std::uint64_t{0} >> (64 - nz)) : 0;
  unsigned all_x = nx ? (~0u >> (32 - nx)) : 0;
  std::uint64_t mix_z = 0xb5ad4eceda1ce2a9ull & all_z;
  unsigned mix_x = 0x9e3779b9u & all_x;
  auto check = [&](std::uint64_t zk, unsigned xk) {
    std::uint64_t got = packed_after([&](auto& outs) {
      for (size_t j = 0; j < nz; ++j) outs[j].second = int(zk >> j & 1);
      for (size_t j = 0; j < nx; ++j) outs[nz + j].second = int(xk >> j & 1);
    });
    return got == predict(zk, xk);
  };
  m.fast = check(all_z, all_x) && check(mix_z, mix_x);
  return m;
}

// Expand one class across one column: sum over the vertical edges, apply the
// entangler phases and the measurement bras, and emit one child class per
// surviving outcome assignment. Children are exact; only branches whose
// frontier collapses below prune_tol (relatively) are dropped.
std::vector<Cls> column_candidates(const Schedule& schedule, const EnginePlan& plan,
                                   const ColumnPlan& col, const Cls& parent,
                                   const RunOptions& opts) {
  struct Entry {
    int zout = 0;
    unsigned xv = 0;
    cx amp;
  };
  std::map<std::uint64_t, std::vector<Entry>> buckets;
  const int nvert = static_cast<int>(col.vert_edges.size());

  for (const auto& [zin, a0] : parent.F) {
    if (zin & ~col.vertex_line_mask) continue; // line with no vertex here
    for (int vm = 0; vm < (1 << nvert); ++vm) {
      int zout = 0;
      bool ok = true;
      for (const auto& vl : col.vertices) {
        int b = (zin >> vl.y) & 1;
        if (vl.vert_j >= 0) b ^= (vm >> vl.vert_j) & 1;
        if (vl.has_out) zout |= b << vl.y;
        else if (b) { ok = false; break; } // string would dead-end
      }
      if (!ok) continue;
      cx amp = a0;
      for (auto [y1, y2] : col.cz_pairs)
        if (((zin >> y1) & (zin >> y2)) & 1) amp = -amp;
      std::uint64_t zkey = 0;
      for (size_t j = 0; j < col.zsites.size(); ++j)
        zkey |= std::uint64_t(site_value(col.zsites[j], zin, vm)) << j;
      unsigned xv = 0;
      for (size_t j = 0; j < col.xsites.size(); ++j)
        xv |= unsigned(site_value(col.xsites[j], zin, vm)) << j;
      buckets[zkey].push_back({zout, xv, amp});
    }
  }

  UpdateModel model = probe_updates(schedule, col, plan, parent);
  const unsigned nx = static_cast<unsigned>(col.xsites.size());
  const double prune2 = parent.norm2 * opts.prune_tol * opts.prune_tol;

  // Resolve an adaptive-rule site against the current candidate.
  auto rule_outcome = [&](int site, std::uint64_t zkey, unsigned mux) -> int {
    for (size_t j = 0; j < col.zsites.size(); ++j)
      if (col.zsites[j].site == site) return int(zkey >> j & 1);
    for (size_t j = 0; j < col.xsites.size(); ++j)
      if (col.xsites[j].site == site) return int(mux >> j & 1);
    auto it = parent.pending.find(site);
    if (it != parent.pending.end()) return it->second;
    fail(errc::internal, "adaptive rule references an unmeasured site");
  };

  std::vector<Cls> out;
  Frontier scratch;
  for (const auto& [zkey, entries] : buckets) {
    for (unsigned mux = 0; mux < (1u << nx); ++mux) {
      struct RotW {
        int j = 0;
        cx w[2];
      };
      RotW rotw[24]; // xsites per column are capped at 24 in build_plan
      int nrot = 0;
      for (int j : col.rot_slots) {
        const SiteRule& sr = plan.rules[col.xsites[j].site];
        const AngleRule& ar = *sr.angle;
        const Pattern& pat = schedule.patterns[sr.pattern];
        int sign = 0;
        switch (ar.seed) {
          case AngleRule::Seed::none: break;
          case AngleRule::Seed::v: sign = parent.frames[pat.wire].v; break;
          case AngleRule::Seed::r: sign = parent.frames[pat.wire].r; break;
        }
        for (int rs : ar.sites) sign ^= rule_outcome(rs, zkey, mux);
        double theta = (sign & 1) ? -ar.base : ar.base;
        MeasBasis basis = sr.family == MeasBasis::Family::rot_z
                              ? MeasBasis::RotZ(theta)
                              : MeasBasis::RotX(theta);
        auto ket = basis.vector(int(mux >> j & 1));
        rotw[nrot++] = {j, {std::conj(ket[0]), std::conj(ket[1])}};
      }

      scratch.clear();
      for (const Entry& en : entries) {
        cx w = en.amp * col.xscale;
        if (std::popcount(mux & en.xv & col.plain_mask) & 1) w = -w;
        for (int t = 0; t < nrot; ++t) w *= rotw[t].w[en.xv >> rotw[t].j & 1];
        auto it = std::find_if(scratch.begin(), scratch.end(),
                               [&](const auto& p) { return p.first == en.zout; });
        if (it == scratch.end()) scratch.push_back({en.zout, w});
        else it->second += w;
      }
      std::sort(scratch.begin(), scratch.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double n2 = 0;
      for (const auto& [z, a] : scratch) n2 += std::norm(a);
      if (n2 <= prune2) continue;

      Cls child;
      child.F = scratch;
      child.norm2 = n2;
      child.wsum = parent.wsum;
      child.mult = parent.mult;
      child.frames = parent.frames;
      child.decoded = parent.decoded;

      auto node = std::make_shared<OutcomeNode>();
      node->parent = parent.trail;
      for (size_t j = 0; j < col.zsites.size(); ++j)
        node->column.push_back({col.zsites[j].site, int(zkey >> j & 1)});
      for (size_t j = 0; j < nx; ++j)
        node->column.push_back({col.xsites[j].site, int(mux >> j & 1)});
      child.trail = std::move(node);

      if (model.fast) {
        std::uint64_t packed = model.base;
        for (size_t j = 0; j < col.zsites.size(); ++j)
          if (zkey >> j & 1) packed ^= model.delta_z[j];
        for (size_t j = 0; j < nx; ++j)
          if (mux >> j & 1) packed ^= model.delta_x[j];
        unpack_state(packed, child);
      } else {
        child.pending = parent.pending;
        settle_column(schedule, col, plan, child, child.trail->column);
      }
      out.push_back(std::move(child));
    }
  }
  return out;
}

std::vector<int> merge_key(const Cls& c) {
  std::vector<int> k;
  k.reserve(3 * c.frames.size() + c.decoded.size() + 2 * c.pending.size());
  for (const PauliFrame& f : c.frames) {
    k.push_back(f.v);
    k.push_back(f.r);
    k.push_back(f.enc);
  }
  for (int d : c.decoded) k.push_back(d);
  for (const auto& [s, o] : c.pending) {
    k.push_back(s);
    k.push_back(o);
  }
  return k;
}

// Backward loop-completion counts: counts[x][z] is the number of ways the
// occupation pattern z leaving column x extends to a fully closed
// configuration. Every measurement basis sums to a unit future measure, so
// these structural counts are exactly the conditional weights the sampler
// needs.
std::vector<std::vector<double>> backward_counts(const EnginePlan& plan) {
  int dim = 1 << plan.lines;
  std::vector<std::vector<double>> counts(plan.last_x + 1);
  counts[plan.last_x].assign(dim, 0.0);
  counts[plan.last_x][0] = 1.0;
  for (int x = plan.last_x; x >= 1; --x) {
    const ColumnPlan& col = plan.columns[x];
    std::vector<double> prev(dim, 0.0);
    int nvert = static_cast<int>(col.vert_edges.size());
    for (int zin = 0; zin < dim; ++zin) {
      if (zin & ~col.vertex_line_mask) continue;
      for (int vm = 0; vm < (1 << nvert); ++vm) {
        int zout = 0;
        bool ok = true;
        for (const auto& vl : col.vertices) {
          int b = (zin >> vl.y) & 1;
          if (vl.vert_j >= 0) b ^= (vm >> vl.vert_j) & 1;
          if (vl.has_out) zout |= b << vl.y;
          else if (b) { ok = false; break; }
        }
        if (ok) prev[zin] += counts[x][zout];
      }
    }
    counts[x - 1] = std::move(prev);
  }
  return counts;
}

int decoded_index(const Cls& c) {
  int idx = 0;
  for (size_t w = 0; w < c.decoded.size(); ++w) {
    if (c.decoded[w] < 0) fail(errc::internal, "wire finished without a readout");
    idx |= c.decoded[w] << w;
  }
  return idx;
}

} // namespace

RunResult run_exhaustive(const Patch& patch, const Schedule& schedule,
                         const RunOptions& opts) {
  EnginePlan plan = build_plan(patch, schedule);
  std::vector<Cls> classes{initial_class(schedule)};

  for (const ColumnPlan& col : plan.columns) {
    std::vector<Cls> next;
    std::map<std::vector<int>, std::vector<size_t>> index;
    for (const Cls& parent : classes) {
      for (Cls& cand : column_candidates(schedule, plan, col, parent, opts)) {
        auto& slots = index[merge_key(cand)];
        bool merged = false;
        for (size_t i : slots) {
          Cls& rep = next[i];
          cx c = frontier_inner(rep.F, cand.F) / rep.norm2;
          double resid2 = cand.norm2 - std::norm(c) * rep.norm2;
          if (resid2 <= opts.merge_tol * opts.merge_tol * cand.norm2) {
            rep.wsum += cand.wsum * std::norm(c);
            rep.mult += cand.mult;
            merged = true;
            break;
          }
        }
        if (!merged) {
          slots.push_back(next.size());
          next.push_back(std::move(cand));
        }
      }
    }
    if (static_cast<long>(next.size()) > opts.class_limit)
      fail(errc::resource_limit, "branch class count exceeded the configured limit");
    classes = std::move(next);
  }

  RunResult res;
  res.wires = schedule.wires;
  res.distribution.assign(std::size_t{1} << schedule.wires, 0.0);
  double scale = std::ldexp(1.0, -patch.cycle_rank());
  for (Cls& c : classes) {
    // after the last column only the empty occupation survives
    double amp2 = c.F.size() == 1 && c.F[0].first == 0 ? std::norm(c.F[0].second) : 0.0;
    double p = c.wsum * amp2 * scale;
    if (p <= 0.0) continue;
    int idx = decoded_index(c);
    res.distribution[idx] += p;
    res.total_probability += p;
    res.branches += c.mult;
    BranchClass bc;
    bc.outcomes = materialize(c.trail);
    bc.multiplicity = c.mult;
    bc.probability = p;
    bc.decoded = c.decoded;
    bc.frames = c.frames;
    res.classes.push_back(std::move(bc));
  }
  std::stable_sort(res.classes.begin(), res.classes.end(),
                   [](const BranchClass& a, const BranchClass& b) {
                     return a.probability > b.probability;
                   });
  return res;
}

SampleResult run_sampled(const Patch& patch, const Schedule& schedule, long shots,
                         std::uint64_t seed, const RunOptions& opts) {
  if (shots < 0) fail(errc::invalid_argument, "shot count must be nonnegative");
  EnginePlan plan = build_plan(patch, schedule);
  std::vector<std::vector<double>> counts = backward_counts(plan);

  SampleResult res;
  res.wires = schedule.wires;
  res.shots = shots;
  res.counts.assign(std::size_t{1} << schedule.wires, 0);

  std::mt19937_64 rng(seed);
  auto next_u = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

  for (long shot = 0; shot < shots; ++shot) {
    Cls cls = initial_class(schedule);
    for (int x = 0; x <= plan.last_x; ++x) {
      std::vector<Cls> cands =
          column_candidates(schedule, plan, plan.columns[x], cls, opts);
      double total = 0;
      std::vector<double> weight(cands.size(), 0.0);
      for (size_t i = 0; i < cands.size(); ++i) {
        for (const auto& [z, a] : cands[i].F) weight[i] += std::norm(a) * counts[x][z];
        total += weight[i];
      }
      if (!(total > 0)) fail(errc::internal, "no branch extends to a closed configuration");
      double u = next_u() * total;
      size_t pick = cands.size() - 1;
      for (size_t i = 0; i < cands.size(); ++i) {
        u -= weight[i];
        if (u <= 0) { pick = i; break; }
      }
      cls = std::move(cands[pick]);
    }
    ++res.counts[decoded_index(cls)];
  }
  return res;
}

std::vector<cx> ideal_statevector(const Circuit& c) {
  if (c.wires > 24) fail(errc::resource_limit, "too many wires for the dense reference");
  std::size_t dim = std::size_t{1} << c.wires;
  std::vector<cx> psi(dim, cx{});
  psi[0] = 1.0;
  auto apply_1q = [&](const Mat& u, int q) {
    std::size_t stride = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & stride) continue;
      cx a0 = psi[i], a1 = psi[i | stride];
      psi[i] = u.at(0, 0) * a0 + u.at(0, 1) * a1;
      psi[i | stride] = u.at(1, 0) * a0 + u.at(1, 1) * a1;
    }
  };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::rz: apply_1q(ideal_rz(g.angle), g.q1); break;
      case GateKind::rx: apply_1q(ideal_rx(g.angle), g.q1); break;
      case GateKind::cz: {
        std::size_t m = (std::size_t{1} << g.q1) | (std::size_t{1} << g.q2);
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & m) == m) psi[i] = -psi[i];
        break;
      }
      case GateKind::id: break;
    }
  }
  return psi;
}

std::vector<double> ideal_distribution(const Circuit& c) {
  std::vector<cx> psi = ideal_statevector(c);
  std::vector<double> p(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
  return p;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size())
    fail(errc::invalid_argument, "distributions have different sizes");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

AgreementReport check_against_ideal(const Patch& patch, const Circuit& c,
                                    CouplingMode mode, const RunOptions& opts) {
  Schedule schedule = compile_circuit(patch, c, mode);
  RunResult run = run_exhaustive(patch, schedule, opts);
  AgreementReport rep;
  rep.engine = run.distribution;
  rep.ideal = ideal_distribution(c);
  rep.tvd = total_variation(rep.engine, rep.ideal);
  rep.total_probability = run.total_probability;
  rep.classes = static_cast<long>(run.classes.size());
  rep.branches = run.branches;
  return rep;
}

} // namespace snc
