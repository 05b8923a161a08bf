#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace snc {

// Brick-wall patch of the hexagonal lattice, drawn with square corners.
// A patch has `rows` brick rows and `cols` bricks per row; odd rows are
// shifted right by one column, e.g. rows=3, cols=2:
//
//   y=0  +--+--+--+--+
//        |     |     |        row 0:  x spans [0, 2*cols]
//   y=1  +--+--+--+--+--+
//           |     |     |     row 1:  x spans [1, 2*cols+1]
//   y=2  +--+--+--+--+--+
//        |     |     |        row 2
//   y=3  +--+--+--+--+
//
// Vertices sit on integer points; every vertex has degree 2 or 3. Each brick
// is one hexagonal plaquette: four unit segments along the top and bottom
// lines plus two vertical edges. Every edge hosts TWO qubits ("sites"), one
// per endpoint half. Vertices are numbered row-major by (y, x), edges by
// their sorted endpoint ids, and site = 2*edge + half with half 0 at the
// edge's lower-numbered endpoint.
//
// Logical wires run along odd brick rows (wire w lives on brick row 2w+1;
// even rows separate neighbouring wires), so a patch hosts floor(rows/2)
// wires. Within a wire row, even-x columns advance the wire ("step"
// columns) and odd-x columns hold its internal vertical edges where single
// qubit gates act ("gate" columns). Column x=1 initialises the wire,
// x=2*cols+1 reads it out, leaving cols-1 gate cells in between.

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) {
    return std::pair(a.y, a.x) <=> std::pair(b.y, b.x);
  }
};

struct Edge {
  int u = 0; // endpoint vertex ids, u < v
  int v = 0;
  bool vertical = false;
};

// Qubit roles inside one wire cell (step column + gate column). Letter names
// follow the cell diagram below; j is unused to keep i and l distinct at a
// glance. g_partner is the second qubit on the gate column's vertical edge.
//
//        a |         | g
//   b ----(+)---- h (+) i ----      upper wire line
//          | c       |
//   e ----(+)---- k (+) l ----      lower wire line
//        d |  f      | g_partner
//
enum class Role { a, b, c, d, e, f, g, g_partner, h, i, k, l };

const char* role_name(Role r);
std::optional<Role> role_from_name(const std::string& name);

struct WireCell {
  int wire = 0;
  int step = 0;
  int step_x = 0; // x of the step column
  int gate_x = 0; // x of the gate column
  bool has_d = false;
  // role -> site id; Role::d present only when has_d
  std::map<Role, int> sites;
};

// Entry/readout geometry of one wire, used by the compiler.
struct WireEnds {
  // init column (x = 1)
  int init_h = -1;         // in-half on the upper line
  int init_k = -1;         // in-half on the lower line, -1 when the lower
                           // line starts at x = 1 (bottom wire, even rows)
  int init_g = -1;         // upper half of the init vertical
  int init_g_partner = -1;
  int init_i = -1;         // out-halves, forced by the pins above
  int init_l = -1;
  int entry_upper_far = -1; // dangling halves at x = 0
  int entry_lower_far = -1; // -1 when absent
  // readout column (x = 2*cols + 1)
  int read_h = -1;
  int read_k = -1;
  int read_g = -1;
  int read_g_partner = -1;
};

class Patch {
public:
  Patch(int rows, int cols); // throws errc::invalid_argument unless both >= 1

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vertex_count() const { return static_cast<int>(points_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int site_count() const { return 2 * edge_count(); }
  int plaquette_count() const { return rows_ * cols_; }
  int cycle_rank() const { return edge_count() - vertex_count() + 1; }

  const Point& vertex(int vid) const;
  const Edge& edge(int eid) const;
  const std::vector<int>& incident_edges(int vid) const; // sorted by edge id

  int vertex_at(Point p) const;                    // -1 when absent
  int edge_between(int u, int v) const;            // -1 when absent
  int horizontal_edge(int x_left, int y) const;    // (x,y)-(x+1,y)
  int vertical_edge(int x, int y_top) const;       // (x,y)-(x,y+1)

  // site = 2*edge + half; half 0 sits at edge(e).u
  static int site_of(int eid, int half) { return 2 * eid + half; }
  static int site_edge(int site) { return site >> 1; }
  static int site_half(int site) { return site & 1; }
  int site_at(int eid, int vid) const; // the half anchored at vertex vid

  // Hamiltonian term supports, as sorted site-id lists.
  std::vector<int> plaquette_sites(int p) const; // 12 sites
  std::vector<int> vertex_sites(int vid) const;  // 2 * degree
  std::array<int, 2> edge_sites(int eid) const;
  const std::array<int, 6>& plaquette_edges(int p) const;

  // Wire layout.
  int wire_count() const { return rows_ / 2; }
  int gate_cells_per_wire() const { return cols_ - 1; }
  int wire_upper_line(int w) const; // y of the wire's upper path
  int wire_lower_line(int w) const;
  bool wire_has_d(int w) const;     // false for the bottom wire of even rows
  WireCell wire_cell(int w, int step) const; // throws errc::range when off patch
  WireEnds wire_ends(int w) const;
  // vertical edge shared by wire w's d row and wire w+1's a row at step col x
  int coupling_edge(int w, int step_x) const;

  std::string describe_json(int indent = -1) const;

private:
  int rows_;
  int cols_;
  std::vector<Point> points_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 6>> plaquettes_;
  std::vector<std::vector<int>> incidence_;
  std::map<Point, int> point_ids_;
  std::map<std::pair<int, int>, int> edge_ids_;
};

inline Patch build_patch(int rows, int cols) { return Patch(rows, cols); }

} // namespace snc
