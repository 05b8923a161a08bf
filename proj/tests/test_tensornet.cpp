#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "lattice.hpp"
#include "resource.hpp"
#include "tensor.hpp"
#include "tensornet.hpp"

using namespace snc;
using doctest::Approx;

TEST_CASE("tensor contraction sums shared legs") {
  // A(x, y) = x xor y pattern, B(y) = [1, 2]; C(x) = sum_y A B
  Tensor a({10, 20});
  a.set(0b01, 1.0); // x=1,y=0
  a.set(0b10, 1.0); // x=0,y=1
  Tensor b({20});
  b.set(0, 1.0);
  b.set(1, 2.0);
  Tensor c = a.contract(b);
  REQUIRE(c.rank() == 1);
  CHECK(c.legs()[0] == 10);
  CHECK(c.at(0).real() == Approx(2.0)); // x=0 pairs with y=1
  CHECK(c.at(1).real() == Approx(1.0));
}

TEST_CASE("tensor pin and leg operations") {
  Tensor t({1, 2});
  t.set(0b00, 1.0);
  t.set(0b11, 5.0);
  Tensor p = t.pin(2, 1);
  CHECK(p.rank() == 1);
  CHECK(p.at(1).real() == Approx(5.0));
  CHECK(p.at(0).real() == Approx(0.0));
  t.scale_leg(1, {1.0, cx{0.0, 1.0}});
  CHECK(t.at(0b11) == cx{0.0, 5.0});
  CHECK_THROWS_AS(t.pin(99, 0), error);
  CHECK_THROWS_AS(Tensor({3, 3}), error);
}

TEST_CASE("vertex tensor copies virtuals and enforces even parity") {
  Patch p = build_patch(2, 2);
  // find a degree 3 vertex
  int vid = -1;
  for (int v = 0; v < p.vertex_count(); ++v)
    if (p.incident_edges(v).size() == 3) vid = v;
  REQUIRE(vid >= 0);
  Tensor t = vertex_tensor(p, vid);
  CHECK(t.rank() == 6);
  int nonzero = 0;
  for (std::uint64_t i = 0; i < t.size(); ++i)
    if (std::abs(t.at(i)) > 1e-14) ++nonzero;
  CHECK(nonzero == 4); // 000, 011, 101, 110 virtual patterns
}

TEST_CASE("vertex with all virtuals pinned to zero leaves |00...>") {
  Patch p = build_patch(1, 1);
  Tensor t = vertex_tensor(p, 0);
  for (int e : p.incident_edges(0)) t = t.pin(virtual_leg(e), 0);
  // remaining legs are the physical halves; only the all-zero entry survives
  CHECK(std::abs(t.at(0) - cx{1.0, 0.0}) < 1e-14);
  for (std::uint64_t i = 1; i < t.size(); ++i) CHECK(std::abs(t.at(i)) < 1e-14);
}

TEST_CASE("patch contraction reproduces the resource state") {
  for (auto [r, c] : {std::pair{1, 1}, {2, 1}}) {
    Patch p = build_patch(r, c);
    Statevector via_tensors = contract_patch(p);
    Statevector via_loops = ground_state(p);
    CHECK(std::abs(via_tensors.inner(via_loops)) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fully measured region gives the configuration amplitude") {
  Patch p = build_patch(1, 1);
  auto loops = enumerate_loops(p);
  std::vector<int> all_vertices;
  for (int v = 0; v < p.vertex_count(); ++v) all_vertices.push_back(v);

  auto amplitude_of = [&](std::uint64_t edge_mask) {
    std::map<int, std::array<cx, 2>> bras;
    for (int e = 0; e < p.edge_count(); ++e) {
      int bit = (edge_mask >> e) & 1;
      for (int s : p.edge_sites(e)) bras[s] = measurement_bra(MeasBasis::Z(), bit);
    }
    return contract_region(p, all_vertices, bras).scalar();
  };

  for (std::uint64_t mask : loops) CHECK(std::abs(amplitude_of(mask)) == Approx(1.0));
  CHECK(std::abs(amplitude_of(0b000001)) == Approx(0.0)); // open strand
  CHECK(std::abs(amplitude_of(0b000011)) == Approx(0.0));
}

TEST_CASE("matrix view of a tensor") {
  Tensor t({7, 8}); // rows leg 7, cols leg 8
  t.set(0b01, 2.0); // leg7=1, leg8=0
  Mat m = mat_from_tensor(t, {7}, {8});
  CHECK(m.at(1, 0).real() == Approx(2.0));
  CHECK(m.at(0, 1).real() == Approx(0.0));
  CHECK_THROWS_AS(mat_from_tensor(t, {7}, {}), error);
}

TEST_CASE("cz phase flips the doubly occupied sector") {
  Tensor t({1, 2});
  for (std::uint64_t i = 0; i < 4; ++i) t.set(i, 1.0);
  apply_cz_phase(t, 1, 2);
  CHECK(t.at(0b11).real() == Approx(-1.0));
  CHECK(t.at(0b01).real() == Approx(1.0));
}

TEST_CASE("matrix proportionality is phase blind") {
  Mat x = Mat::identity(2);
  Mat y = Mat::identity(2);
  for (auto& v : y.a) v *= std::exp(cx{0.0, 0.4});
  CHECK(proportional(x, y, 1e-12));
  y.at(1, 1) = -y.at(1, 1);
  CHECK_FALSE(proportional(x, y, 1e-10));
}
