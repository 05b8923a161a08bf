#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "oracle.hpp"

namespace snc {

// Dense tensor with binary legs identified by integer labels. Axis i of the
// storage is addressed by bit i of the flat index, in the order of `legs`.
// Labels are the caller's business; here sites use their id and virtual edge
// legs use -(edge id + 1), which keeps the two namespaces disjoint.
class Tensor {
public:
  Tensor() = default;
  explicit Tensor(std::vector<int> legs);

  static Tensor scalar_one();

  int rank() const { return static_cast<int>(legs_.size()); }
  const std::vector<int>& legs() const { return legs_; }
  std::uint64_t size() const { return std::uint64_t{1} << rank(); }
  bool has_leg(int label) const;
  int axis_of(int label) const; // throws errc::invalid_argument when absent

  cx at(std::uint64_t idx) const { return data_[idx]; }
  void set(std::uint64_t idx, cx v) { data_[idx] = v; }
  cx scalar() const; // rank 0 only

  // Sum over every label the two tensors share.
  Tensor contract(const Tensor& other) const;
  // Fix one leg to a value and drop it.
  Tensor pin(int label, int value) const;
  // Contract one leg with a row vector (a bra, already conjugated).
  Tensor contract_leg(int label, const std::array<cx, 2>& bra) const;
  // Multiply entries by w[value of leg], keeping the leg.
  void scale_leg(int label, const std::array<cx, 2>& w);
  void relabel(int from, int to);

  double norm() const;

  // Expand to a statevector: legs must be exactly the site ids 0..n-1, in
  // any axis order; site s lands on qubit s.
  Statevector to_statevector(int qubit_cap = Statevector::default_cap) const;

private:
  std::vector<int> legs_;
  std::vector<cx> data_;
};

// |<a|b>| == ||a|| ||b|| within tol, i.e. equal up to a global phase.
bool proportional(const Statevector& a, const Statevector& b, double tol);

} // namespace snc
