#include "tensor.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace snc {

Tensor::Tensor(std::vector<int> legs) : legs_(std::move(legs)) {
  if (legs_.size() > 28) fail(errc::resource_limit, "tensor rank too large");
  std::vector<int> sorted = legs_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(errc::invalid_argument, "duplicate tensor leg label");
  data_.assign(std::uint64_t{1} << legs_.size(), cx{0.0, 0.0});
}

Tensor Tensor::scalar_one() {
  Tensor t{std::vector<int>{}};
  t.data_[0] = 1.0;
  return t;
}

bool Tensor::has_leg(int label) const {
  return std::find(legs_.begin(), legs_.end(), label) != legs_.end();
}

int Tensor::axis_of(int label) const {
  auto it = std::find(legs_.begin(), legs_.end(), label);
  if (it == legs_.end()) fail(errc::invalid_argument, "tensor has no such leg");
  return static_cast<int>(it - legs_.begin());
}

cx Tensor::scalar() const {
  if (rank() != 0) fail(errc::invalid_argument, "tensor is not a scalar");
  return data_[0];
}

Tensor Tensor::contract(const Tensor& other) const {
  std::vector<int> shared, mine, theirs;
  for (int l : legs_)
    (other.has_leg(l) ? shared : mine).push_back(l);
  for (int l : other.legs_)
    if (!has_leg(l)) theirs.push_back(l);

  std::vector<int> out_legs = mine;
  out_legs.insert(out_legs.end(), theirs.begin(), theirs.end());
  Tensor out(out_legs);

  // bit scatter tables: for each axis of an input, where does it read from
  // (bit of the output index or bit of the shared index)?
  auto build_map = [&](const Tensor& t, std::vector<std::uint64_t>& from_out,
                       std::vector<std::uint64_t>& from_shared) {
    from_out.assign(out_legs.size(), 0);
    from_shared.assign(shared.size(), 0);
    for (int axis = 0; axis < t.rank(); ++axis) {
      int label = t.legs_[axis];
      auto s = std::find(shared.begin(), shared.end(), label);
      if (s != shared.end()) {
        from_shared[s - shared.begin()] |= std::uint64_t{1} << axis;
      } else {
        auto o = std::find(out_legs.begin(), out_legs.end(), label);
        from_out[o - out_legs.begin()] |= std::uint64_t{1} << axis;
      }
    }
  };
  std::vector<std::uint64_t> a_out, a_shared, b_out, b_shared;
  build_map(*this, a_out, a_shared);
  build_map(other, b_out, b_shared);

  std::uint64_t n_out = out.size(), n_shared = std::uint64_t{1} << shared.size();
  for (std::uint64_t oi = 0; oi < n_out; ++oi) {
    std::uint64_t a_base = 0, b_base = 0;
    for (std::size_t i = 0; i < out_legs.size(); ++i)
      if (oi & (std::uint64_t{1} << i)) {
        a_base |= a_out[i];
        b_base |= b_out[i];
      }
    cx acc{0.0, 0.0};
    for (std::uint64_t si = 0; si < n_shared; ++si) {
      std::uint64_t ai = a_base, bi = b_base;
      for (std::size_t i = 0; i < shared.size(); ++i)
        if (si & (std::uint64_t{1} << i)) {
          ai |= a_shared[i];
          bi |= b_shared[i];
        }
      acc += data_[ai] * other.data_[bi];
    }
    out.data_[oi] = acc;
  }
  return out;
}

Tensor Tensor::pin(int label, int value) const {
  return contract_leg(label, value == 0 ? std::array<cx, 2>{1.0, 0.0}
                                        : std::array<cx, 2>{0.0, 1.0});
}

Tensor Tensor::contract_leg(int label, const std::array<cx, 2>& bra) const {
  int axis = axis_of(label);
  std::vector<int> out_legs = legs_;
  out_legs.erase(out_legs.begin() + axis);
  Tensor out(out_legs);
  std::uint64_t low = (std::uint64_t{1} << axis) - 1;
  for (std::uint64_t oi = 0; oi < out.size(); ++oi) {
    std::uint64_t base = (oi & low) | ((oi & ~low) << 1);
    out.data_[oi] =
        bra[0] * data_[base] + bra[1] * data_[base | (std::uint64_t{1} << axis)];
  }
  return out;
}

void Tensor::scale_leg(int label, const std::array<cx, 2>& w) {
  std::uint64_t mask = std::uint64_t{1} << axis_of(label);
  for (std::uint64_t i = 0; i < size(); ++i) data_[i] *= w[(i & mask) ? 1 : 0];
}

void Tensor::relabel(int from, int to) {
  int axis = axis_of(from);
  if (has_leg(to)) fail(errc::invalid_argument, "relabel target already present");
  legs_[axis] = to;
}

double Tensor::norm() const {
  double n2 = 0.0;
  for (const cx& v : data_) n2 += std::norm(v);
  return std::sqrt(n2);
}

Statevector Tensor::to_statevector(int qubit_cap) const {
  int n = rank();
  std::vector<int> sorted = legs_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i)
      fail(errc::invalid_argument, "tensor legs are not a full site range");

  Statevector state(n, qubit_cap);
  state.set_amp(0, 0.0);
  for (std::uint64_t idx = 0; idx < size(); ++idx) {
    std::uint64_t out = 0;
    for (int axis = 0; axis < n; ++axis)
      if (idx & (std::uint64_t{1} << axis)) out |= std::uint64_t{1} << legs_[axis];
    state.set_amp(out, data_[idx]);
  }
  return state;
}

bool proportional(const Statevector& a, const Statevector& b, double tol) {
  double na = a.norm(), nb = b.norm();
  if (na < tol || nb < tol) return na < tol && nb < tol;
  return std::abs(std::abs(a.inner(b)) - na * nb) <= tol * na * nb;
}

} // namespace snc
