#include "oracle.hpp"

#include <cmath>

#include "errors.hpp"

namespace snc {

namespace {
constexpr double kImpossibleTol = 1e-12;
const cx kI{0.0, 1.0};
} // namespace

std::array<cx, 2> MeasBasis::vector(int outcome) const {
  if (outcome != 0 && outcome != 1) fail(errc::invalid_argument, "outcome must be 0 or 1");
  const double s = 1.0 / std::sqrt(2.0);
  switch (family) {
    case Family::z:
      return outcome == 0 ? std::array<cx, 2>{1.0, 0.0} : std::array<cx, 2>{0.0, 1.0};
    case Family::x:
      return outcome == 0 ? std::array<cx, 2>{s, s} : std::array<cx, 2>{s, -s};
    case Family::rot_z: {
      cx ph = std::exp(-kI * angle);
      return outcome == 0 ? std::array<cx, 2>{s, s * ph} : std::array<cx, 2>{s, -s * ph};
    }
    case Family::rot_x: {
      double c = std::cos(angle / 2), n = std::sin(angle / 2);
      return outcome == 0 ? std::array<cx, 2>{c, kI * n} : std::array<cx, 2>{n, -kI * c};
    }
  }
  fail(errc::internal, "unknown basis family");
}

Statevector::Statevector(int qubits, int cap) : qubits_(qubits) {
  if (qubits < 1) fail(errc::invalid_argument, "statevector needs at least one qubit");
  if (cap > default_cap) cap = default_cap;
  if (qubits > cap)
    fail(errc::resource_limit,
         "statevector of " + std::to_string(qubits) + " qubits exceeds the cap of " +
             std::to_string(cap));
  amps_.assign(std::uint64_t{1} << qubits, cx{0.0, 0.0});
  amps_[0] = 1.0;
}

void Statevector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= qubits_) fail(errc::range, "qubit index out of range");
}

double Statevector::norm() const {
  double n2 = 0.0;
  for (const cx& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

void Statevector::normalize() {
  double n = norm();
  if (n < kImpossibleTol) fail(errc::internal, "cannot normalize a zero state");
  for (cx& a : amps_) a /= n;
}

void Statevector::canonicalize_phase() {
  for (const cx& a : amps_) {
    if (std::abs(a) > 1e-12) {
      cx ph = std::abs(a) / a;
      for (cx& b : amps_) b *= ph;
      return;
    }
  }
}

void Statevector::apply_pauli(char p, int qubit) {
  check_qubit(qubit);
  std::uint64_t stride = std::uint64_t{1} << qubit;
  for (std::uint64_t base = 0; base < dim(); base += 2 * stride) {
    for (std::uint64_t off = 0; off < stride; ++off) {
      cx& a0 = amps_[base + off];
      cx& a1 = amps_[base + off + stride];
      switch (p) {
        case 'X': std::swap(a0, a1); break;
        case 'Y': {
          cx t = a0;
          a0 = -kI * a1;
          a1 = kI * t;
          break;
        }
        case 'Z': a1 = -a1; break;
        default: fail(errc::invalid_argument, "pauli must be X, Y or Z");
      }
    }
  }
}

void Statevector::apply_cz(int a, int b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) fail(errc::invalid_argument, "cz needs two distinct qubits");
  std::uint64_t ma = std::uint64_t{1} << a, mb = std::uint64_t{1} << b;
  for (std::uint64_t i = 0; i < dim(); ++i)
    if ((i & ma) && (i & mb)) amps_[i] = -amps_[i];
}

void Statevector::apply_phase(int qubit, cx phase) {
  check_qubit(qubit);
  std::uint64_t m = std::uint64_t{1} << qubit;
  for (std::uint64_t i = 0; i < dim(); ++i)
    if (i & m) amps_[i] *= phase;
}

cx Statevector::inner(const Statevector& other) const {
  if (other.qubits_ != qubits_) fail(errc::invalid_argument, "qubit counts differ");
  cx acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < dim(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

double Statevector::expect_pauli_product(
    const std::vector<std::pair<char, int>>& factors) const {
  Statevector scratch = *this;
  for (const auto& [p, q] : factors) scratch.apply_pauli(p, q);
  return inner(scratch).real();
}

double Statevector::outcome_probability(int qubit, const MeasBasis& basis,
                                        int outcome) const {
  check_qubit(qubit);
  auto ket = basis.vector(outcome);
  std::uint64_t stride = std::uint64_t{1} << qubit;
  double p = 0.0;
  for (std::uint64_t base = 0; base < dim(); base += 2 * stride)
    for (std::uint64_t off = 0; off < stride; ++off) {
      cx c = std::conj(ket[0]) * amps_[base + off] +
             std::conj(ket[1]) * amps_[base + off + stride];
      p += std::norm(c);
    }
  return p;
}

Statevector::MeasResult Statevector::measure(int qubit, const MeasBasis& basis,
                                             std::optional<int> forced,
                                             std::mt19937_64* rng) {
  check_qubit(qubit);
  double p0 = outcome_probability(qubit, basis, 0);
  int outcome;
  if (forced) {
    outcome = *forced;
    if (outcome != 0 && outcome != 1) fail(errc::invalid_argument, "outcome must be 0 or 1");
  } else if (rng) {
    outcome = std::uniform_real_distribution<double>(0.0, 1.0)(*rng) < p0 ? 0 : 1;
  } else if (p0 >= 1.0 - kImpossibleTol) {
    outcome = 0;
  } else if (p0 <= kImpossibleTol) {
    outcome = 1;
  } else {
    fail(errc::invalid_argument, "random measurement outcome needs a generator");
  }
  double p = outcome == 0 ? p0 : 1.0 - p0;
  if (p < kImpossibleTol)
    fail(errc::impossible_outcome, "forced outcome has probability zero");

  auto ket = basis.vector(outcome);
  double inv = 1.0 / std::sqrt(p);
  std::uint64_t stride = std::uint64_t{1} << qubit;
  for (std::uint64_t base = 0; base < dim(); base += 2 * stride)
    for (std::uint64_t off = 0; off < stride; ++off) {
      cx& a0 = amps_[base + off];
      cx& a1 = amps_[base + off + stride];
      cx c = (std::conj(ket[0]) * a0 + std::conj(ket[1]) * a1) * inv;
      a0 = ket[0] * c;
      a1 = ket[1] * c;
    }
  return {outcome, p};
}

Statevector Statevector::project_out(int qubit, const MeasBasis& basis, int outcome) const {
  check_qubit(qubit);
  if (qubits_ < 2) fail(errc::invalid_argument, "cannot project out the last qubit");
  auto ket = basis.vector(outcome);
  Statevector out(qubits_ - 1);
  std::uint64_t low_mask = (std::uint64_t{1} << qubit) - 1;
  for (std::uint64_t i = 0; i < out.dim(); ++i) {
    std::uint64_t lifted = (i & low_mask) | ((i & ~low_mask) << 1);
    out.amps_[i] = std::conj(ket[0]) * amps_[lifted] +
                   std::conj(ket[1]) * amps_[lifted | (std::uint64_t{1} << qubit)];
  }
  return out;
}

} // namespace snc
