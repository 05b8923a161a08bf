#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace snc {

using cx = std::complex<double>;

// Single qubit measurement bases. `vector(m)` returns the basis ket for
// outcome m; outcome 0 always labels the first basis vector.
struct MeasBasis {
  enum class Family { z, x, rot_z, rot_x };
  Family family = Family::z;
  double angle = 0.0;

  static MeasBasis Z() { return {Family::z, 0.0}; }
  static MeasBasis X() { return {Family::x, 0.0}; }
  // eigenbasis of the equator direction at angle -theta from +x:
  //   (|0> + exp(-i theta)|1>)/sqrt(2),  (|0> - exp(-i theta)|1>)/sqrt(2)
  static MeasBasis RotZ(double theta) { return {Family::rot_z, theta}; }
  // rotated Z basis:
  //   cos(t/2)|0> + i sin(t/2)|1>,  sin(t/2)|0> - i cos(t/2)|1>
  static MeasBasis RotX(double theta) { return {Family::rot_x, theta}; }

  std::array<cx, 2> vector(int outcome) const;
};

// Brute force statevector over up to `cap` qubits, amplitudes indexed with
// qubit q on bit q. No cleverness anywhere: this is the reference the rest
// of the library is checked against.
class Statevector {
public:
  static constexpr int default_cap = 26;

  explicit Statevector(int qubits, int cap = default_cap); // starts in |0...0>
  int qubit_count() const { return qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << qubits_; }

  cx amp(std::uint64_t idx) const { return amps_[idx]; }
  void set_amp(std::uint64_t idx, cx value) { amps_[idx] = value; }

  double norm() const;
  void normalize(); // throws errc::internal on the zero vector
  // scale by a phase making the first nonvanishing amplitude real positive
  void canonicalize_phase();

  void apply_pauli(char p, int qubit); // 'X' | 'Y' | 'Z'
  void apply_cz(int a, int b);
  void apply_phase(int qubit, cx phase); // diag(1, phase)

  cx inner(const Statevector& other) const; // <this|other>
  // <psi| P |psi> for a product of single qubit Paulis (distinct qubits)
  double expect_pauli_product(const std::vector<std::pair<char, int>>& factors) const;

  double outcome_probability(int qubit, const MeasBasis& basis, int outcome) const;

  struct MeasResult {
    int outcome = 0;
    double probability = 0.0;
  };
  // Projective measurement; the qubit stays in the register, collapsed onto
  // the basis ket. Forced outcomes of probability ~0 raise
  // errc::impossible_outcome. Unforced measurements draw from `rng`.
  MeasResult measure(int qubit, const MeasBasis& basis, std::optional<int> forced,
                     std::mt19937_64* rng);

  // Contract one qubit against the bra of basis outcome `outcome` and drop
  // it from the register (qubits above shift down). Not normalized.
  Statevector project_out(int qubit, const MeasBasis& basis, int outcome) const;

private:
  void check_qubit(int qubit) const;
  int qubits_;
  std::vector<cx> amps_;
};

} // namespace snc
