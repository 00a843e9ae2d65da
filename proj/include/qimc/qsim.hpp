#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qimc/circuit.hpp"
#include "qimc/encoders.hpp"
#include "qimc/error.hpp"

namespace qimc {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultQubitBudget = 24;

// Dense statevector. Qubit k is bit k of the amplitude index.
class StateVector {
 public:
  StateVector(RegisterLayout layout, int num_qubits)
      : layout_(layout), num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
    amps_[0] = 1.0;
  }
  explicit StateVector(RegisterLayout layout) : StateVector(layout, layout.total()) {}

  const RegisterLayout& layout() const { return layout_; }
  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::vector<Amplitude>& amplitudes() { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  RegisterLayout layout_;
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

inline void apply_gate(StateVector& sv, const Gate& g) {
  auto& a = sv.amplitudes();
  const std::size_t tbit = std::size_t{1} << g.target;
  const std::size_t dim = a.size();
  switch (g.kind) {
    case GateKind::identity:
      return;
    case GateKind::hadamard: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & tbit) continue;
        const Amplitude u = a[i], v = a[i | tbit];
        a[i] = (u + v) * r;
        a[i | tbit] = (u - v) * r;
      }
      return;
    }
    case GateKind::x: {
      std::size_t mask = 0, want = 0;
      for (const auto& c : g.controls) {
        const std::size_t b = std::size_t{1} << c.qubit;
        mask |= b;
        if (c.polarity == Polarity::positive) want |= b;
      }
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) || (i & mask) != want) continue;
        std::swap(a[i], a[i | tbit]);
      }
      return;
    }
  }
}

inline void apply_circuit(StateVector& sv, const Circuit& c) {
  if (c.num_qubits() > sv.num_qubits()) throw LayoutError("circuit wider than state");
  for (const auto& g : c.gates()) apply_gate(sv, g);
}

/// Runs `c` on |0...0>. Refuses layouts above the qubit budget instead of
/// allocating 2^total amplitudes.
inline StateVector simulate(const Circuit& c, int qubit_budget = kDefaultQubitBudget) {
  if (c.num_qubits() > qubit_budget) {
    throw CapacityError("circuit needs " + std::to_string(c.num_qubits()) + " qubits; simulation budget is " +
                        std::to_string(qubit_budget));
  }
  StateVector sv(c.layout());
  apply_circuit(sv, c);
  return sv;
}

// Basis index of |value>|aux>|y>|x> under the layout's qubit convention.
inline std::size_t basis_index(const RegisterLayout& l, std::uint64_t value, int aux, int y, int x) {
  std::size_t idx = value;
  if (aux) idx |= std::size_t{1} << l.aux_qubit();
  for (int k = 0; k < l.n; ++k) {
    if ((y >> (l.n - 1 - k)) & 1) idx |= std::size_t{1} << l.y_qubit(k);
    if ((x >> (l.n - 1 - k)) & 1) idx |= std::size_t{1} << l.x_qubit(k);
  }
  return idx;
}

struct VerifyReport {
  bool ok = false;
  double max_deviation = 0.0;
};

inline constexpr double kStateTolerance = 1e-10;

/// Checks the state is (1/2^n) sum_p |C_p>|0>|p> with C_p the map magnitude
/// at p (0 where the map has no entry) and nothing else.
inline VerifyReport verify_prepared_state(const StateVector& sv, const CoeffMap& m,
                                          double tolerance = kStateTolerance) {
  const auto& l = sv.layout();
  if (l.n != m.n || sv.num_qubits() != l.total()) {
    throw LayoutError("state layout (n=" + std::to_string(l.n) + ") does not match coefficient map (n=" +
                      std::to_string(m.n) + ")");
  }
  std::vector<Amplitude> expected(sv.size(), 0.0);
  const double amp = 1.0 / static_cast<double>(1 << m.n);
  for (int y = 0; y < m.side(); ++y) {
    for (int x = 0; x < m.side(); ++x) {
      const auto it = m.entries.find({y, x});
      const std::uint64_t v = it == m.entries.end() ? 0 : static_cast<std::uint64_t>(it->second.magnitude);
      if (v >= (std::uint64_t{1} << l.q)) throw RangeError("map magnitude exceeds value register");
      expected[basis_index(l, v, 0, y, x)] = amp;
    }
  }
  VerifyReport r{true, 0.0};
  for (std::size_t i = 0; i < sv.size(); ++i) {
    r.max_deviation = std::max(r.max_deviation, std::abs(sv[i] - expected[i]));
  }
  r.ok = r.max_deviation < tolerance;
  return r;
}

inline constexpr double kReadBackThreshold = 1e-6;

/// Recovers the magnitude at every position from a prepared state. Signs
/// live in the classical sidecar, so every entry comes back positive.
inline CoeffMap read_back(const StateVector& sv, double threshold = kReadBackThreshold) {
  const auto& l = sv.layout();
  CoeffMap m;
  m.n = l.n;
  m.width = m.height = l.side();
  const std::uint64_t values = std::uint64_t{1} << l.q;
  for (int y = 0; y < l.side(); ++y) {
    for (int x = 0; x < l.side(); ++x) {
      std::int64_t found = -1;
      for (std::uint64_t v = 0; v < values; ++v) {
        if (std::abs(sv[basis_index(l, v, 0, y, x)]) <= threshold) continue;
        if (found >= 0) {
          throw MalformedState("several values at position (" + std::to_string(y) + "," + std::to_string(x) + ")");
        }
        found = static_cast<std::int64_t>(v);
      }
      if (found < 0) {
        throw MalformedState("no amplitude at position (" + std::to_string(y) + "," + std::to_string(x) + ")");
      }
      if (found > 0) m.entries[{y, x}] = {static_cast<int>(found), Sign::positive};
    }
  }
  return m;
}

// Non-zero amplitudes as [[index, re, im], ...] for debugging.
inline nlohmann::ordered_json dump_amplitudes(const StateVector& sv, double threshold = 1e-12) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sv.size(); ++i) {
    if (std::abs(sv[i]) > threshold) j.push_back({i, sv[i].real(), sv[i].imag()});
  }
  return j;
}

}  // namespace qimc
