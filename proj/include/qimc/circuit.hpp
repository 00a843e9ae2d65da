#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qimc/error.hpp"

namespace qimc {

// Qubit index convention:
//   [0, q)            value register, qubit i holds bit i of the magnitude
//   q                 auxiliary (bridging) qubit
//   [q+1, q+1+n)      Y coordinate, most-significant bit first
//   [q+1+n, q+1+2n)   X coordinate, most-significant bit first
struct RegisterLayout {
  int q = 0;
  int n = 0;

  RegisterLayout() = default;
  RegisterLayout(int value_qubits, int half_width) : q(value_qubits), n(half_width) {
    if (q < 1 || n < 1) {
      throw LayoutError("register layout needs q >= 1 and n >= 1 (got q=" + std::to_string(q) +
                        ", n=" + std::to_string(n) + ")");
    }
  }

  int total() const { return q + 2 * n + 1; }
  int value_qubit(int bit) const { return bit; }
  int aux_qubit() const { return q; }
  // k counts from the most-significant coordinate bit.
  int y_qubit(int k) const { return q + 1 + k; }
  int x_qubit(int k) const { return q + 1 + n + k; }
  int side() const { return 1 << n; }

  bool operator==(const RegisterLayout&) const = default;
};

enum class GateKind : std::uint8_t { identity, hadamard, x };
enum class Polarity : std::uint8_t { negative, positive };

struct Control {
  int qubit = 0;
  Polarity polarity = Polarity::positive;
  bool operator==(const Control&) const = default;
};

struct Gate {
  GateKind kind = GateKind::identity;
  int target = 0;
  std::vector<Control> controls;
  bool operator==(const Gate&) const = default;
};

inline Gate hadamard(int target) { return {GateKind::hadamard, target, {}}; }
inline Gate x_gate(int target, std::vector<Control> controls = {}) {
  return {GateKind::x, target, std::move(controls)};
}

// Controls selecting the basis state |y>|x> of the position register.
inline std::vector<Control> position_controls(const RegisterLayout& layout, int y, int x) {
  std::vector<Control> c;
  c.reserve(2 * static_cast<std::size_t>(layout.n));
  for (int k = 0; k < layout.n; ++k) {
    const int bit = (y >> (layout.n - 1 - k)) & 1;
    c.push_back({layout.y_qubit(k), bit ? Polarity::positive : Polarity::negative});
  }
  for (int k = 0; k < layout.n; ++k) {
    const int bit = (x >> (layout.n - 1 - k)) & 1;
    c.push_back({layout.x_qubit(k), bit ? Polarity::positive : Polarity::negative});
  }
  return c;
}

inline void validate_gate(const Gate& g, int total) {
  auto in_range = [total](int qb) { return qb >= 0 && qb < total; };
  if (!in_range(g.target)) throw LayoutError("gate target " + std::to_string(g.target) + " out of range");
  if (g.kind != GateKind::x && !g.controls.empty()) {
    throw LayoutError("identity/hadamard gates take no controls");
  }
  std::vector<int> seen;
  seen.reserve(g.controls.size());
  for (const auto& c : g.controls) {
    if (!in_range(c.qubit)) throw LayoutError("control qubit " + std::to_string(c.qubit) + " out of range");
    if (c.qubit == g.target) throw LayoutError("control coincides with target");
    seen.push_back(c.qubit);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw LayoutError("duplicate control qubit");
  }
}

// Ordered gate list over a register layout. Gates are checked on append, so
// a Circuit value is always well formed.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(RegisterLayout layout) : layout_(layout) {}

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Gate>& gates() const { return gates_; }
  int num_qubits() const { return layout_.total(); }

  void append(Gate g) {
    validate_gate(g, layout_.total());
    gates_.push_back(std::move(g));
  }

  void reserve(std::size_t count) { gates_.reserve(count); }

  bool operator==(const Circuit&) const = default;

 private:
  RegisterLayout layout_;
  std::vector<Gate> gates_;
};

inline Circuit new_circuit(int q, int n) { return Circuit(RegisterLayout(q, n)); }

// H on every position qubit. The identity factors on the value and auxiliary
// qubits are implicit.
inline void append_hadamard_wall(Circuit& c) {
  const auto& l = c.layout();
  for (int k = 0; k < l.n; ++k) c.append(hadamard(l.y_qubit(k)));
  for (int k = 0; k < l.n; ++k) c.append(hadamard(l.x_qubit(k)));
}

struct GateCensus {
  std::int64_t hadamard = 0;
  std::int64_t cnot = 0;          // X with exactly one control
  std::int64_t toffoli_like = 0;  // X with two or more controls
  std::int64_t not_gate = 0;      // bare X
  std::int64_t identity = 0;

  std::int64_t total() const { return hadamard + cnot + toffoli_like + not_gate + identity; }
  bool operator==(const GateCensus&) const = default;
};

inline GateCensus gate_census(const Circuit& c) {
  GateCensus g;
  for (const auto& gate : c.gates()) {
    switch (gate.kind) {
      case GateKind::identity: ++g.identity; break;
      case GateKind::hadamard: ++g.hadamard; break;
      case GateKind::x:
        if (gate.controls.empty()) ++g.not_gate;
        else if (gate.controls.size() == 1) ++g.cnot;
        else ++g.toffoli_like;
        break;
    }
  }
  return g;
}

inline nlohmann::ordered_json census_to_json(const GateCensus& g) {
  nlohmann::ordered_json j;
  j["hadamard"] = g.hadamard;
  j["cnot"] = g.cnot;
  j["toffoli_like"] = g.toffoli_like;
  j["not"] = g.not_gate;
  j["identity"] = g.identity;
  return j;
}

// ---- canonical JSON ----------------------------------------------------
//
// {"layout":{"q":8,"n":1},"gates":[{"kind":"x","target":0,"controls":[[9,0],[10,1]]}]}
// kind is "id", "h" or "x"; a control is [qubit, polarity] with polarity 1
// for a positive (|1>) control and 0 for a negative (|0>) one.

inline std::string_view kind_name(GateKind k) {
  switch (k) {
    case GateKind::identity: return "id";
    case GateKind::hadamard: return "h";
    case GateKind::x: return "x";
  }
  return "?";
}

inline std::string export_json(const Circuit& c) {
  std::string out;
  out.reserve(64 + c.gates().size() * 48);
  out += "{\"layout\":{\"q\":" + std::to_string(c.layout().q) +
         ",\"n\":" + std::to_string(c.layout().n) + "},\"gates\":[";
  bool first = true;
  for (const auto& g : c.gates()) {
    if (!first) out += ',';
    first = false;
    out += "{\"kind\":\"";
    out += kind_name(g.kind);
    out += "\",\"target\":" + std::to_string(g.target) + ",\"controls\":[";
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      if (i) out += ',';
      out += '[' + std::to_string(g.controls[i].qubit) + ',' +
             (g.controls[i].polarity == Polarity::positive ? '1' : '0') + ']';
    }
    out += "]}";
  }
  out += "]}";
  return out;
}

inline Circuit parse_circuit_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
  try {
    const auto& lay = j.at("layout");
    Circuit c(RegisterLayout(lay.at("q").get<int>(), lay.at("n").get<int>()));
    const auto& gates = j.at("gates");
    c.reserve(gates.size());
    for (const auto& jg : gates) {
      Gate g;
      const auto kind = jg.at("kind").get<std::string>();
      if (kind == "id") g.kind = GateKind::identity;
      else if (kind == "h") g.kind = GateKind::hadamard;
      else if (kind == "x") g.kind = GateKind::x;
      else throw ParseError("circuit JSON: unknown gate kind '" + kind + "'");
      g.target = jg.at("target").get<int>();
      for (const auto& jc : jg.at("controls")) {
        if (!jc.is_array() || jc.size() != 2) throw ParseError("circuit JSON: control must be [qubit, polarity]");
        const int pol = jc[1].get<int>();
        if (pol != 0 && pol != 1) throw ParseError("circuit JSON: polarity must be 0 or 1");
        g.controls.push_back({jc[0].get<int>(), pol ? Polarity::positive : Polarity::negative});
      }
      c.append(std::move(g));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace qimc
