#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "qimc/circuit.hpp"

namespace qimc {

// Rewrites every negative control as X, positive-controlled gate, X.
inline Circuit expand_negative_controls(const Circuit& c) {
  Circuit out(c.layout());
  for (const auto& g : c.gates()) {
    std::vector<int> flipped;
    for (const auto& ctl : g.controls) {
      if (ctl.polarity == Polarity::negative) flipped.push_back(ctl.qubit);
    }
    for (int qb : flipped) out.append(x_gate(qb));
    Gate pos = g;
    for (auto& ctl : pos.controls) ctl.polarity = Polarity::positive;
    out.append(std::move(pos));
    for (int qb : flipped) out.append(x_gate(qb));
  }
  return out;
}

namespace detail {

inline Gate toffoli(int c1, int c2, int t) {
  return x_gate(t, {{c1, Polarity::positive}, {c2, Polarity::positive}});
}

// C^k X with k-2 borrowed (dirty) ancillas, 4(k-2) Toffolis; ancillas are
// returned to their input state.
inline void mcx_vchain(std::vector<Gate>& out, std::span<const int> c, int target,
                       std::span<const int> anc) {
  const auto k = static_cast<int>(c.size());
  auto C = [&](int i) { return c[i - 1]; };    // 1-based
  auto A = [&](int j) { return anc[j - 1]; };  // 1-based
  auto ladder = [&] {
    for (int i = k - 1; i >= 3; --i) out.push_back(toffoli(C(i), A(i - 2), A(i - 1)));
    out.push_back(toffoli(C(1), C(2), A(1)));
    for (int i = 3; i <= k - 1; ++i) out.push_back(toffoli(C(i), A(i - 2), A(i - 1)));
  };
  out.push_back(toffoli(C(k), A(k - 2), target));
  ladder();
  out.push_back(toffoli(C(k), A(k - 2), target));
  ladder();
}

inline void emit_mcx(std::vector<Gate>& out, std::vector<int> ctrls, int target, int total) {
  const auto k = ctrls.size();
  if (k == 0) { out.push_back(x_gate(target)); return; }
  if (k == 1) { out.push_back(x_gate(target, {{ctrls[0], Polarity::positive}})); return; }
  if (k == 2) { out.push_back(toffoli(ctrls[0], ctrls[1], target)); return; }

  const std::set<int> busy(ctrls.begin(), ctrls.end());
  std::vector<int> idle;
  for (int qb = 0; qb < total; ++qb) {
    if (qb != target && !busy.contains(qb)) idle.push_back(qb);
  }
  if (idle.size() >= k - 2) {
    mcx_vchain(out, ctrls, target, std::span(idle).first(k - 2));
    return;
  }
  if (idle.empty()) {
    throw LayoutError("cannot decompose a " + std::to_string(k) +
                      "-controlled X without at least one spare qubit");
  }
  // Split the controls in two halves around one borrowed qubit.
  const int spare = idle.front();
  const auto m1 = (k + 1) / 2;
  std::vector<int> first(ctrls.begin(), ctrls.begin() + static_cast<long>(m1));
  std::vector<int> second(ctrls.begin() + static_cast<long>(m1), ctrls.end());
  second.push_back(spare);
  for (int rep = 0; rep < 2; ++rep) {
    emit_mcx(out, first, spare, total);
    emit_mcx(out, second, target, total);
  }
}

}  // namespace detail

// Replaces X gates with three or more controls by Toffoli networks that
// borrow idle qubits. Negative controls must already be expanded.
inline Circuit decompose_multi_controlled(const Circuit& c) {
  Circuit out(c.layout());
  std::vector<Gate> buf;
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::x || g.controls.size() < 3) {
      out.append(g);
      continue;
    }
    std::vector<int> ctrls;
    for (const auto& ctl : g.controls) {
      if (ctl.polarity != Polarity::positive) {
        throw LayoutError("decompose_multi_controlled needs positive controls; expand polarity first");
      }
      ctrls.push_back(ctl.qubit);
    }
    buf.clear();
    detail::emit_mcx(buf, std::move(ctrls), g.target, c.num_qubits());
    for (auto& b : buf) out.append(std::move(b));
  }
  return out;
}

struct QasmOptions {
  // false: k >= 3 controls become an opaque "mcx_k" gate.
  bool decompose_mcx = false;
};

inline std::string export_qasm(const Circuit& c, QasmOptions opts = {}) {
  Circuit flat = expand_negative_controls(c);
  if (opts.decompose_mcx) flat = decompose_multi_controlled(flat);

  std::set<std::size_t> arities;
  for (const auto& g : flat.gates()) {
    if (g.kind == GateKind::x && g.controls.size() >= 3) arities.insert(g.controls.size());
  }

  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (auto k : arities) {
    out += "opaque mcx_" + std::to_string(k) + ' ';
    for (std::size_t i = 0; i <= k; ++i) out += (i ? ",a" : "a") + std::to_string(i);
    out += ";\n";
  }
  out += "qreg q[" + std::to_string(flat.num_qubits()) + "];\n";

  auto ref = [](int qb) { return "q[" + std::to_string(qb) + "]"; };
  for (const auto& g : flat.gates()) {
    switch (g.kind) {
      case GateKind::identity: out += "id " + ref(g.target) + ";\n"; break;
      case GateKind::hadamard: out += "h " + ref(g.target) + ";\n"; break;
      case GateKind::x: {
        const auto k = g.controls.size();
        if (k == 0) out += "x ";
        else if (k == 1) out += "cx ";
        else if (k == 2) out += "ccx ";
        else out += "mcx_" + std::to_string(k) + ' ';
        for (const auto& ctl : g.controls) out += ref(ctl.qubit) + ',';
        out += ref(g.target) + ";\n";
        break;
      }
    }
  }
  return out;
}

}  // namespace qimc
