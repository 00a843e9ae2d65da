#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qimc/circuit.hpp"
#include "qimc/qasm.hpp"
#include "qimc/qsim.hpp"

using namespace qimc;

namespace {

Circuit random_circuit(std::mt19937_64& rng, int q, int n, int gates, int max_controls) {
  Circuit c = new_circuit(q, n);
  const int total = c.num_qubits();
  std::uniform_int_distribution<int> qubit(0, total - 1), kind(0, 3), coin(0, 1);
  std::uniform_int_distribution<int> nctl(0, std::min(max_controls, total - 1));
  for (int i = 0; i < gates; ++i) {
    const int target = qubit(rng);
    if (kind(rng) == 0) {
      c.append(hadamard(target));
      continue;
    }
    std::vector<int> pool;
    for (int qb = 0; qb < total; ++qb)
      if (qb != target) pool.push_back(qb);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Control> ctl;
    const int k = nctl(rng);
    for (int j = 0; j < k; ++j) ctl.push_back({pool[j], coin(rng) ? Polarity::positive : Polarity::negative});
    c.append(x_gate(target, ctl));
  }
  return c;
}

double max_diff(const StateVector& a, const StateVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Layout, QubitCounts) {
  EXPECT_EQ(new_circuit(8, 4).num_qubits(), 17);
  EXPECT_EQ(new_circuit(8, 1).num_qubits(), 11);
  EXPECT_THROW(new_circuit(0, 4), LayoutError);
  EXPECT_THROW(new_circuit(8, 0), LayoutError);
  const RegisterLayout l(8, 2);
  EXPECT_EQ(l.aux_qubit(), 8);
  EXPECT_EQ(l.y_qubit(0), 9);
  EXPECT_EQ(l.x_qubit(1), 12);
}

TEST(Layout, PositionControlsAreMsbFirstYThenX) {
  const RegisterLayout l(8, 2);
  const auto c = position_controls(l, 2, 1);  // y=10b, x=01b
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], (Control{9, Polarity::positive}));
  EXPECT_EQ(c[1], (Control{10, Polarity::negative}));
  EXPECT_EQ(c[2], (Control{11, Polarity::negative}));
  EXPECT_EQ(c[3], (Control{12, Polarity::positive}));
}

TEST(Circuit, GateValidation) {
  Circuit c = new_circuit(1, 1);  // 4 qubits
  EXPECT_THROW(c.append(hadamard(4)), LayoutError);
  EXPECT_THROW(c.append(x_gate(0, {{0, Polarity::positive}})), LayoutError);
  EXPECT_THROW(c.append(x_gate(0, {{1, Polarity::positive}, {1, Polarity::negative}})), LayoutError);
  EXPECT_THROW(c.append(Gate{GateKind::hadamard, 0, {{1, Polarity::positive}}}), LayoutError);
  EXPECT_NO_THROW(c.append(x_gate(0, {{1, Polarity::positive}, {3, Polarity::negative}})));
}

TEST(HadamardWall, Counts) {
  Circuit c = new_circuit(8, 1);
  append_hadamard_wall(c);
  ASSERT_EQ(c.gates().size(), 2u);
  EXPECT_EQ(c.gates()[0], hadamard(9));
  EXPECT_EQ(c.gates()[1], hadamard(10));

  Circuit c4 = new_circuit(8, 4);
  append_hadamard_wall(c4);
  EXPECT_EQ(gate_census(c4), (GateCensus{8, 0, 0, 0, 0}));
}

TEST(Census, EmptyAndPartition) {
  EXPECT_EQ(gate_census(new_circuit(8, 2)), GateCensus{});
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto c = random_circuit(rng, 3, 2, 40, 4);
    const auto g = gate_census(c);
    EXPECT_EQ(g.total(), static_cast<std::int64_t>(c.gates().size()));
  }
}

TEST(Json, EmptyCircuitCanonical) {
  EXPECT_EQ(export_json(new_circuit(8, 1)), R"({"layout":{"q":8,"n":1},"gates":[]})");
}

TEST(Json, GateEncoding) {
  Circuit c = new_circuit(1, 1);
  c.append(hadamard(2));
  c.append(x_gate(0, {{2, Polarity::positive}, {3, Polarity::negative}}));
  EXPECT_EQ(export_json(c),
            R"({"layout":{"q":1,"n":1},"gates":[{"kind":"h","target":2,"controls":[]},)"
            R"({"kind":"x","target":0,"controls":[[2,1],[3,0]]}]})");
}

TEST(Json, RoundTripAndStable) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 30; ++t) {
    const auto c = random_circuit(rng, 4, 2, 60, 5);
    const auto text = export_json(c);
    EXPECT_EQ(parse_circuit_json(text), c);
    EXPECT_EQ(export_json(c), text);
  }
}

TEST(Json, RejectsMalformed) {
  EXPECT_THROW(parse_circuit_json("{"), ParseError);
  EXPECT_THROW(parse_circuit_json(R"({"layout":{"q":8},"gates":[]})"), ParseError);
  EXPECT_THROW(parse_circuit_json(R"({"layout":{"q":8,"n":1},"gates":[{"kind":"z","target":0,"controls":[]}]})"),
               ParseError);
  EXPECT_THROW(parse_circuit_json(R"({"layout":{"q":8,"n":1},"gates":[{"kind":"h","target":11,"controls":[]}]})"),
               LayoutError);
  EXPECT_THROW(parse_circuit_json(R"({"layout":{"q":0,"n":1},"gates":[]})"), LayoutError);
}

TEST(Qasm, BasicLines) {
  Circuit wall = new_circuit(8, 1);
  append_hadamard_wall(wall);
  const auto q = export_qasm(wall);
  EXPECT_NE(q.find("OPENQASM 2.0;"), std::string::npos);
  EXPECT_NE(q.find("qreg q[11];"), std::string::npos);
  EXPECT_NE(q.find("h q[9];\nh q[10];\n"), std::string::npos);

  Circuit cx = new_circuit(1, 1);
  cx.append(x_gate(0, {{1, Polarity::positive}}));
  EXPECT_NE(export_qasm(cx).find("cx q[1],q[0];"), std::string::npos);

  Circuit neg = new_circuit(1, 1);
  neg.append(x_gate(0, {{2, Polarity::negative}}));
  EXPECT_NE(export_qasm(neg).find("x q[2];\ncx q[2],q[0];\nx q[2];\n"), std::string::npos);
}

TEST(Qasm, OpaqueMcxByDefault) {
  Circuit c = new_circuit(8, 2);
  c.append(x_gate(0, position_controls(c.layout(), 3, 3)));
  const auto q = export_qasm(c);
  EXPECT_NE(q.find("opaque mcx_4 a0,a1,a2,a3,a4;"), std::string::npos);
  EXPECT_NE(q.find("mcx_4 q[9],q[10],q[11],q[12],q[0];"), std::string::npos);
  const auto d = export_qasm(c, {true});
  EXPECT_EQ(d.find("mcx"), std::string::npos);
  EXPECT_NE(d.find("ccx"), std::string::npos);
}

// Polarity expansion and Toffoli decomposition must not change the unitary:
// compare on many random input states, not just |0...0>.
TEST(Qasm, ExpansionPreservesAction) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 60; ++t) {
    const int q = 1 + t % 3, n = 1 + t % 2;
    const auto c = random_circuit(rng, q, n, 25, q + 2 * n - 1);  // leave one spare qubit
    const auto flat = expand_negative_controls(c);
    const auto tof = decompose_multi_controlled(flat);
    for (const auto& gate : tof.gates()) ASSERT_LE(gate.controls.size(), 2u);

    StateVector a(c.layout()), b(c.layout()), d(c.layout());
    double norm = 0;
    for (auto& amp : a.amplitudes()) {
      amp = {g(rng), g(rng)};
      norm += std::norm(amp);
    }
    for (auto& amp : a.amplitudes()) amp /= std::sqrt(norm);
    b.amplitudes() = a.amplitudes();
    d.amplitudes() = a.amplitudes();
    apply_circuit(a, c);
    apply_circuit(b, flat);
    apply_circuit(d, tof);
    EXPECT_LT(max_diff(a, b), 1e-12);
    EXPECT_LT(max_diff(a, d), 1e-12);
  }
}

// Exhaustive basis-state check of the dirty-ancilla networks, including the
// split path taken when fewer than k-2 spare qubits exist.
TEST(Qasm, McxDecompositionExhaustive) {
  for (int k = 3; k <= 7; ++k) {
    for (int spare = 1; spare <= k - 2; ++spare) {
      const int total = k + 1 + spare;
      std::vector<Gate> net;
      std::vector<int> ctrls;
      for (int i = 0; i < k; ++i) ctrls.push_back(i);
      detail::emit_mcx(net, ctrls, k, total);
      for (std::size_t in = 0; in < (std::size_t{1} << total); ++in) {
        std::size_t s = in;
        for (const auto& gt : net) {
          bool fire = true;
          for (const auto& c : gt.controls) fire = fire && ((s >> c.qubit) & 1);
          if (fire) s ^= std::size_t{1} << gt.target;
        }
        const bool all = (in & ((std::size_t{1} << k) - 1)) == ((std::size_t{1} << k) - 1);
        ASSERT_EQ(s, all ? (in ^ (std::size_t{1} << k)) : in) << "k=" << k << " spare=" << spare;
      }
    }
  }
}
