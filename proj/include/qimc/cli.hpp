#pragma once

// Command implementations behind the `qimc` executable. Argument parsing
// lives in tools/qimc.cpp; everything here takes a parsed RunConfig and
// returns a process exit code so the commands can be driven from tests.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qimc/circuit.hpp"
#include "qimc/encoders.hpp"
#include "qimc/error.hpp"
#include "qimc/imageio.hpp"
#include "qimc/metrics.hpp"
#include "qimc/qasm.hpp"
#include "qimc/qsim.hpp"

namespace qimc::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kCapacity = 3 };

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path coeffmap;  // verify: sidecar path
  std::filesystem::path output;
  std::vector<std::string> schemes;
  std::vector<int> q_factors;
  bool centered = true;
  BlockBits block_bits = BlockBits::none;
  int qubit_budget = kDefaultQubitBudget;
  int value_qubits = 8;
  std::optional<std::filesystem::path> reference;
  bool write_qasm = false;
  bool decompose_mcx = false;
};

inline std::string_view read_text(const qimc::Bytes& b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

inline PipelineOptions pipeline_options(const RunConfig& cfg) {
  return {cfg.centered, cfg.block_bits, cfg.value_qubits};
}

inline bool check_common(const RunConfig& cfg, std::ostream& err) {
  for (int q : cfg.q_factors) {
    if (q < 1) {
      err << "error: quantization factor must be >= 1 (got " << q << ")\n";
      return false;
    }
  }
  if (cfg.value_qubits < 1 || cfg.value_qubits > 16) {
    err << "error: --value-qubits must be in [1, 16]\n";
    return false;
  }
  try {
    for (const auto& s : cfg.schemes) parse_scheme(s);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return false;
  }
  return true;
}

/// encode: writes circuit.json, coeffmap.json and report.json into the
/// output directory (optionally circuit.qasm).
inline int run_encode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!check_common(cfg, err)) return kUsage;
  if (cfg.schemes.size() > 1 || cfg.q_factors.size() > 1) {
    err << "error: encode takes a single --scheme and a single --q\n";
    return kUsage;
  }
  const Scheme scheme = cfg.schemes.empty() ? Scheme::dct_efrqi : parse_scheme(cfg.schemes.front());
  const int qf = cfg.q_factors.empty() ? 16 : cfg.q_factors.front();
  try {
    const auto img = load_pgm(read_file(cfg.input));
    const auto& si = info(scheme);
    const auto map = build_coeff_map(img, si.transform, QuantSpec(qf), {cfg.centered, (1 << cfg.value_qubits) - 1});
    const auto enc = encode(map, si.encoding, cfg.value_qubits, cfg.block_bits);

    const auto dir = cfg.output.empty() ? std::filesystem::path(".") : cfg.output;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "circuit.json", export_json(enc.circuit));
    write_file_atomic(dir / "coeffmap.json", coeffmap_to_json(map));

    nlohmann::ordered_json rep;
    rep["scheme"] = std::string(si.name);
    rep["q_factor"] = map.q_factor;
    rep["value_qubits"] = cfg.value_qubits;
    rep["n"] = map.n;
    rep["qubits"] = enc.circuit.num_qubits();
    rep["width"] = map.width;
    rep["height"] = map.height;
    const auto cost = report_to_json(enc.report);
    for (const auto& [k, v] : cost.items()) rep[k] = v;
    write_file_atomic(dir / "report.json", rep.dump(2) + "\n");
    if (cfg.write_qasm) {
      write_file_atomic(dir / "circuit.qasm", export_qasm(enc.circuit, {cfg.decompose_mcx}));
    }
    out << si.name << " q=" << map.q_factor << " qubits=" << enc.circuit.num_qubits()
        << " nonzero=" << enc.report.nonzero_count << " bpp=" << format_fixed6(enc.report.bpp) << '\n';
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

/// decode: sidecar -> PGM cropped to the original size; prints PSNR against
/// --reference when given.
inline int run_decode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!check_common(cfg, err)) return kUsage;
  if (cfg.output.empty()) {
    err << "error: decode needs --output\n";
    return kUsage;
  }
  try {
    const auto map = parse_coeffmap_json(read_text(read_file(cfg.input)));
    if (!cfg.schemes.empty() && info(parse_scheme(cfg.schemes.front())).transform != map.transform) {
      err << "error: sidecar was built with transform " << to_string(map.transform) << ", not scheme "
          << cfg.schemes.front() << '\n';
      return kFailure;
    }
    if (!cfg.q_factors.empty() && map.transform != Transform::none && cfg.q_factors.front() != map.q_factor) {
      err << "error: sidecar was quantized with Q=" << map.q_factor << '\n';
      return kFailure;
    }
    const auto img = decode_coeff_map(map);
    write_file_atomic(cfg.output, save_pgm(img, true));
    if (cfg.reference) {
      const auto ref = load_pgm(read_file(*cfg.reference));
      out << "psnr_db=" << format_fixed6(psnr(mse(ref, img))) << '\n';
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

/// verify: simulates the circuit and checks it prepares the sidecar's state.
inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto circuit = parse_circuit_json(read_text(read_file(cfg.input)));
    const auto map = parse_coeffmap_json(read_text(read_file(cfg.coeffmap)));
    const auto state = simulate(circuit, cfg.qubit_budget);
    const auto rep = verify_prepared_state(state, map);
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.3e", rep.max_deviation);
    out << (rep.ok ? "ok" : "FAILED") << " qubits=" << circuit.num_qubits() << " max_deviation=" << dev << '\n';
    return rep.ok ? kOk : kFailure;
  } catch (const CapacityError& e) {
    err << "error: " << e.what()
        << "\nstatevector verification is limited to small images; rate accounting does not need it\n";
    return kCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

inline std::string rd_curve_csv(const GrayImage& img, const RunConfig& cfg) {
  std::vector<RDPoint> points;
  const std::vector<std::string> schemes =
      cfg.schemes.empty() ? std::vector<std::string>{"dct-gqir", "dct-efrqi"} : cfg.schemes;
  const auto qs = cfg.q_factors.empty() ? kDefaultQFactors : cfg.q_factors;
  for (const auto& s : schemes) {
    const auto curve = rd_curve(img, parse_scheme(s), qs, pipeline_options(cfg));
    points.insert(points.end(), curve.begin(), curve.end());
  }
  return emit_csv(points);
}

/// rd-curve: one CSV row per (scheme, Q); written atomically.
inline int run_rd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!check_common(cfg, err)) return kUsage;
  try {
    const auto img = load_pgm(read_file(cfg.input));
    const auto csv = rd_curve_csv(img, cfg);
    if (cfg.output.empty()) {
      out << csv;
    } else {
      write_file_atomic(cfg.output, csv);
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace qimc::cli
