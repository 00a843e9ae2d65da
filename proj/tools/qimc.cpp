// qimc: block-transform quantum image compression toolkit.
//
//   qimc encode   <image.pgm> [--scheme S] [--q Q] [--output DIR]
//   qimc decode   <coeffmap.json> --output out.pgm [--reference orig.pgm]
//   qimc verify   <circuit.json> <coeffmap.json> [--qubit-budget N]
//   qimc rd-curve <image.pgm> [--scheme S]... [--q Q]... [--output curve.csv]

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qimc/cli.hpp"

int main(int argc, char** argv) {
  using namespace qimc::cli;

  CLI::App app{"Quantum image compression: block DCT/DWT + GQIR/EFRQI circuit encoding"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string block_bits = "none";
  bool no_center = false;

  auto add_pipeline_flags = [&](CLI::App* sub, bool many_schemes) {
    if (many_schemes) {
      sub->add_option("--scheme", cfg.schemes, "scheme(s): dct-gqir, dct-efrqi, dwt8-gqir, dwt64-gqir, "
                                                "dwt8-efrqi, raw-efrqi, raw-gqir (repeatable)");
      sub->add_option("--q", cfg.q_factors, "quantization factor(s) (repeatable)");
    } else {
      sub->add_option("--scheme", cfg.schemes, "scheme: dct-gqir, dct-efrqi, dwt8-gqir, dwt64-gqir, "
                                                "dwt8-efrqi, raw-efrqi, raw-gqir")
          ->expected(1);
      sub->add_option("--q", cfg.q_factors, "quantization factor")->expected(1);
    }
    sub->add_flag("--no-center", no_center, "do not subtract 128 before the block transform");
    sub->add_option("--block-bits", block_bits, "block-address accounting: none | log2")
        ->check(CLI::IsMember({"none", "log2"}));
    sub->add_option("--value-qubits", cfg.value_qubits, "value register width (default 8)");
  };

  auto* encode = app.add_subcommand("encode", "build the preparation circuit, sidecar and cost report");
  encode->add_option("input", cfg.input, "input PGM")->required();
  encode->add_option("--output", cfg.output, "output directory (default .)");
  encode->add_flag("--qasm", cfg.write_qasm, "also write circuit.qasm");
  encode->add_flag("--decompose-mcx", cfg.decompose_mcx, "expand multi-controlled X into Toffolis in QASM");
  add_pipeline_flags(encode, false);

  auto* decode = app.add_subcommand("decode", "reconstruct an image from a coefficient sidecar");
  decode->add_option("input", cfg.input, "coeffmap.json")->required();
  decode->add_option("--output", cfg.output, "output PGM")->required();
  decode->add_option("--reference", cfg.reference, "original image for PSNR");
  add_pipeline_flags(decode, false);

  auto* verify = app.add_subcommand("verify", "simulate a circuit and check the prepared state");
  verify->add_option("circuit", cfg.input, "circuit.json")->required();
  verify->add_option("coeffmap", cfg.coeffmap, "coeffmap.json")->required();
  verify->add_option("--qubit-budget", cfg.qubit_budget, "largest simulated register (default 24)");

  auto* rd = app.add_subcommand("rd-curve", "rate-distortion sweep as CSV");
  rd->add_option("input", cfg.input, "input PGM")->required();
  rd->add_option("--output", cfg.output, "CSV path (default stdout)");
  add_pipeline_flags(rd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  cfg.centered = !no_center;
  cfg.block_bits = qimc::parse_block_bits(block_bits);

  if (*encode) return run_encode(cfg, std::cout, std::cerr);
  if (*decode) return run_decode(cfg, std::cout, std::cerr);
  if (*verify) return run_verify(cfg, std::cout, std::cerr);
  return run_rd_curve(cfg, std::cout, std::cerr);
}
