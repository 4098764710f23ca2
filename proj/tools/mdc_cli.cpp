#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdc/experiment.hpp"

namespace {

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct ScheduleOpts {
  std::string variant = "power_law";
  double c = 0.0;  // 0 -> default 2n
  double exponent = 0.1;
  double t0 = 1.0;
  double beta = 1.0;

  mdc::AnnealSchedule build(int n) const {
    if (variant == "power_law")
      return mdc::AnnealSchedule::power_law(c > 0.0 ? c : 2.0 * n, exponent);
    if (variant == "logarithmic") return mdc::AnnealSchedule::logarithmic(t0, n);
    if (variant == "constant") return mdc::AnnealSchedule::constant(beta);
    throw std::runtime_error("unknown schedule variant: " + variant);
  }
  void attach(CLI::App* app) {
    app->add_option("--schedule", variant, "power_law|logarithmic|constant")
        ->check(CLI::IsMember({"power_law", "logarithmic", "constant"}));
    app->add_option("--schedule-c", c, "power-law coefficient (default 2n)");
    app->add_option("--schedule-exponent", exponent, "power-law exponent");
    app->add_option("--schedule-T0", t0, "logarithmic schedule T0");
    app->add_option("--schedule-beta", beta, "constant schedule beta");
  }
};

struct WeightOpts {
  mdc::LagrangianWeights w;
  void attach(CLI::App* app) {
    app->add_option("--gamma1", w.gamma1);
    app->add_option("--gamma2", w.gamma2);
    app->add_option("--gamma0", w.gamma0);
    app->add_option("--alpha1", w.alpha1);
    app->add_option("--alpha2", w.alpha2);
    app->add_option("--alpha0", w.alpha0);
  }
};

mdc::ThetaSplit make_theta(double theta) {
  if (theta < 0.0 || theta > 1.0) throw std::runtime_error("theta must be in [0, 1]");
  mdc::ThetaSplit t;
  t.den = 1000000;
  t.num = static_cast<std::uint32_t>(std::lround(theta * t.den));
  return t;
}

void print_report(const mdc::RateReport& rep, const mdc::Theorem0Verdict& v) {
  std::printf("H_k(xhat1)   = %.6f\nH_k(xhat2)   = %.6f\nH_kk1(xhat0) = %.6f\n", rep.hk1, rep.hk2,
              rep.hkk1);
  std::printf("d1 = %.6f  d2 = %.6f  d0 = %.6f\n", rep.d1, rep.d2, rep.d0);
  std::printf("R1 = %.6f  R2 = %.6f  (bits/symbol, headers included)\n", rep.r1, rep.r2);
  std::printf("rate-accounting check: %s  (margins %.6f, %.6f, %.6f)\n", v.pass ? "pass" : "FAIL",
              v.margin1, v.margin2, v.margin_sum);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal multiple-description coding of discrete sequences"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a Markov source into a sequence file");
  int gen_n = 10000;
  double gen_p = 0.2;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "sequence length")->required();
  gen->add_option("--p", gen_p, "symmetric binary transition probability");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output sequence file")->required();

  // anneal
  auto* ann = app.add_subcommand("anneal", "Run the Gibbs annealer on a sequence file");
  std::string ann_in, ann_prefix = "anneal";
  int ann_k = 5, ann_k1 = 1;
  std::uint64_t ann_r = 0, ann_seed = 1;
  WeightOpts ann_w;
  ScheduleOpts ann_s;
  ann->add_option("--in", ann_in, "input sequence file")->required();
  ann->add_option("--k", ann_k, "context order");
  ann->add_option("--k1", ann_k1, "side window half-width");
  ann->add_option("--r", ann_r, "iterations (default 50n)");
  ann->add_option("--seed", ann_seed, "RNG seed");
  ann->add_option("--out-prefix", ann_prefix, "prefix for xhat1/xhat2/xhat0 files and trace CSV");
  ann_w.attach(ann);
  ann_s.attach(ann);

  // encode
  auto* enc = app.add_subcommand("encode", "Block MD encode: sequence file -> two message files");
  std::string enc_in, enc_m1, enc_m2;
  int enc_k = 5, enc_k1 = 1;
  std::uint64_t enc_r = 0, enc_seed = 1;
  double enc_theta = 0.5;
  WeightOpts enc_w;
  ScheduleOpts enc_s;
  enc->add_option("--in", enc_in)->required();
  enc->add_option("--m1", enc_m1, "message 1 output file")->required();
  enc->add_option("--m2", enc_m2, "message 2 output file")->required();
  enc->add_option("--k", enc_k);
  enc->add_option("--k1", enc_k1);
  enc->add_option("--r", enc_r, "iterations (default 50n)");
  enc->add_option("--seed", enc_seed);
  enc->add_option("--theta", enc_theta, "fraction of refinement bits in M1");
  enc_w.attach(enc);
  enc_s.attach(enc);

  // decoders
  std::string d1_m, d1_out;
  auto* dec1 = app.add_subcommand("decode1", "Side decoder 1: message -> sequence file");
  dec1->add_option("--m1", d1_m)->required();
  dec1->add_option("--out", d1_out)->required();
  std::string d2_m, d2_out;
  auto* dec2 = app.add_subcommand("decode2", "Side decoder 2: message -> sequence file");
  dec2->add_option("--m2", d2_m)->required();
  dec2->add_option("--out", d2_out)->required();
  std::string d0_m1, d0_m2, d0_out;
  auto* dec0 = app.add_subcommand("decode0", "Central decoder: both messages -> sequence file");
  dec0->add_option("--m1", d0_m1)->required();
  dec0->add_option("--m2", d0_m2)->required();
  dec0->add_option("--out", d0_out)->required();

  // experiment / sweep
  auto* exp = app.add_subcommand("experiment", "Run a JSON-configured experiment (CSV output)");
  std::string exp_cfg;
  exp->add_option("--config", exp_cfg, "JSON config file")->required();
  auto* swp = app.add_subcommand("sweep", "Run a Lagrangian-weight sweep (CSV output)");
  std::string swp_cfg;
  swp->add_option("--config", swp_cfg, "JSON config with a \"grid\" array of weight overrides")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto spec = mdc::MarkovSourceSpec::symmetric_binary(gen_p, gen_n, gen_seed);
      mdc::write_sequence_file(gen_out, mdc::generate_markov(spec));
      std::printf("wrote %s (n=%d, p=%g, seed=%llu)\n", gen_out.c_str(), gen_n, gen_p,
                  static_cast<unsigned long long>(gen_seed));
    } else if (*ann) {
      const mdc::Sequence x = mdc::read_sequence_file(ann_in);
      const auto d = mdc::DistortionMeasure::hamming(x.alphabet);
      const std::uint64_t r = ann_r ? ann_r : 50ull * static_cast<std::uint64_t>(x.size());
      ann_w.w.validate();
      const auto report =
          mdc::anneal(x, ann_w.w, d, ann_k, ann_k1, ann_s.build(x.size()), r, ann_seed);
      mdc::write_sequence_file(ann_prefix + "_xhat1.mdsq", report.xhat1);
      mdc::write_sequence_file(ann_prefix + "_xhat2.mdsq", report.xhat2);
      mdc::write_sequence_file(ann_prefix + "_xhat0.mdsq", report.xhat0);
      std::string csv = "t,total\n";
      for (std::size_t i = 0; i < report.trace.size(); ++i)
        csv += std::to_string(i * static_cast<std::size_t>(x.size())) + "," +
               std::to_string(report.trace[i]) + "\n";
      std::ofstream(ann_prefix + "_trace.csv") << csv;
      const auto& e = report.final_energy;
      std::printf("final energy %.6f = (Hk %.4f, %.4f; Hkk1 %.4f; d %.4f, %.4f, %.4f)\n", e.total,
                  e.hk_y, e.hk_z, e.hkk1_w, e.d_y, e.d_z, e.d_w);
    } else if (*enc) {
      const mdc::Sequence x = mdc::read_sequence_file(enc_in);
      const auto d = mdc::DistortionMeasure::hamming(x.alphabet);
      const std::uint64_t r = enc_r ? enc_r : 50ull * static_cast<std::uint64_t>(x.size());
      enc_w.w.validate();
      const auto res = mdc::md_encode(x, enc_w.w, d, enc_k, enc_k1, enc_s.build(x.size()), r,
                                      make_theta(enc_theta), enc_seed);
      write_bytes(enc_m1, res.messages.m1.serialize());
      write_bytes(enc_m2, res.messages.m2.serialize());
      print_report(res.rates, mdc::theorem0_check(res.rates));
    } else if (*dec1) {
      mdc::write_sequence_file(d1_out, mdc::md_decode_side(mdc::MDMessage::parse(read_bytes(d1_m))));
    } else if (*dec2) {
      mdc::write_sequence_file(d2_out, mdc::md_decode_side(mdc::MDMessage::parse(read_bytes(d2_m))));
    } else if (*dec0) {
      const auto m1 = mdc::MDMessage::parse(read_bytes(d0_m1));
      const auto m2 = mdc::MDMessage::parse(read_bytes(d0_m2));
      mdc::write_sequence_file(d0_out, mdc::md_decode_central(m1, m2));
    } else if (*exp) {
      const auto cfg = mdc::ExperimentConfig::from_json_file(exp_cfg);
      const auto results = mdc::run_experiment(cfg);
      std::printf("%s", mdc::summary_csv(results).c_str());
    } else if (*swp) {
      const auto cfg = mdc::ExperimentConfig::from_json_file(swp_cfg);
      std::ifstream in(swp_cfg);
      const auto j = nlohmann::json::parse(in);
      std::vector<mdc::LagrangianWeights> grid;
      for (const auto& g : j.at("grid")) {
        mdc::LagrangianWeights w = cfg.weights;
        w.gamma1 = g.value("gamma1", w.gamma1);
        w.gamma2 = g.value("gamma2", w.gamma2);
        w.gamma0 = g.value("gamma0", w.gamma0);
        w.alpha1 = g.value("alpha1", w.alpha1);
        w.alpha2 = g.value("alpha2", w.alpha2);
        w.alpha0 = g.value("alpha0", w.alpha0);
        grid.push_back(w);
      }
      const auto points = mdc::sweep(cfg, grid);
      std::printf("sweep complete: %zu grid points, results under %s\n", points.size(),
                  cfg.output_dir.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
