#include "mdc/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"

namespace mdc {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_sequence_file(const std::string& path, const Sequence& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const char magic[4] = {'M', 'D', 'S', 'Q'};
  out.write(magic, 4);
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  char hdr[5];
  for (int i = 0; i < 4; ++i) hdr[i] = static_cast<char>(n >> (8 * i));
  hdr[4] = static_cast<char>(s.alphabet);
  out.write(hdr, 5);
  out.write(reinterpret_cast<const char*>(s.symbols.data()),
            static_cast<std::streamsize>(s.symbols.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Sequence read_sequence_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "MDSQ")
    throw std::runtime_error("bad sequence file magic: " + path);
  char hdr[5];
  in.read(hdr, 5);
  if (!in) throw std::runtime_error("truncated sequence header: " + path);
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(hdr[i])) << (8 * i);
  const int alphabet = static_cast<std::uint8_t>(hdr[4]);
  Sequence s;
  s.alphabet = alphabet;
  s.symbols.resize(n);
  in.read(reinterpret_cast<char*>(s.symbols.data()), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("truncated sequence payload: " + path);
  s.validate();
  return s;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  using nlohmann::json;
  const json j = json::parse(text);
  ExperimentConfig cfg;

  const json& src = j.at("source");
  cfg.source.n = src.at("n").get<int>();
  cfg.source.alphabet = src.value("alphabet", 2);
  cfg.source.seed = 0;
  if (src.contains("transition")) {
    cfg.source.transition = src.at("transition").get<std::vector<std::vector<double>>>();
  } else {
    const double p = src.at("p").get<double>();
    cfg.source.transition = {{1.0 - p, p}, {p, 1.0 - p}};
    cfg.source.alphabet = 2;
  }
  cfg.source.validate();

  cfg.k = j.value("k", 5);
  cfg.k1 = j.value("k1", 1);
  if (cfg.k1 > cfg.k) throw std::invalid_argument("config: need k1 <= k");

  if (j.contains("weights")) {
    const json& w = j.at("weights");
    cfg.weights.gamma1 = w.value("gamma1", 1.0);
    cfg.weights.gamma2 = w.value("gamma2", 1.0);
    cfg.weights.gamma0 = w.value("gamma0", 1.0);
    cfg.weights.alpha1 = w.value("alpha1", 1.0);
    cfg.weights.alpha2 = w.value("alpha2", 1.0);
    cfg.weights.alpha0 = w.value("alpha0", 1.0);
  }
  cfg.weights.validate();

  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    const std::string variant = s.at("variant").get<std::string>();
    if (variant == "power_law")
      cfg.schedule = AnnealSchedule::power_law(s.value("c", 2.0 * cfg.source.n), s.value("exponent", 0.1));
    else if (variant == "logarithmic")
      cfg.schedule = AnnealSchedule::logarithmic(s.at("T0").get<double>(), cfg.source.n);
    else if (variant == "constant")
      cfg.schedule = AnnealSchedule::constant(s.at("beta").get<double>());
    else
      throw std::invalid_argument("config: unknown schedule variant: " + variant);
  } else {
    cfg.schedule = AnnealSchedule::power_law_default(cfg.source.n);
  }

  cfg.iterations = j.value("r", static_cast<std::uint64_t>(50) * cfg.source.n);
  const double theta = j.value("theta", 0.5);
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("config: theta must be in [0, 1]");
  cfg.theta.den = 1000000;
  cfg.theta.num = static_cast<std::uint32_t>(std::lround(theta * cfg.theta.den));
  cfg.seeds = j.value("seeds", std::vector<std::uint64_t>{1, 2, 3});
  cfg.output_dir = j.value("output_dir", std::string("."));
  return cfg;
}

std::string summary_csv(const std::vector<SeedResult>& results) {
  std::string out = "seed,hk1,hk2,hkk1,d1,d2,d0,total,R1,R2,margin1,margin2,margin_sum\n";
  for (const auto& r : results) {
    out += std::to_string(r.seed) + "," + fmt(r.energy.hk_y) + "," + fmt(r.energy.hk_z) + "," +
           fmt(r.energy.hkk1_w) + "," + fmt(r.energy.d_y) + "," + fmt(r.energy.d_z) + "," +
           fmt(r.energy.d_w) + "," + fmt(r.energy.total) + "," + fmt(r.rates.r1) + "," +
           fmt(r.rates.r2) + "," + fmt(r.theorem0.margin1) + "," + fmt(r.theorem0.margin2) + "," +
           fmt(r.theorem0.margin_sum) + "\n";
  }
  return out;
}

std::string trace_csv(const SeedResult& r, int block_length) {
  std::string out = "t,total\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    out += std::to_string(i * static_cast<std::size_t>(block_length)) + "," + fmt(r.trace[i]) + "\n";
  return out;
}

namespace {

SeedResult run_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
  MarkovSourceSpec src = cfg.source;
  src.seed = seed;  // source realization tied to the experiment seed
  const Sequence x = generate_markov(src);
  const DistortionMeasure d = DistortionMeasure::hamming(x.alphabet);
  // annealer randomness independent of the source stream
  const std::uint64_t chain_seed = seed ^ 0x9e3779b97f4a7c15ull;
  MDEncodeResult enc = md_encode(x, cfg.weights, d, cfg.k, cfg.k1, cfg.schedule, cfg.iterations,
                                 cfg.theta, chain_seed);
  SeedResult r;
  r.seed = seed;
  r.rates = enc.rates;
  r.energy = enc.anneal.final_energy;
  r.theorem0 = theorem0_check(enc.rates);
  r.trace = enc.anneal.trace;
  return r;
}

}  // namespace

std::vector<SeedResult> run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::future<SeedResult>> futures;
  futures.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds)
    futures.push_back(std::async(std::launch::async, run_seed, std::cref(cfg), seed));
  std::vector<SeedResult> results;
  results.reserve(cfg.seeds.size());
  for (auto& f : futures) results.push_back(f.get());

  std::filesystem::create_directories(cfg.output_dir);
  const auto dir = std::filesystem::path(cfg.output_dir);
  write_text_file((dir / "summary.csv").string(), summary_csv(results));
  for (const auto& r : results)
    write_text_file((dir / ("trace_" + std::to_string(r.seed) + ".csv")).string(),
                    trace_csv(r, cfg.source.n));
  return results;
}

std::vector<SweepPoint> sweep(const ExperimentConfig& base,
                              const std::vector<LagrangianWeights>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    ExperimentConfig cfg = base;
    cfg.weights = grid[gi];
    cfg.output_dir = (std::filesystem::path(base.output_dir) / ("grid_" + std::to_string(gi))).string();
    SweepPoint pt;
    pt.weights = grid[gi];
    pt.results = run_experiment(cfg);
    points.push_back(std::move(pt));
  }
  std::string out =
      "grid_index,gamma1,gamma2,gamma0,alpha1,alpha2,alpha0,"
      "seed,hk1,hk2,hkk1,d1,d2,d0,total,R1,R2\n";
  for (std::size_t gi = 0; gi < points.size(); ++gi) {
    const auto& w = points[gi].weights;
    for (const auto& r : points[gi].results) {
      out += std::to_string(gi) + "," + fmt(w.gamma1) + "," + fmt(w.gamma2) + "," + fmt(w.gamma0) +
             "," + fmt(w.alpha1) + "," + fmt(w.alpha2) + "," + fmt(w.alpha0) + "," +
             std::to_string(r.seed) + "," + fmt(r.energy.hk_y) + "," + fmt(r.energy.hk_z) + "," +
             fmt(r.energy.hkk1_w) + "," + fmt(r.energy.d_y) + "," + fmt(r.energy.d_z) + "," +
             fmt(r.energy.d_w) + "," + fmt(r.energy.total) + "," + fmt(r.rates.r1) + "," +
             fmt(r.rates.r2) + "\n";
    }
  }
  std::filesystem::create_directories(base.output_dir);
  write_text_file((std::filesystem::path(base.output_dir) / "sweep.csv").string(), out);
  return points;
}

}  // namespace mdc
