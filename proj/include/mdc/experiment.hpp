#ifndef MDC_EXPERIMENT_HPP
#define MDC_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "mdc/markov.hpp"
#include "mdc/pipeline.hpp"

namespace mdc {

/// Sequence file format: magic "MDSQ", n u32 (LE), A u8, one byte per symbol.
void write_sequence_file(const std::string& path, const Sequence& s);
Sequence read_sequence_file(const std::string& path);

struct ExperimentConfig {
  MarkovSourceSpec source;
  int k = 5;
  int k1 = 1;
  LagrangianWeights weights;
  AnnealSchedule schedule = AnnealSchedule::power_law(1.0, 0.1);
  std::uint64_t iterations = 0;
  ThetaSplit theta;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = ".";

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
};

struct SeedResult {
  std::uint64_t seed = 0;
  RateReport rates;
  EnergyBreakdown energy;
  Theorem0Verdict theorem0;
  std::vector<double> trace;
};

/// Full pipeline per seed; writes summary.csv and trace_<seed>.csv under
/// output_dir. Seeds run in parallel; outputs merged in seed-list order.
std::vector<SeedResult> run_experiment(const ExperimentConfig& cfg);

struct SweepPoint {
  LagrangianWeights weights;
  std::vector<SeedResult> results;
};

/// One run_experiment per weight setting; writes sweep.csv.
std::vector<SweepPoint> sweep(const ExperimentConfig& base,
                              const std::vector<LagrangianWeights>& grid);

std::string summary_csv(const std::vector<SeedResult>& results);
std::string trace_csv(const SeedResult& r, int block_length);

}  // namespace mdc

#endif  // MDC_EXPERIMENT_HPP
