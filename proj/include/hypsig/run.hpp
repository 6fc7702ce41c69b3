#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypsig/lattice.hpp"
#include "hypsig/stats.hpp"
#include "hypsig/ward.hpp"

namespace hypsig {

struct RunParameters {
  LatticeSpec spec;
  double beta = 1.0;
  UpdateKernel kernel = UpdateKernel::heat_bath();
  long sweeps = 0;           // measurement sweeps
  long thermalization = 0;   // discarded sweeps
  long measure_every = 1;
  std::uint64_t seed = 1;
  std::vector<double> alpha_grid = {1.0};
  std::vector<int> two_point_offsets = {1, 2, 4};
  bool ward_observables = false;
  int n_threads = 1;
};

// Time series of observable measurements with parameters and
// autocorrelation-aware error estimates.
struct RunRecord {
  RunParameters params;
  // observable name -> one value per measurement sweep
  std::map<std::string, std::vector<double>> series;
  // filled by finalize(): name -> summary
  std::map<std::string, ObservableStats> summaries;
  double acceptance_rate = 1.0;

  long measurements() const;
  void finalize();
};

std::string te_series_name(double alpha);
std::string two_point_series_name(int offset);
std::string ward_xf_name(const std::string& generator, WardProbe probe);
std::string ward_f_name(WardProbe probe);
std::string ward_xs_name(const std::string& generator);

// Measure the standard observable set on a snapshot into `series`.
void measure_into(const SpinField& field, const RunParameters& params,
                  std::map<std::string, std::vector<double>>& series);

// Thermalize, then sweep and measure every measure_every sweeps.  The sweep
// counter runs monotonically over thermalization + measurement sweeps, so
// identical parameters reproduce the record bit for bit.
RunRecord run_mc(const RunParameters& params);

// max(1000, 20 tau-hat) from a short action-density pilot run
long auto_thermalization(const RunParameters& params);

// Ward residual from a finished record
WardEstimate ward_residual_from_record(const RunRecord& record,
                                       int generator_index, WardProbe probe);

}  // namespace hypsig
