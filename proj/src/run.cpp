#include "hypsig/run.hpp"

#include <cmath>
#include <cstdio>

#include "hypsig/errors.hpp"
#include "hypsig/observables.hpp"

namespace hypsig {

namespace {

std::string format_alpha(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", alpha);
  return buf;
}

}  // namespace

std::string te_series_name(double alpha) {
  return "Te_alpha_" + format_alpha(alpha);
}
std::string two_point_series_name(int offset) {
  return "two_point_r" + std::to_string(offset);
}
std::string ward_xf_name(const std::string& generator, WardProbe probe) {
  return "ward_XF_" + generator + "_" + to_string(probe);
}
std::string ward_f_name(WardProbe probe) {
  return "ward_F_" + to_string(probe);
}
std::string ward_xs_name(const std::string& generator) {
  return "ward_XS_" + generator;
}

long RunRecord::measurements() const {
  if (series.empty()) return 0;
  return static_cast<long>(series.begin()->second.size());
}

void RunRecord::finalize() {
  summaries.clear();
  for (const auto& [name, values] : series) summaries[name] = summarize(values);
}

void measure_into(const SpinField& field, const RunParameters& params,
                  std::map<std::string, std::vector<double>>& series) {
  const int center = field.spec.center_site();
  series["action_density"].push_back(action_density(field));
  series["sz_fluct"].push_back(sz_fluctuation(field));
  for (double alpha : params.alpha_grid) {
    const SpacelikeAxis e =
        SpacelikeAxis::with_rapidity(field.spec.target_dim, alpha);
    series[te_series_name(alpha)].push_back(
        order_parameter_Te(field, e, center));
  }
  int c[3];
  field.spec.coord(center, c);
  for (int off : params.two_point_offsets) {
    int cc[3] = {c[0], c[1], c[2]};
    cc[0] = c[0] + off;
    if (cc[0] >= field.spec.dims[0]) cc[0] = c[0] - off;
    if (cc[0] < 0) continue;
    series[two_point_series_name(off)].push_back(
        invariant_two_point(field, center, field.spec.index(cc)));
  }
  if (params.ward_observables) {
    const int n_gen = generator_count(field.spec.target_dim);
    for (WardProbe probe : registered_probes())
      series[ward_f_name(probe)].push_back(probe_value(field, probe));
    for (int a = 0; a < n_gen; ++a) {
      const Generator g = generator_basis(field.spec.target_dim, a);
      series[ward_xs_name(g.name)].push_back(action_killing_sum(field, g));
      for (WardProbe probe : registered_probes())
        series[ward_xf_name(g.name, probe)].push_back(
            probe_killing_sum(field, probe, g));
    }
  }
}

RunRecord run_mc(const RunParameters& params) {
  params.spec.validate();
  if (params.sweeps < 0 || params.thermalization < 0 ||
      params.measure_every < 1)
    throw ConfigError("run_mc: counts must be positive");
  if (!(params.beta >= 0.05))
    throw ConfigError("run_mc: beta below the supported minimum 0.05");

  RunRecord record;
  record.params = params;
  SpinField field = SpinField::cold_start(params.spec);

  std::uint32_t sweep_index = 0;
  for (long i = 0; i < params.thermalization; ++i)
    sweep(field, params.beta, params.kernel, params.seed, sweep_index++,
          params.n_threads);

  std::int64_t accepted = 0;
  std::int64_t attempted = 0;
  const std::int64_t free = field.free_sites();
  for (long i = 0; i < params.sweeps; ++i) {
    accepted += sweep(field, params.beta, params.kernel, params.seed,
                      sweep_index++, params.n_threads);
    attempted += free;
    if ((i + 1) % params.measure_every == 0)
      measure_into(field, params, record.series);
  }
  record.acceptance_rate =
      attempted > 0 ? static_cast<double>(accepted) / attempted : 1.0;
  record.finalize();
  return record;
}

long auto_thermalization(const RunParameters& params) {
  RunParameters pilot = params;
  pilot.sweeps = 512;
  pilot.thermalization = 0;
  pilot.measure_every = 1;
  pilot.ward_observables = false;
  const RunRecord rec = run_mc(pilot);
  const auto& xs = rec.series.at("action_density");
  const double tau = integrated_autocorr_time(xs).tau_int;
  return std::max<long>(1000, static_cast<long>(std::ceil(20.0 * tau)));
}

WardEstimate ward_residual_from_record(const RunRecord& record,
                                       int generator_index, WardProbe probe) {
  const Generator g =
      generator_basis(record.params.spec.target_dim, generator_index);
  const auto xf = record.series.find(ward_xf_name(g.name, probe));
  const auto f = record.series.find(ward_f_name(probe));
  const auto xs = record.series.find(ward_xs_name(g.name));
  if (xf == record.series.end() || f == record.series.end() ||
      xs == record.series.end())
    throw ConfigError("ward_residual_from_record: series missing; "
                      "run with ward_observables enabled");
  return ward_residual(xf->second, f->second, xs->second, record.params.beta);
}

}  // namespace hypsig
