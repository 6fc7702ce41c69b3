#pragma once

#include <filesystem>
#include <string>

#include "hypsig/run.hpp"

namespace hypsig {

// One CSV per observable: header "sweep_index,value", one row per
// measurement, "%.17g" formatting so reruns are byte-identical.
void write_observable_csv(const RunRecord& record, const std::string& name,
                          const std::filesystem::path& path);
void write_all_observables(const RunRecord& record,
                           const std::filesystem::path& directory);

// JSON summary {parameters, means, errors, tau_int}
std::string summary_json(const RunRecord& record);
void write_summary_json(const RunRecord& record,
                        const std::filesystem::path& path);

// Binary checkpoint: magic "HSIG1", u32 N, u32 d, u32 dims[d], u64 seed,
// u64 sweep, then the row-major site array of (N+1) little-endian f64 each.
void save_checkpoint(const SpinField& field, std::uint64_t seed,
                     std::uint64_t sweep, const std::filesystem::path& path);

struct Checkpoint {
  SpinField field;
  std::uint64_t seed = 0;
  std::uint64_t sweep = 0;
};
Checkpoint load_checkpoint(const std::filesystem::path& path,
                           GaugeFix gauge = GaugeFix::FixedSpinBoundary,
                           double epsilon = 0.0);

}  // namespace hypsig
