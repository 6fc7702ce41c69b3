#include "hypsig/lattice_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "hypsig/errors.hpp"

namespace hypsig {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  put_u64(out, bits);
}

struct Reader {
  const std::string& data;
  std::size_t pos = 0;

  std::uint32_t u32() {
    if (pos + 4 > data.size()) throw ConfigError("checkpoint truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos++]))
           << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    if (pos + 8 > data.size()) throw ConfigError("checkpoint truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos++]))
           << (8 * i);
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
  }
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_observable_csv(const RunRecord& record, const std::string& name,
                          const std::filesystem::path& path) {
  const auto it = record.series.find(name);
  if (it == record.series.end())
    throw ConfigError("write_observable_csv: unknown observable " + name);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string());
  out << "sweep_index,value\n";
  const long every = record.params.measure_every;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    out << (static_cast<long>(i + 1) * every) << ',' << fmt17(it->second[i])
        << '\n';
}

void write_all_observables(const RunRecord& record,
                           const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& [name, _] : record.series)
    write_observable_csv(record, name, directory / (name + ".csv"));
}

std::string summary_json(const RunRecord& record) {
  nlohmann::json j;
  const RunParameters& p = record.params;
  j["parameters"] = {
      {"beta", p.beta},
      {"N", p.spec.target_dim},
      {"dims", p.spec.dims},
      {"gauge_fix", to_string(p.spec.gauge)},
      {"epsilon", p.spec.epsilon},
      {"kernel", to_string(p.kernel)},
      {"sweeps", p.sweeps},
      {"thermalization", p.thermalization},
      {"measure_every", p.measure_every},
      {"seed", p.seed},
      {"acceptance_rate", record.acceptance_rate},
  };
  nlohmann::json means, errors, tau;
  for (const auto& [name, st] : record.summaries) {
    means[name] = st.mean;
    errors[name] = st.error;
    tau[name] = st.tau_int;
  }
  j["means"] = means;
  j["errors"] = errors;
  j["tau_int"] = tau;
  return j.dump(2);
}

void write_summary_json(const RunRecord& record,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string());
  out << summary_json(record) << '\n';
}

void save_checkpoint(const SpinField& field, std::uint64_t seed,
                     std::uint64_t sweep, const std::filesystem::path& path) {
  std::string blob;
  blob.reserve(64 + field.spins.size() * (field.spec.target_dim + 1) * 8);
  blob += "HSIG1";
  put_u32(blob, static_cast<std::uint32_t>(field.spec.target_dim));
  put_u32(blob, static_cast<std::uint32_t>(field.spec.d()));
  for (int e : field.spec.dims) put_u32(blob, static_cast<std::uint32_t>(e));
  put_u64(blob, seed);
  put_u64(blob, sweep);
  for (const HPoint& p : field.spins)
    for (int i = 0; i <= field.spec.target_dim; ++i) put_f64(blob, p[i]);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string());
  out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
}

Checkpoint load_checkpoint(const std::filesystem::path& path, GaugeFix gauge,
                           double epsilon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (data.size() < 5 || data.compare(0, 5, "HSIG1") != 0)
    throw ConfigError("checkpoint: bad magic");
  Reader r{data, 5};

  LatticeSpec spec;
  spec.target_dim = static_cast<int>(r.u32());
  const int d = static_cast<int>(r.u32());
  if (d < 1 || d > 3) throw ConfigError("checkpoint: bad dimension");
  spec.dims.resize(d);
  for (int k = 0; k < d; ++k) spec.dims[k] = static_cast<int>(r.u32());
  spec.gauge = gauge;
  spec.epsilon = epsilon;

  Checkpoint cp;
  cp.seed = r.u64();
  cp.sweep = r.u64();
  cp.field = SpinField::cold_start(spec);
  for (auto& p : cp.field.spins) {
    MVector v(spec.target_dim);
    for (int i = 0; i <= spec.target_dim; ++i) v.c[i] = r.f64();
    if (!is_unit_timelike(v, 1e-7))
      throw ConfigError("checkpoint: spin off the hyperboloid");
    // bit-exact restore: no renormalization on load
    p.v = v;
    p.age = 0;
  }
  return cp;
}

}  // namespace hypsig
