#include "twqkd/config.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace twqkd::cli {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config error: field '" + field + "': " + what);
}

}  // namespace

ProtocolSpec RunConfig::to_protocol_spec() const {
  ProtocolSpec spec;
  if (protocol == "tmsv-disp") {
    spec.family = ProtocolFamily::TmsvDisplacement;
  } else if (protocol == "fl-qkd") {
    spec.family = ProtocolFamily::FlQkd;
  } else {
    config_error("protocol", "must be 'tmsv-disp' or 'fl-qkd'");
  }

  if (!ns && !optimize_ns) config_error("ns", "missing (give --ns or --optimize-ns)");
  spec.n_s = ns.value_or(1.0);  // placeholder when optimizing

  if (spec.family == ProtocolFamily::TmsvDisplacement) {
    if (!ex) config_error("ex", "missing (displacement power required for tmsv-disp)");
    if (me && *me != 1) config_error("me", "must be 1 for tmsv-disp");
    spec.e_x = *ex;
    spec.m_e = 1;
  } else {
    if (ex && *ex != 0.0) config_error("ex", "must be 0 for fl-qkd (phase encoding)");
    spec.g_b = gb;
    spec.m_e = me.value_or(200);
  }
  spec.xi = xi;
  spec.rate_hz = rate_hz;
  spec.alpha_db_per_km = alpha;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config error: ") + e.what());
  }
  return spec;
}

std::pair<double, double> RunConfig::ns_range() const {
  double lo = ns_min.value_or(protocol == "fl-qkd" ? 1e-7 : 1e-2);
  double hi = ns_max.value_or(protocol == "fl-qkd" ? 1e-1 : 1e3);
  if (!(lo > 0.0 && lo < hi)) config_error("ns_min", "need 0 < ns_min < ns_max");
  return {lo, hi};
}

std::optional<IntrusionParams> RunConfig::intrusion_at(double kappa_s) const {
  if (!fe && !kappa_bar) return std::nullopt;
  IntrusionParams intr{kappa_bar.value_or(kappa_s), fe.value_or(0.0)};
  if (!(intr.kappa_bar_s >= 0.0)) config_error("kappa_bar", "must be >= 0");
  if (!(intr.f_e >= 0.0 && intr.f_e <= 1.0)) config_error("fe", "must be in [0, 1]");
  return intr;
}

std::vector<double> RunConfig::sweep_lengths() const {
  if (!(lmin <= lmax)) config_error("lmin", "must be <= lmax");
  if (!(lstep > 0.0)) config_error("lstep", "must be > 0");
  const int count = static_cast<int>(std::floor((lmax - lmin) / lstep + 1e-9)) + 1;
  std::vector<double> ls(count);
  for (int k = 0; k < count; ++k) ls[k] = lmin + k * lstep;
  return ls;
}

RatePoint sweep_row(const RunConfig& cfg, double l_km) {
  const ProtocolSpec spec = cfg.to_protocol_spec();
  const double kappa_s = fiber_loss(l_km, spec.alpha_db_per_km);
  const auto intr = cfg.intrusion_at(kappa_s);
  if (cfg.optimize_ns) {
    const auto [lo, hi] = cfg.ns_range();
    return optimize_brightness(spec, l_km, lo, hi, intr).point;
  }
  return rate_point(spec, l_km, intr);
}

std::vector<RatePoint> run_sweep(const RunConfig& cfg) {
  const std::vector<double> lengths = cfg.sweep_lengths();
  std::vector<RatePoint> rows(lengths.size());

  const int jobs =
      std::max(1, std::min<int>(cfg.jobs, static_cast<int>(lengths.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < lengths.size(); ++i) rows[i] = sweep_row(cfg, lengths[i]);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  std::atomic<bool> failed{false};
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < lengths.size(); i = next.fetch_add(1)) {
        try {
          rows[i] = sweep_row(cfg, lengths[i]);
        } catch (...) {
          failed = true;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed) throw std::runtime_error("run_sweep: a worker failed");
  return rows;  // index order == ascending L
}

void write_sweep_csv(std::ostream& os, const std::vector<RatePoint>& rows) {
  os << kSweepCsvHeader << "\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e\n", r.length_km,
                  r.kappa_s, r.n_s, r.i_ab, r.chi_e, r.i_e, r.ske, r.skr);
    os << buf;
  }
}

MeasuredConstraints parse_constraints_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constraints file: " + path);

  MeasuredConstraints meas{};
  bool have_m = false, have_photons = false, have_corr = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("constraints file line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    std::string key = line.substr(first, eq - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value = line.substr(eq + 1);
    std::istringstream vs(value);
    if (key == "M") {
      if (!(vs >> meas.m)) {
        throw std::invalid_argument("constraints file line " + std::to_string(line_no) +
                                    ": bad integer for M");
      }
      have_m = true;
    } else if (key == "total_photons" || key == "total_correlation") {
      double v;
      if (!(vs >> v)) {
        throw std::invalid_argument("constraints file line " + std::to_string(line_no) +
                                    ": bad number for " + key);
      }
      (key == "total_photons" ? meas.total_photons : meas.total_correlation) = v;
      (key == "total_photons" ? have_photons : have_corr) = true;
    } else {
      throw std::invalid_argument("constraints file line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  if (!have_m || !have_photons || !have_corr) {
    throw std::invalid_argument(
        "constraints file: need M, total_photons and total_correlation");
  }
  return meas;
}

}  // namespace twqkd::cli
