#include "lis/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "lis/channel.hpp"
#include "lis/coupling.hpp"
#include "lis/precoding.hpp"

namespace lis {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::NcaMf:
      return "nCA-MF";
    case Scheme::CaMf:
      return "CA-MF";
    case Scheme::CaPmf:
      return "CA-pMF";
    case Scheme::HpCaMf:
      return "HP-CA-MF";
  }
  return "?";
}

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Scheme parse_scheme(std::string_view text) {
  const auto key = lower(trim(text));
  for (auto s : {Scheme::NcaMf, Scheme::CaMf, Scheme::CaPmf, Scheme::HpCaMf}) {
    if (key == lower(to_string(s))) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::Conditioning:
      return "conditioning";
    case Experiment::Profile:
      return "profile";
    case Experiment::Truncation:
      return "truncation";
    case Experiment::Spacing:
      return "spacing";
  }
  return "?";
}

double parse_spacing(std::string_view text, double wavelength) {
  auto body = trim(text);
  double scale = 1.0;
  for (std::string_view suffix : {std::string_view("\xCE\xBB"), std::string_view("lambda")}) {
    if (body.size() >= suffix.size() && lower(body.substr(body.size() - suffix.size())) == suffix) {
      body = trim(body.substr(0, body.size() - suffix.size()));
      scale = wavelength;
      break;
    }
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || ec != std::errc() || end != body.data() + body.size()) {
    throw ConfigError("cannot parse spacing '" + std::string(text) + "'");
  }
  const double meters = value * scale;
  if (!(meters > 0.0) || !std::isfinite(meters)) throw ConfigError("spacing must be positive: '" + std::string(text) + "'");
  return meters;
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  const double lambda = cfg.wavelength();
  for (double f : {1.0, 0.75, 0.5, 0.45, 0.4, 0.35, 0.3, 0.25, 0.2, 0.15, 0.125, 0.1}) cfg.spacings.push_back(f * lambda);
  cfg.linear_spacing = 0.3 * lambda;
  return cfg;
}

void ExperimentConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(frequency)) throw ConfigError("frequency must be positive");
  if (!positive(panel_width) || !positive(panel_height)) throw ConfigError("panel size must be positive");
  if (element_kinds.empty()) throw ConfigError("element_kinds is empty");
  if (spacings.empty()) throw ConfigError("spacings is empty");
  for (double s : spacings) {
    if (!positive(s)) throw ConfigError("spacing grid entries must be positive");
  }
  if (!ue.is_finite()) throw ConfigError("ue position must be finite");
  if (schemes.empty()) throw ConfigError("schemes is empty");
  if (!(svd_threshold >= 0.0) || !std::isfinite(svd_threshold)) throw ConfigError("svd_threshold must be non-negative");
  if (linear_elements == 0) throw ConfigError("linear_elements must be positive");
  if (!positive(linear_spacing)) throw ConfigError("linear_spacing must be positive");
  if (max_elements == 0) throw ConfigError("max_elements must be positive");
  if (!positive(quad_tol)) throw ConfigError("quad_tol must be positive");
}

namespace {

using nlohmann::json;

double number_of(const json& v, std::string_view key) {
  if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' must be a number");
  return v.get<double>();
}

std::size_t count_of(const json& v, std::string_view key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError("'" + std::string(key) + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_of(const json& v, std::string_view key) {
  if (!v.is_string()) throw ConfigError("'" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

const json& array_of(const json& v, std::string_view key) {
  if (!v.is_array()) throw ConfigError("'" + std::string(key) + "' must be an array");
  return v;
}

double spacing_of(const json& v, double wavelength) {
  if (v.is_number()) {
    const double s = v.get<double>();
    if (!(s > 0.0)) throw ConfigError("spacing grid entries must be positive");
    return s;
  }
  if (v.is_string()) return parse_spacing(v.get<std::string>(), wavelength);
  throw ConfigError("spacing entries must be numbers (meters) or strings like \"0.3 lambda\"");
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  auto cfg = ExperimentConfig::defaults();
  if (doc.contains("frequency")) {
    const double old_lambda = cfg.wavelength();
    cfg.frequency = number_of(doc["frequency"], "frequency");
    if (!(cfg.frequency > 0.0)) throw ConfigError("frequency must be positive");
    // Default grids are defined in wavelengths and follow the frequency.
    for (auto& s : cfg.spacings) s = s / old_lambda * cfg.wavelength();
    cfg.linear_spacing = cfg.linear_spacing / old_lambda * cfg.wavelength();
  }
  const double lambda = cfg.wavelength();

  for (const auto& [key, value] : doc.items()) {
    if (key == "frequency") {
      continue;
    } else if (key == "panel_width") {
      cfg.panel_width = number_of(value, key);
    } else if (key == "panel_height") {
      cfg.panel_height = number_of(value, key);
    } else if (key == "element_kinds") {
      cfg.element_kinds.clear();
      for (const auto& k : array_of(value, key)) {
        try {
          cfg.element_kinds.push_back(parse_element_kind(string_of(k, key)));
        } catch (const InvalidArgument& e) {
          throw ConfigError(e.what());
        }
      }
    } else if (key == "spacings") {
      cfg.spacings.clear();
      for (const auto& s : array_of(value, key)) cfg.spacings.push_back(spacing_of(s, lambda));
    } else if (key == "ue") {
      if (!value.is_array() || value.size() != 3) throw ConfigError("'ue' must be an array of three numbers");
      cfg.ue = {number_of(value[0], key), number_of(value[1], key), number_of(value[2], key)};
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto& s : array_of(value, key)) cfg.schemes.push_back(parse_scheme(string_of(s, key)));
    } else if (key == "svd_threshold") {
      cfg.svd_threshold = number_of(value, key);
    } else if (key == "precision") {
      try {
        cfg.precision = Precision::parse(string_of(value, key));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "link_budget") {
      if (!value.is_object()) throw ConfigError("'link_budget' must be an object");
      double ptx = cfg.link_budget.ptx;
      double noise = cfg.link_budget.noise_var;
      for (const auto& [lk, lv] : value.items()) {
        if (lk == "ptx") {
          ptx = number_of(lv, lk);
        } else if (lk == "noise_var") {
          noise = number_of(lv, lk);
        } else {
          throw ConfigError("unknown key 'link_budget." + lk + "'");
        }
      }
      try {
        cfg.link_budget = LinkBudget(ptx, noise);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "output") {
      cfg.output = string_of(value, key);
    } else if (key == "linear_elements") {
      cfg.linear_elements = count_of(value, key);
    } else if (key == "linear_spacing") {
      cfg.linear_spacing = spacing_of(value, lambda);
    } else if (key == "max_elements") {
      cfg.max_elements = count_of(value, key);
    } else if (key == "hp_max_elements") {
      cfg.hp_max_elements = count_of(value, key);
    } else if (key == "hp_condition_max_elements") {
      cfg.hp_condition_max_elements = count_of(value, key);
    } else if (key == "quad_tol") {
      cfg.quad_tol = number_of(value, key);
    } else if (key == "full_extent_limits") {
      if (!value.is_boolean()) throw ConfigError("'full_extent_limits' must be a boolean");
      cfg.full_extent_limits = value.get<bool>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::size_t worker_count(const RunOptions& options, std::size_t tasks) {
  std::size_t n = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv(kMaxWorkersEnv)) {
    std::size_t cap = 0;
    const std::string_view text(env);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc() && end == text.data() + text.size() && cap > 0) n = std::min(n, cap);
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

// Runs task(0 … count-1) on a small pool; rethrows the first failure.
void parallel_for(std::size_t count, const RunOptions& options, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = worker_count(options, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string dump_stem(Experiment experiment, ElementKind kind, double spacing_lambda) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", spacing_lambda);
  return std::string(to_string(experiment)) + "_" + std::string(to_string(kind)) + "_" + buf + "lambda";
}

void dump_matrix(const RunOptions& options, const std::string& name, const Matrix<double>& m) {
  if (options.dump_dir.empty()) return;
  std::filesystem::create_directories(options.dump_dir);
  std::ofstream out(options.dump_dir / (name + ".txt"));
  if (!out) throw ConfigError("cannot write " + (options.dump_dir / name).string());
  write_matrix(out, m);
}

template <typename Real>
Matrix<double> to_double_matrix(const Matrix<Real>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
  }
  return out;
}

// One row per element, columns re and im.
template <typename Real>
Matrix<double> vector_matrix(const BasicComplexVector<Real>& v) {
  Matrix<double> out(v.size(), 2);
  for (std::size_t n = 0; n < v.size(); ++n) {
    out(n, 0) = to_double(v.re[n]);
    out(n, 1) = to_double(v.im[n]);
  }
  return out;
}

SweepRow base_row(double spacing, double lambda, const ArrayGeometry& geom, Precision precision) {
  SweepRow row;
  row.spacing = spacing;
  row.spacing_lambda = spacing / lambda;
  row.kind = geom.kind();
  row.elements = geom.size();
  row.precision = precision;
  return row;
}

template <typename Real>
void fill_link_metrics(SweepRow& row, const BasicComplexVector<Real>& i, const BasicImpedanceMatrix<Real>& z,
                       const BasicComplexVector<Real>& h, const ExperimentConfig& cfg) {
  const double gain = beamforming_gain(i, z, h);
  row.directivity = gain * path_gain_inverse(cfg.ue, cfg.wavelength());
  row.snr = gain * cfg.link_budget.ratio();
  row.excitation_power = excitation_power(i);
}

}  // namespace

SweepResult run_conditioning_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const double lambda = cfg.wavelength();
  const std::size_t kinds = cfg.element_kinds.size();
  SweepResult result{Experiment::Conditioning, cfg.precision, {}};
  result.rows.resize(cfg.spacings.size() * kinds);
  parallel_for(result.rows.size(), options, [&](std::size_t task) {
    const double spacing = cfg.spacings[task / kinds];
    const auto geom = linear_array(cfg.linear_elements, spacing, cfg.element_kinds[task % kinds], lambda);
    const auto start = std::chrono::steady_clock::now();
    auto row = base_row(spacing, lambda, geom, cfg.precision);
    with_precision(cfg.precision, [&]<typename Real>() {
      const auto z = impedance<Real>(geom);
      row.condition_number = condition_number(z);
      row.retained_modes = retained_mode_count(z, cfg.svd_threshold);
      dump_matrix(options, dump_stem(result.experiment, geom.kind(), row.spacing_lambda) + "_Z",
                  to_double_matrix(z.entries()));
    });
    row.wall_ms = elapsed_ms(start);
    result.rows[task] = std::move(row);
  });
  return result;
}

SweepResult run_singular_profile(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const double lambda = cfg.wavelength();
  SweepResult result{Experiment::Profile, cfg.precision, {}};
  std::vector<std::vector<SweepRow>> blocks(cfg.element_kinds.size());
  parallel_for(blocks.size(), options, [&](std::size_t task) {
    const auto geom = linear_array(cfg.linear_elements, cfg.linear_spacing, cfg.element_kinds[task], lambda);
    const auto start = std::chrono::steady_clock::now();
    with_precision(cfg.precision, [&]<typename Real>() {
      const auto z = impedance<Real>(geom);
      const auto& eig = z.eigen();
      const double kappa = condition_number(z);
      const std::size_t retained = retained_mode_count(z, cfg.svd_threshold);
      for (std::size_t k = 0; k < eig.values.size(); ++k) {
        auto row = base_row(cfg.linear_spacing, lambda, geom, cfg.precision);
        row.mode = k + 1;
        row.eigenvalue = to_double(eig.values[k]);
        row.condition_number = kappa;
        row.retained_modes = retained;
        blocks[task].push_back(std::move(row));
      }
      dump_matrix(options, dump_stem(result.experiment, geom.kind(), cfg.linear_spacing / lambda) + "_Z",
                  to_double_matrix(z.entries()));
    });
    const double ms = elapsed_ms(start);
    for (auto& row : blocks[task]) row.wall_ms = ms;
  });
  for (auto& block : blocks) std::move(block.begin(), block.end(), std::back_inserter(result.rows));
  return result;
}

SweepResult run_truncation_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const double lambda = cfg.wavelength();
  SweepResult result{Experiment::Truncation, cfg.precision, {}};
  std::vector<std::vector<SweepRow>> blocks(cfg.element_kinds.size());
  parallel_for(blocks.size(), options, [&](std::size_t task) {
    const auto geom = linear_array(cfg.linear_elements, cfg.linear_spacing, cfg.element_kinds[task], lambda);
    with_precision(cfg.precision, [&]<typename Real>() {
      const auto z = impedance<Real>(geom);
      const auto h = channel<Real>(geom, cfg.ue);
      const double kappa = condition_number(z);
      const auto stem = dump_stem(result.experiment, geom.kind(), cfg.linear_spacing / lambda);
      dump_matrix(options, stem + "_Z", to_double_matrix(z.entries()));
      dump_matrix(options, stem + "_h", vector_matrix(h));
      for (std::size_t m = 1; m <= geom.size(); ++m) {
        const auto start = std::chrono::steady_clock::now();
        auto row = base_row(cfg.linear_spacing, lambda, geom, cfg.precision);
        row.scheme = Scheme::CaPmf;
        row.mode = m;
        row.retained_modes = m;
        row.condition_number = kappa;
        try {
          const auto i = ca_pmf_modes(z, h, m);
          fill_link_metrics(row, i, z, h, cfg);
          dump_matrix(options, stem + "_i_modes" + std::to_string(m), vector_matrix(i));
        } catch (const EmptySpectrum& e) {
          row.status = std::string("empty-spectrum: ") + e.what();
        } catch (const NonRadiatingCurrent& e) {
          row.status = std::string("non-radiating: ") + e.what();
        }
        row.wall_ms = elapsed_ms(start);
        blocks[task].push_back(std::move(row));
      }
    });
  });
  for (auto& block : blocks) std::move(block.begin(), block.end(), std::back_inserter(result.rows));
  return result;
}

SweepResult run_spacing_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const double lambda = cfg.wavelength();
  // Fails fast with CapacityError before any work starts.
  for (double s : cfg.spacings) {
    (void)planar_grid(cfg.panel_width, cfg.panel_height, s, s, cfg.element_kinds.front(), lambda, cfg.max_elements);
  }
  const double reference = d_nc(cfg.ue, cfg.panel_width, cfg.panel_height, lambda,
                                ApertureOptions{cfg.quad_tol, cfg.full_extent_limits});

  const std::size_t kinds = cfg.element_kinds.size();
  SweepResult result{Experiment::Spacing, cfg.precision, {}};
  std::vector<std::vector<SweepRow>> blocks(cfg.spacings.size() * kinds);
  parallel_for(blocks.size(), options, [&](std::size_t task) {
    const double spacing = cfg.spacings[task / kinds];
    const auto geom = planar_grid(cfg.panel_width, cfg.panel_height, spacing, spacing, cfg.element_kinds[task % kinds],
                                  lambda, cfg.max_elements);
    const auto stem = dump_stem(result.experiment, geom.kind(), spacing / lambda);
    const auto make_row = [&](Scheme scheme, Precision precision) {
      auto row = base_row(spacing, lambda, geom, precision);
      row.scheme = scheme;
      row.d_nc = reference;
      return row;
    };

    const bool wants_double = std::any_of(cfg.schemes.begin(), cfg.schemes.end(), [](Scheme s) {
      return s != Scheme::HpCaMf;
    });
    std::optional<ImpedanceMatrix> z;
    ComplexVector h;
    double kappa = SweepRow::kNaN;
    std::size_t retained = 0;
    if (wants_double) {
      z.emplace(impedance(geom));
      h = channel(geom, cfg.ue);
      kappa = condition_number(*z);
      retained = retained_mode_count(*z, cfg.svd_threshold);
      dump_matrix(options, stem + "_Z", z->entries());
      dump_matrix(options, stem + "_h", vector_matrix(h));
    }

    for (Scheme scheme : cfg.schemes) {
      const auto start = std::chrono::steady_clock::now();
      if (scheme != Scheme::HpCaMf) {
        auto row = make_row(scheme, Precision::machine_double());
        row.condition_number = kappa;
        row.retained_modes = retained;
        try {
          ComplexVector i;
          if (scheme == Scheme::NcaMf) {
            i = nca_mf(h);
          } else if (scheme == Scheme::CaMf) {
            i = ca_mf(*z, h);
          } else {
            i = ca_pmf(*z, h, cfg.svd_threshold);
          }
          fill_link_metrics(row, i, *z, h, cfg);
          dump_matrix(options, stem + "_i_" + std::string(to_string(scheme)), vector_matrix(i));
        } catch (const IllConditionedSolve& e) {
          row.status = std::string("ill-conditioned: ") + e.what();
        } catch (const EmptySpectrum& e) {
          row.status = std::string("empty-spectrum: ") + e.what();
        } catch (const NonRadiatingCurrent& e) {
          row.status = std::string("non-radiating: ") + e.what();
        }
        row.wall_ms = elapsed_ms(start);
        blocks[task].push_back(std::move(row));
        continue;
      }

      if (!cfg.precision.is_extended()) continue;
      auto row = make_row(scheme, cfg.precision);
      if (geom.size() > cfg.hp_max_elements) {
        row.status = "skipped: " + std::to_string(geom.size()) + " elements above hp_max_elements";
        blocks[task].push_back(std::move(row));
        continue;
      }
      ExtPrecisionScope scope(cfg.precision.mantissa_bits());
      const auto ze = impedance<ExtFloat>(geom);
      const auto he = channel<ExtFloat>(geom, cfg.ue);
      if (geom.size() <= cfg.hp_condition_max_elements) {
        row.condition_number = condition_number(ze);
        row.retained_modes = retained_mode_count(ze, cfg.svd_threshold);
      }
      try {
        const auto i = ca_mf(ze, he);
        fill_link_metrics(row, i, ze, he, cfg);
        dump_matrix(options, stem + "_i_" + std::string(to_string(scheme)), vector_matrix(i));
      } catch (const IllConditionedSolve& e) {
        row.status = std::string("ill-conditioned: ") + e.what();
      } catch (const NonRadiatingCurrent& e) {
        row.status = std::string("non-radiating: ") + e.what();
      }
      row.wall_ms = elapsed_ms(start);
      blocks[task].push_back(std::move(row));
    }
  });
  for (auto& block : blocks) std::move(block.begin(), block.end(), std::back_inserter(result.rows));
  return result;
}

SweepResult run_experiment(Experiment experiment, const ExperimentConfig& cfg, const RunOptions& options) {
  switch (experiment) {
    case Experiment::Conditioning:
      return run_conditioning_sweep(cfg, options);
    case Experiment::Profile:
      return run_singular_profile(cfg, options);
    case Experiment::Truncation:
      return run_truncation_sweep(cfg, options);
    case Experiment::Spacing:
      return run_spacing_sweep(cfg, options);
  }
  throw InvalidArgument("unknown experiment");
}

namespace {

enum class Column {
  SpacingM,
  SpacingLambda,
  Element,
  Elements,
  Scheme,
  Precision,
  Mode,
  Eigenvalue,
  Directivity,
  DirectivityDbi,
  Dnc,
  DncDbi,
  Condition,
  Retained,
  Excitation,
  Snr,
  Status,
  WallMs,
};

std::vector<std::pair<Column, const char*>> columns_for(Experiment experiment, bool with_timing) {
  using C = Column;
  std::vector<std::pair<Column, const char*>> cols{{C::SpacingM, "spacing_m"},
                                                   {C::SpacingLambda, "spacing_lambda"},
                                                   {C::Element, "element"},
                                                   {C::Elements, "elements"}};
  switch (experiment) {
    case Experiment::Conditioning:
      cols.insert(cols.end(), {{C::Precision, "precision"},
                               {C::Condition, "condition_number"},
                               {C::Retained, "retained_modes"},
                               {C::Status, "status"}});
      break;
    case Experiment::Profile:
      cols.insert(cols.end(), {{C::Precision, "precision"}, {C::Mode, "mode"}, {C::Eigenvalue, "eigenvalue"}});
      break;
    case Experiment::Truncation:
      cols.insert(cols.end(), {{C::Scheme, "scheme"},
                               {C::Precision, "precision"},
                               {C::Retained, "retained_modes"},
                               {C::Directivity, "directivity"},
                               {C::DirectivityDbi, "directivity_dbi"},
                               {C::Excitation, "excitation_power"},
                               {C::Snr, "snr"},
                               {C::Status, "status"}});
      break;
    case Experiment::Spacing:
      cols.insert(cols.end(), {{C::Scheme, "scheme"},
                               {C::Precision, "precision"},
                               {C::Directivity, "directivity"},
                               {C::DirectivityDbi, "directivity_dbi"},
                               {C::Dnc, "d_nc"},
                               {C::DncDbi, "d_nc_dbi"},
                               {C::Condition, "condition_number"},
                               {C::Retained, "retained_modes"},
                               {C::Excitation, "excitation_power"},
                               {C::Snr, "snr"},
                               {C::Status, "status"}});
      break;
  }
  if (with_timing) cols.emplace_back(C::WallMs, "wall_ms");
  return cols;
}

std::string real_cell(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string text_cell(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const SweepRow& row, Column column) {
  switch (column) {
    case Column::SpacingM:
      return real_cell(row.spacing);
    case Column::SpacingLambda:
      return real_cell(row.spacing_lambda);
    case Column::Element:
      return std::string(to_string(row.kind));
    case Column::Elements:
      return std::to_string(row.elements);
    case Column::Scheme:
      return row.scheme ? std::string(to_string(*row.scheme)) : std::string();
    case Column::Precision:
      return row.precision.to_string();
    case Column::Mode:
      return std::to_string(row.mode);
    case Column::Eigenvalue:
      return real_cell(row.eigenvalue);
    case Column::Directivity:
      return real_cell(row.directivity);
    case Column::DirectivityDbi:
      return row.directivity > 0.0 ? real_cell(dbi(row.directivity)) : std::string();
    case Column::Dnc:
      return real_cell(row.d_nc);
    case Column::DncDbi:
      return row.d_nc > 0.0 ? real_cell(dbi(row.d_nc)) : std::string();
    case Column::Condition:
      return real_cell(row.condition_number);
    case Column::Retained:
      return row.retained_modes ? std::to_string(*row.retained_modes) : std::string();
    case Column::Excitation:
      return real_cell(row.excitation_power);
    case Column::Snr:
      return real_cell(row.snr);
    case Column::Status:
      return text_cell(row.status);
    case Column::WallMs:
      return real_cell(row.wall_ms);
  }
  return {};
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result, bool with_timing) {
  const auto cols = columns_for(result.experiment, with_timing);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c].second;
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cell(row, cols[c].first);
    out << '\n';
  }
}

}  // namespace lis
