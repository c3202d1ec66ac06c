#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lis/geometry.hpp"
#include "lis/metrics.hpp"
#include "lis/precision.hpp"

namespace lis {

enum class Scheme { NcaMf, CaMf, CaPmf, HpCaMf };

[[nodiscard]] std::string_view to_string(Scheme scheme);
/// Accepts "nCA-MF", "CA-MF", "CA-pMF", "HP-CA-MF" (case-insensitive).
[[nodiscard]] Scheme parse_scheme(std::string_view text);

/// Parses a spacing given as a plain number of meters or as a string
/// "<x> λ", "<x>λ", "<x> lambda". Throws ConfigError.
double parse_spacing(std::string_view text, double wavelength);

struct ExperimentConfig {
  double frequency = 2.6e9;
  double panel_width = 0.5;
  double panel_height = 0.5;
  std::vector<ElementKind> element_kinds{ElementKind::Isotropic, ElementKind::Planar};
  /// Meters, in the order rows are emitted.
  std::vector<double> spacings;
  Vec3 ue{10.0, 0.0, 0.0};
  std::vector<Scheme> schemes{Scheme::NcaMf, Scheme::CaMf, Scheme::CaPmf, Scheme::HpCaMf};
  double svd_threshold = 1e-9;
  Precision precision = Precision::extended();
  LinkBudget link_budget;
  std::string output;

  /// Linear array used by the conditioning, profile and truncation studies.
  std::size_t linear_elements = 20;
  /// Meters; spacing of the profile and truncation studies.
  double linear_spacing = 0.0;

  std::size_t max_elements = kDefaultMaxElements;
  /// Extended-precision solves are skipped above this size.
  std::size_t hp_max_elements = 2000;
  /// Extended-precision eigensolves (κ of the HP rows) are skipped above this size.
  std::size_t hp_condition_max_elements = 128;
  double quad_tol = kDefaultQuadTolerance;
  bool full_extent_limits = false;

  [[nodiscard]] double wavelength() const { return wavelength_for(frequency); }

  /// 2.6 GHz, 0.5 m × 0.5 m, UE at [10, 0, 0], 1.0λ … 0.1λ grid, ext:256.
  static ExperimentConfig defaults();
  /// Throws ConfigError.
  void validate() const;
};

/// Starts from defaults() and overrides the keys present. Unknown keys are
/// rejected. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SweepRow {
  double spacing = 0.0;
  double spacing_lambda = 0.0;
  ElementKind kind = ElementKind::Isotropic;
  std::size_t elements = 0;
  std::optional<Scheme> scheme;
  /// Arithmetic the row was computed in.
  Precision precision;
  /// Profile: 1-based eigenvalue index. Truncation: retained-mode count.
  std::size_t mode = 0;
  double eigenvalue = kNaN;
  double directivity = kNaN;
  double d_nc = kNaN;
  double condition_number = kNaN;
  std::optional<std::size_t> retained_modes;
  double excitation_power = kNaN;
  double snr = kNaN;
  double wall_ms = 0.0;
  /// "ok", or the reason the point has no value.
  std::string status = "ok";

  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
};

enum class Experiment { Conditioning, Profile, Truncation, Spacing };
[[nodiscard]] std::string_view to_string(Experiment experiment);

struct SweepResult {
  Experiment experiment = Experiment::Conditioning;
  Precision precision;
  std::vector<SweepRow> rows;
};

struct RunOptions {
  /// Directory for plain-text Z, h and i dumps; empty disables dumping.
  std::filesystem::path dump_dir;
  /// 0 means hardware concurrency, further capped by LIS_MAX_WORKERS.
  std::size_t workers = 0;
};

/// Environment variable capping worker threads.
inline constexpr const char* kMaxWorkersEnv = "LIS_MAX_WORKERS";

/// κ(Z) per spacing for the linear array, both element kinds.
SweepResult run_conditioning_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});
/// Eigenvalues of Z (descending) for the linear array at cfg.linear_spacing.
SweepResult run_singular_profile(const ExperimentConfig& cfg, const RunOptions& options = {});
/// CA-pMF directivity and excitation power for 1 … N retained modes.
SweepResult run_truncation_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});
/// Fixed-aperture panel, every spacing × element kind × scheme.
SweepResult run_spacing_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});

SweepResult run_experiment(Experiment experiment, const ExperimentConfig& cfg, const RunOptions& options = {});

/// Header row plus one line per row; reals with 17 significant digits,
/// missing values as empty cells. `with_timing` adds the wall_ms column.
void write_csv(std::ostream& out, const SweepResult& result, bool with_timing = true);

}  // namespace lis
