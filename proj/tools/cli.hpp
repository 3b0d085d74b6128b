#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace heckebench::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

inline constexpr const char* kSchema = "heckebench-report/1";

enum class Format { json, csv, text };

struct RunConfig {
  std::string command;
  std::vector<int> weights;          ///< --k (repeatable)
  std::optional<double> K;           ///< --K (repeatable for error-sweep)
  std::vector<double> Ks;
  std::optional<double> H;
  long n = 1, m = 1, c = 1;          ///< kloosterman
  int l = 0;                         ///< bessel order
  double x = 0.0;                    ///< bessel argument
  std::string bessel_method = "automatic";
  std::string lkind = "sym2_at1";
  std::string sym2_method = "dirichlet";
  int nmax = 5;                      ///< largest n, m in identity checks
  int cmax = 200;                    ///< Kloosterman cut-off
  int max_weight = 30;               ///< verify-all
  int truncation = 0;                ///< eigenform coefficient override (0 = default)
  double tol = 1e-9;                 ///< quadrature tolerance
  double eps = 0.05;                 ///< region epsilon
  bool direct = false;               ///< fourth-moment / window-average quadrature cross-check
  std::optional<std::string> cache_dir;
  bool force_rebuild = false;
  Format format = Format::json;
  std::optional<std::string> out;    ///< output file (stdout if absent)
  unsigned threads = 1;
  bool timestamp = true;
};

struct Check {
  std::string name;
  bool passed = true;
  double metric = 0.0;
  double threshold = 0.0;
};

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();  ///< flat objects
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  std::vector<Check> checks;

  bool passed() const;
  void check(std::string name, bool ok, double metric, double threshold);
};

/// Validates the configuration; throws ConfigError.
void validate(const RunConfig& config);

/// Executes one subcommand and writes the report. Returns the exit status.
int run(const RunConfig& config, std::ostream& err);

/// Parses argv (CLI11) and calls run. Usage errors return kExitConfig.
int main_entry(int argc, char** argv);

/// Report rendering (exposed for tests).
std::string render(const Report& report, const RunConfig& config);

}  // namespace heckebench::cli
