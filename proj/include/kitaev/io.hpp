#pragma once

#include <string>
#include <vector>

#include "kitaev/edge_modes.hpp"
#include "kitaev/fock.hpp"
#include "kitaev/fourier.hpp"
#include "kitaev/pseudospin.hpp"
#include "kitaev/quadratic.hpp"

namespace kitaev {

enum class Command { Spectrum, Blocks, ZeroModes, Sweep, Oracle, Pseudospin };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  int rows = 0;
  int cols = 0;
  CouplingParams params;
  Command command = Command::Spectrum;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;  // empty: stdout
  double tol = 1e-10;    // relative zero-detection tolerance
  int jobs = 1;
  std::vector<double> t_grid;      // sweep only; empty: the single value
  std::vector<double> delta_grid;
  std::vector<double> mu_grid;
};

/// Parses flags (optionally merged with a flat key=value config file; flags
/// win). Throws UsageError on unknown flags, bad numbers, missing rows/cols
/// or violated size caps.
RunConfig parse_config(const std::vector<std::string>& args);

/// Dispatches a parsed config and writes its artifact. Returns the process
/// exit code: 0 success, 1 invariant violation or I/O failure, 2 usage error.
int run(const RunConfig& config);

/// Full CLI entry point (argv to exit code, help handling included).
int cli_main(int argc, char** argv);

/// Lossless double formatting (17 significant digits).
std::string format_double(double value);

std::string to_csv(const SpectrumResult& spectrum);
std::string to_json(const SpectrumResult& spectrum, const RunConfig& config);
std::string to_csv(const std::vector<FourierBlock>& blocks);
std::string to_json(const std::vector<FourierBlock>& blocks);
std::string to_csv(const ZeroModeReport& report);
std::string to_json(const ZeroModeReport& report);
std::string to_csv(const std::vector<SweepPoint>& table);
std::string to_json(const std::vector<SweepPoint>& table);
std::string to_csv(const std::vector<EnergyCluster>& clusters);
std::string oracle_json(const std::vector<double>& energies,
                        const std::vector<EnergyCluster>& clusters, long dimension,
                        const std::string& method);
std::string to_csv(const std::vector<StateExpectation>& rows);
std::string to_json(const std::vector<StateExpectation>& rows);

}  // namespace kitaev
