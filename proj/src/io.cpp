#include "kitaev/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace kitaev {

namespace {

using nlohmann::json;

json json_number_list(const std::vector<double>& values) {
  json list = json::array();
  for (double v : values) list.push_back(v);
  return list;
}

std::string dump(const json& j) { return j.dump(); }

Command parse_command(const std::string& name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "blocks") return Command::Blocks;
  if (name == "zero-modes") return Command::ZeroModes;
  if (name == "sweep") return Command::Sweep;
  if (name == "oracle") return Command::Oracle;
  if (name == "pseudospin") return Command::Pseudospin;
  throw UsageError("unknown command: " + name);
}

std::vector<CouplingParams> sweep_grid(const RunConfig& config) {
  const std::vector<double> ts = config.t_grid.empty() ? std::vector<double>{config.params.t}
                                                       : config.t_grid;
  const std::vector<double> deltas = config.delta_grid.empty()
                                         ? std::vector<double>{config.params.delta}
                                         : config.delta_grid;
  const std::vector<double> mus = config.mu_grid.empty() ? std::vector<double>{config.params.mu}
                                                         : config.mu_grid;
  std::vector<CouplingParams> grid;
  grid.reserve(ts.size() * deltas.size() * mus.size());
  for (double t : ts)
    for (double delta : deltas)
      for (double mu : mus) grid.push_back({t, delta, mu});
  return grid;
}

void write_artifact(const RunConfig& config, std::string payload) {
  if (payload.empty() || payload.back() != '\n') payload += '\n';
  if (config.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output path " + config.out_path);
  out << payload;
  if (!out) throw std::ios_base::failure("write failed on " + config.out_path);
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string to_csv(const SpectrumResult& spectrum) {
  std::ostringstream out;
  out << "index,epsilon\n";
  for (std::size_t i = 0; i < spectrum.eps.size(); ++i)
    out << i << "," << format_double(spectrum.eps[i]) << "\n";
  return out.str();
}

std::string to_json(const SpectrumResult& spectrum, const RunConfig& config) {
  json j;
  j["rows"] = config.rows;
  j["cols"] = config.cols;
  j["t"] = config.params.t;
  j["delta"] = config.params.delta;
  j["mu"] = config.params.mu;
  j["epsilon"] = json_number_list(spectrum.eps);
  j["full_spectrum"] = json_number_list(spectrum.full);
  j["ground_energy"] = spectrum.ground_energy;
  j["offset"] = spectrum.offset;
  return dump(j);
}

std::string to_csv(const std::vector<FourierBlock>& blocks) {
  std::ostringstream out;
  out << "k,index,energy\n";
  for (const FourierBlock& block : blocks) {
    const std::vector<double> energies = block.energies();
    for (std::size_t i = 0; i < energies.size(); ++i)
      out << format_double(block.k) << "," << i << "," << format_double(energies[i]) << "\n";
  }
  return out.str();
}

std::string to_json(const std::vector<FourierBlock>& blocks) {
  json j;
  json k_list = json::array();
  json block_list = json::array();
  for (const FourierBlock& block : blocks) {
    k_list.push_back(block.k);
    json entry;
    entry["k"] = block.k;
    entry["self_conjugate"] = block.self_conjugate;
    entry["energies"] = json_number_list(block.energies());
    block_list.push_back(entry);
  }
  j["k_values"] = k_list;
  j["blocks"] = block_list;
  return dump(j);
}

std::string to_csv(const ZeroModeReport& report) {
  std::ostringstream out;
  out << "mode,row,weight\n";
  for (std::size_t mode = 0; mode < report.profiles.size(); ++mode)
    for (std::size_t row = 0; row < report.profiles[mode].size(); ++row)
      out << mode << "," << row + 1 << "," << format_double(report.profiles[mode][row]) << "\n";
  return out.str();
}

std::string to_json(const ZeroModeReport& report) {
  json j;
  j["count"] = report.count;
  json profiles = json::array();
  for (const std::vector<double>& profile : report.profiles)
    profiles.push_back(json_number_list(profile));
  j["profiles"] = profiles;
  j["gap"] = report.gap;
  j["splitting"] = report.splitting;
  return dump(j);
}

std::string to_csv(const std::vector<SweepPoint>& table) {
  std::ostringstream out;
  out << "t,delta,mu,splitting,gap\n";
  for (const SweepPoint& point : table)
    out << format_double(point.params.t) << "," << format_double(point.params.delta) << ","
        << format_double(point.params.mu) << "," << format_double(point.splitting) << ","
        << format_double(point.gap) << "\n";
  return out.str();
}

std::string to_json(const std::vector<SweepPoint>& table) {
  json list = json::array();
  for (const SweepPoint& point : table) {
    json entry;
    entry["t"] = point.params.t;
    entry["delta"] = point.params.delta;
    entry["mu"] = point.params.mu;
    entry["splitting"] = point.splitting;
    entry["gap"] = point.gap;
    list.push_back(entry);
  }
  return dump(list);
}

std::string to_csv(const std::vector<EnergyCluster>& clusters) {
  std::ostringstream out;
  out << "energy,multiplicity\n";
  for (const EnergyCluster& cluster : clusters)
    out << format_double(cluster.energy) << "," << cluster.multiplicity << "\n";
  return out.str();
}

std::string oracle_json(const std::vector<double>& energies,
                        const std::vector<EnergyCluster>& clusters, long dimension,
                        const std::string& method) {
  json j;
  j["dimension"] = dimension;
  j["method"] = method;
  j["energies"] = json_number_list(energies);
  json cluster_list = json::array();
  for (const EnergyCluster& cluster : clusters) {
    json entry;
    entry["energy"] = cluster.energy;
    entry["multiplicity"] = cluster.multiplicity;
    cluster_list.push_back(entry);
  }
  j["clusters"] = cluster_list;
  j["ground_energy"] = energies.empty() ? 0.0 : energies.front();
  return dump(j);
}

std::string to_csv(const std::vector<StateExpectation>& rows) {
  std::ostringstream out;
  out << "energy,jx,s2,tau2,phi_flag\n";
  for (const StateExpectation& row : rows)
    out << format_double(row.energy) << "," << format_double(row.jx) << ","
        << format_double(row.s2) << "," << format_double(row.tau2) << ","
        << (row.phi_flag ? 1 : 0) << "\n";
  return out.str();
}

std::string to_json(const std::vector<StateExpectation>& rows) {
  json list = json::array();
  for (const StateExpectation& row : rows) {
    json entry;
    entry["energy"] = row.energy;
    entry["jx"] = row.jx;
    entry["s2"] = row.s2;
    entry["tau2"] = row.tau2;
    entry["phi_flag"] = row.phi_flag;
    list.push_back(entry);
  }
  return dump(list);
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"Kitaev model on a finite cylinder: spectra, Majorana edge modes, "
               "momentum blocks, many-body oracle and edge pseudospin tables"};
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key=value config file");

  app.add_option("--rows", config.rows, "cylinder rows M (open direction)")->required();
  app.add_option("--cols", config.cols, "cylinder columns N (periodic direction)")->required();
  app.add_option("--t", config.params.t, "hopping amplitude");
  CLI::Option* delta_opt = app.add_option("--delta", config.params.delta, "pairing order parameter");
  CLI::Option* mu_opt = app.add_option("--mu", config.params.mu, "chemical potential");
  app.add_option("--tol", config.tol, "relative zero-detection tolerance");
  std::string format = "json";
  app.add_option("--format", format, "output format: csv or json");
  app.add_option("--out", config.out_path, "output path (default stdout)");
  app.add_option("--jobs", config.jobs, "sweep worker threads");
  app.add_option("--t-grid", config.t_grid, "sweep grid for t")->delimiter(',');
  app.add_option("--delta-grid", config.delta_grid, "sweep grid for delta")->delimiter(',');
  app.add_option("--mu-grid", config.mu_grid, "sweep grid for mu")->delimiter(',');

  for (const char* name : {"spectrum", "blocks", "zero-modes", "sweep", "oracle", "pseudospin"})
    app.add_subcommand(name);
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    throw UsageError(error.what());
  }

  const auto chosen = app.get_subcommands();
  if (chosen.size() != 1) throw UsageError("exactly one command is required");
  config.command = parse_command(chosen.front()->get_name());

  if (format == "csv")
    config.format = OutputFormat::Csv;
  else if (format == "json")
    config.format = OutputFormat::Json;
  else
    throw UsageError("unknown format: " + format);

  if (config.rows < 1 || config.cols < 1) throw UsageError("rows and cols must be >= 1");
  if (config.tol <= 0.0) throw UsageError("tolerances must be > 0");
  if (config.jobs < 1) throw UsageError("jobs must be >= 1");
  if ((config.command == Command::Oracle || config.command == Command::Pseudospin) &&
      config.rows * config.cols > kMaxOracleSites)
    throw UsageError("oracle commands are capped at " + std::to_string(kMaxOracleSites) +
                     " sites; got " + std::to_string(config.rows * config.cols));
  if (config.command == Command::Blocks) {
    // blocks is defined at the sweet spot; --t sets the overall scale
    if ((delta_opt->count() > 0 && config.params.delta != config.params.t) ||
        (mu_opt->count() > 0 && config.params.mu != config.params.t))
      throw UsageError("blocks assumes the sweet spot t = delta = mu; set --t only");
    config.params.delta = config.params.t;
    config.params.mu = config.params.t;
  }
  return config;
}

int run(const RunConfig& config) {
  try {
    const LatticeSpec spec(config.rows, config.cols);
    std::string payload;
    switch (config.command) {
      case Command::Spectrum: {
        const SpectrumResult spectrum = single_particle_spectrum(build_majorana(spec, config.params));
        payload = config.format == OutputFormat::Csv ? to_csv(spectrum)
                                                     : to_json(spectrum, config);
        break;
      }
      case Command::Blocks: {
        std::vector<FourierBlock> blocks;
        for (double k : k_values(spec.cols)) blocks.push_back(build_block(spec, config.params.t, k));
        payload = config.format == OutputFormat::Csv ? to_csv(blocks) : to_json(blocks);
        break;
      }
      case Command::ZeroModes: {
        const MajoranaForm form = build_majorana(spec, config.params);
        const SpectrumResult spectrum = single_particle_spectrum(form);
        const double norm2 = spectrum.eps.empty() ? 0.0 : spectrum.eps.back();
        const ZeroModeReport report = detect_zero_modes(form, config.tol * (1.0 + norm2));
        payload = config.format == OutputFormat::Csv ? to_csv(report) : to_json(report);
        break;
      }
      case Command::Sweep: {
        const std::vector<SweepPoint> table =
            splitting_sweep(spec, sweep_grid(config), config.jobs);
        payload = config.format == OutputFormat::Csv ? to_csv(table) : to_json(table);
        break;
      }
      case Command::Oracle: {
        const FockSpace space(spec);
        const SparseOp h = build_manybody_h(space, config.params);
        std::vector<double> energies;
        std::string method;
        if (space.dim() <= kDenseDim) {
          energies = dense_spectrum(h);
          method = "dense";
        } else {
          energies = lanczos_lowest(h, 8);
          method = "lanczos";
        }
        const std::vector<EnergyCluster> clusters = cluster_energies(energies);
        payload = config.format == OutputFormat::Csv
                      ? to_csv(clusters)
                      : oracle_json(energies, clusters, space.dim(), method);
        break;
      }
      case Command::Pseudospin: {
        const std::vector<StateExpectation> rows = eigenstate_expectations(spec, config.params);
        payload = config.format == OutputFormat::Csv ? to_csv(rows) : to_json(rows);
        break;
      }
    }
    write_artifact(config, payload);
    return 0;
  } catch (const InvariantError& error) {
    json j;
    j["error"] = "invariant_violation";
    j["invariant"] = error.invariant();
    j["deviation"] = error.deviation();
    std::cerr << j.dump() << "\n";
    return 1;
  } catch (const std::exception& error) {
    json j;
    j["error"] = "failure";
    j["detail"] = error.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const std::string& arg : args) {
    if (arg == "-h" || arg == "--help") {
      std::cout << "kitaev-cyl COMMAND [flags]\n"
                   "commands: spectrum | blocks | zero-modes | sweep | oracle | pseudospin\n"
                   "flags: --rows M --cols N [--t X] [--delta X] [--mu X] [--tol X]\n"
                   "       [--format csv|json] [--out PATH] [--jobs K] [--config FILE]\n"
                   "       [--t-grid a,b,...] [--delta-grid ...] [--mu-grid ...] (sweep)\n";
      return 0;
    }
  }
  try {
    return run(parse_config(args));
  } catch (const UsageError& error) {
    std::cerr << "usage error: " << error.what() << "\n";
    return 2;
  }
}

}  // namespace kitaev
