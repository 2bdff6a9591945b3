#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hosc.hpp"

namespace hosc::cli {

enum class Backend { spectral, propagator, analytic };

struct RunConfig {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  /// Grid half extent in units of alpha; 0 keeps the scenario default.
  double extent = 0.0;
  std::size_t points = 0;
  int nmax = -1;
  Backend backend = Backend::spectral;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  /// Projection residual tolerance; 0 keeps the scenario default.
  double tolerance = 0.0;

  OscillatorParams params() const { return OscillatorParams::make(hbar, mass, omega); }
};

/// A wave to work on: either a named demo or a wave file.
struct Source {
  std::string name;
  SampledWave initial;
  EigenbasisTable basis;
  ProjectOptions projection;
  MomentOptions moments;
  std::function<SampledWave(double)> analytic;
  std::string default_times;
  double scale = 1.0;
};

namespace detail {

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::spectral: return "spectral";
    case Backend::propagator: return "propagator";
    default: return "analytic";
  }
}

inline std::optional<Grid> grid_override(const RunConfig& cfg, const OscillatorParams& params) {
  if (cfg.extent <= 0.0 && cfg.points == 0) return std::nullopt;
  return make_grid((cfg.extent > 0.0 ? cfg.extent : kDefaultHalfExtent) * params.alpha(),
                   cfg.points > 0 ? cfg.points : kDefaultPoints);
}

inline Source load_source(const RunConfig& cfg, const std::string& demo, const std::string& input) {
  if (demo.empty() == input.empty()) fail(ErrorCode::invalid_argument, "give exactly one of --demo or --input");
  if (!demo.empty()) {
    const OscillatorParams params = cfg.params();
    DemoScenario d = make_demo(demo, params, grid_override(cfg, params),
                               cfg.nmax >= 0 ? std::optional<int>(cfg.nmax) : std::nullopt);
    if (cfg.tolerance > 0.0) d.projection.tolerance = cfg.tolerance;
    return {d.name,        d.initial,      build_basis(params, d.grid, d.n_max), d.projection, d.moments,
            d.analytic,    d.default_times, d.scale};
  }
  SampledWave wave = io::wave_from_json(io::read_json_file(input));
  const int n_max = cfg.nmax >= 0 ? cfg.nmax : default_nmax(wave.params(), wave.grid());
  ProjectOptions projection;
  if (cfg.tolerance > 0.0) projection.tolerance = cfg.tolerance;
  return {std::filesystem::path(input).stem().string(), wave, build_basis(wave.params(), wave.grid(), n_max),
          projection, MomentOptions{}, nullptr, "0"};
}

inline std::string out_path(const RunConfig& cfg, const std::string& file) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / file).string();
}

inline std::string num(double v) { return io::format_number(v); }

}  // namespace detail

/// Evolves `src` to each time with the configured backend.
inline std::vector<SampledWave> evolve_all(const RunConfig& cfg, const Source& src, const std::vector<double>& times,
                                           std::ostream& log) {
  std::vector<SampledWave> out;
  std::optional<SpectralCoeffs> coeffs;
  if (cfg.backend == Backend::spectral) {
    coeffs = project(src.initial, src.basis, src.projection);
    log << "projection residual " << detail::num(coeffs->residual)
        << (coeffs->truncation_warning ? " (above tolerance: truncated)" : "") << "\n";
    const std::string path = detail::out_path(cfg, src.name + "_coeffs.json");
    io::write_json_file(path, io::coeffs_to_json(*coeffs));
    log << "coefficients -> " << path << "\n";
  }
  if (cfg.backend == Backend::analytic && !src.analytic) {
    fail(ErrorCode::invalid_argument, "'" + src.name + "' has no closed-form evolution");
  }
  for (double t : times) {
    switch (cfg.backend) {
      case Backend::spectral:
        out.push_back(synthesize(evolve_spectral(*coeffs, t), src.basis));
        break;
      case Backend::propagator: {
        PropagatorResult r = evolve_propagator(src.initial, t);
        if (r.oscillation_warning) {
          log << "warning: kernel phase step " << detail::num(r.max_phase_step) << " rad at t = " << detail::num(t)
              << "\n";
        }
        out.push_back(std::move(r.wave));
        break;
      }
      case Backend::analytic:
        out.push_back(src.analytic(t));
        break;
    }
  }
  return out;
}

inline void write_waves(const RunConfig& cfg, const std::string& name, const std::vector<double>& times,
                        const std::vector<SampledWave>& waves, std::ostream& log) {
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const std::string path = detail::out_path(cfg, name + "_" + std::to_string(i) + ".json");
    io::write_json_file(path, io::wave_to_json(waves[i]));
    log << "t = " << detail::num(times[i]) << "  norm " << detail::num(norm(waves[i])) << "  -> " << path << "\n";
  }
}

/// Moment rows recomputed from each evolved wave, plus the largest relative
/// deviation from the closed-form trajectories.
inline double write_moments(const RunConfig& cfg, const Source& src, const std::vector<double>& times,
                            const std::vector<SampledWave>& waves, std::ostream& log) {
  const OscillatorParams& params = src.initial.params();
  const WaveMoments m0 = wave_moments(src.initial, src.basis, src.moments);
  const MomentConstants constants = moment_constants(m0.second, params);
  std::vector<io::MomentRow> rows;
  double deviation = 0.0;
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const WaveMoments m = wave_moments(waves[i], src.basis, src.moments);
    rows.push_back(io::make_moment_row(times[i], m.first, m.second, params));
    const SecondMoments closed = second_moments_at(constants, times[i], params);
    const FirstMoments centroid = centroid_trajectory(m0.first, times[i], params);
    const double scale = params.hbar() * constants.eps;
    deviation = std::max({deviation, std::abs(m.second.dx2 - closed.dx2) / closed.dx2,
                          std::abs(m.second.dp2 - closed.dp2) / closed.dp2, std::abs(m.second.dxp - closed.dxp) / scale,
                          std::abs(m.first.x_mean - centroid.x_mean) / std::sqrt(closed.dx2),
                          std::abs(m.first.p_mean - centroid.p_mean) / std::sqrt(closed.dp2)});
  }
  const std::string path = detail::out_path(cfg, src.name + "_moments.csv");
  io::write_text_file(path, io::moments_csv(rows));
  log << "constants eps " << detail::num(constants.eps) << "  A " << detail::num(constants.amp) << "  K "
      << detail::num(constants.K) << "  t0 " << detail::num(constants.t0) << "\n";
  log << "max deviation from closed-form moments " << detail::num(deviation) << "\n";
  log << "moments -> " << path << "\n";
  return deviation;
}

/// Entry point. Returns the process exit status: 0 on success, 1 when a
/// verification check fails, 2 for usage errors, 10 + code for library errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Harmonic-oscillator wave evolution, moments and state transforms", "hosc"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file with the global flags (flags given on the command line win)");

  RunConfig cfg;
  std::string backend = "spectral";
  app.add_option("--hbar", cfg.hbar, "reduced Planck constant")->capture_default_str();
  app.add_option("--mass", cfg.mass, "particle mass")->capture_default_str();
  app.add_option("--omega", cfg.omega, "angular frequency")->capture_default_str();
  app.add_option("--extent", cfg.extent, "grid half extent, in units of alpha (default: per scenario)");
  app.add_option("--points", cfg.points, "grid points (default: per scenario)");
  app.add_option("--nmax", cfg.nmax, "highest basis mode (default: per scenario)");
  app.add_option("--backend", backend, "evolution backend")
      ->check(CLI::IsMember({"spectral", "propagator", "analytic"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for random states")->capture_default_str();
  app.add_option("--out-dir", cfg.out_dir, "directory for output files")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "projection residual tolerance (default: per scenario)");

  std::string demo, input, times;
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--demo", demo, "named scenario");
    sub->add_option("--input", input, "wave file (JSON)");
  };

  CLI::App* evolve = app.add_subcommand("evolve", "evolve a wave and write one wave file per time");
  add_source(evolve);
  evolve->add_option("--times", times, "time list: a:b:n or comma list; T is the period");

  CLI::App* moments = app.add_subcommand("moments", "write the moment time series as CSV");
  add_source(moments);
  moments->add_option("--times", times, "time list (default 0:2T:65)");

  CLI::App* stable = app.add_subcommand("stable", "reduce a wave to its stable form");
  add_source(stable);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant checks");
  int samples = 10;
  verify->add_option("--samples", samples, "random states per check")->capture_default_str();

  CLI::App* demo_cmd = app.add_subcommand("demo", "list the named scenarios, or build one");
  std::string demo_name;
  demo_cmd->add_option("name", demo_name, "scenario to build");
  demo_cmd->add_option("--times", times, "time list (default: per scenario)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  cfg.backend = backend == "propagator" ? Backend::propagator
                : backend == "analytic" ? Backend::analytic
                                        : Backend::spectral;

  try {
    std::ostream& log = out;
    log << "seed " << cfg.seed << "\n";
    const double period = cfg.params().period();

    if (*evolve || *demo_cmd) {
      if (*demo_cmd && demo_name.empty()) {
        for (auto name : demo_names()) {
          const DemoScenario d = make_demo(name, cfg.params());
          out << name << "  " << d.description << "\n";
        }
        return 0;
      }
      const Source src = detail::load_source(cfg, *demo_cmd ? demo_name : demo, *demo_cmd ? "" : input);
      const std::vector<double> ts = parse_times(times.empty() ? src.default_times : times, period);
      log << "source " << src.name << "  backend " << detail::backend_name(cfg.backend) << "  n_max "
          << src.basis.n_max() << "  points " << src.basis.grid().size() << "  normalization scale "
          << detail::num(src.scale) << "\n";
      const std::vector<SampledWave> waves = evolve_all(cfg, src, ts, log);
      write_waves(cfg, src.name, ts, waves, log);
      if (*demo_cmd) write_moments(cfg, src, ts, waves, log);
      return 0;
    }
    if (*moments) {
      const Source src = detail::load_source(cfg, demo, input);
      const std::vector<double> ts = parse_times(times.empty() ? "0:2T:65" : times, period);
      log << "source " << src.name << "  backend " << detail::backend_name(cfg.backend) << "\n";
      write_moments(cfg, src, ts, evolve_all(cfg, src, ts, log), log);
      return 0;
    }
    if (*stable) {
      const Source src = detail::load_source(cfg, demo, input);
      TransformOptions opts;
      opts.moments = src.moments;
      opts.interpolation_tolerance = std::max(opts.interpolation_tolerance, src.projection.tolerance);
      const CenteredState cs = remove_centroid(src.initial, src.basis, opts);
      const StableForm sf = to_stable(cs.wave, src.basis, opts);
      const std::string path = detail::out_path(cfg, src.name + "_stable.json");
      io::write_json_file(path, io::stable_to_json(sf));
      out << "x0 " << detail::num(cs.frame.x0) << "\n"
          << "p0 " << detail::num(cs.frame.p0) << "\n"
          << "s " << detail::num(sf.s) << "\n"
          << "b2 " << (sf.b2 ? detail::num(*sf.b2) : std::string("inf")) << "\n"
          << "eps " << detail::num(sf.constants.eps) << "\n"
          << "A " << detail::num(sf.constants.amp) << "\n"
          << "K " << detail::num(sf.constants.K) << "\n"
          << "t0 " << detail::num(sf.constants.t0) << "\n"
          << "stable form -> " << path << "\n";
      return 0;
    }
    if (*verify) {
      VerifyConfig vc;
      vc.params = cfg.params();
      vc.half_extent = cfg.extent > 0.0 ? cfg.extent * vc.params.alpha() : 0.0;
      vc.points = cfg.points;
      vc.n_max = cfg.nmax;
      vc.seed = cfg.seed;
      vc.samples = samples;
      const std::vector<CheckResult> results = run_verification(vc);
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << detail::num(r.measured) << " < "
            << detail::num(r.tolerance);
        if (!r.detail.empty()) out << "  " << r.detail;
        out << "\n";
      }
      return all_passed(results) ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << to_string(ErrorCode::io_error) << ": " << e.what() << "\n";
    return exit_status(ErrorCode::io_error);
  }
  return 0;
}

}  // namespace hosc::cli
