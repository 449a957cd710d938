#ifndef CHAOSKIT_CLI_HPP
#define CHAOSKIT_CLI_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoskit/core.hpp"
#include "chaoskit/csv.hpp"
#include "chaoskit/escape.hpp"
#include "chaoskit/henon.hpp"
#include "chaoskit/integrator.hpp"
#include "chaoskit/logistic.hpp"
#include "chaoskit/lorenz.hpp"
#include "chaoskit/poincare.hpp"

// Command-line front end. One subcommand per experiment, all output as
// deterministic CSV (stdout or -o FILE). Exit codes: 0 success, 1 runtime
// failure (escape, singular parameter, ...), 2 usage error.

namespace chaoskit::cli {

namespace detail {

inline void with_output(const std::string& path,
                        const std::function<void(std::ostream&)>& emit) {
  if (path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  emit(out);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

inline CrossingDirection parse_direction(const std::string& name) {
  if (name == "positive") return CrossingDirection::positive;
  if (name == "negative") return CrossingDirection::negative;
  return CrossingDirection::both;
}

inline void emit_complex(CsvWriter& csv, const std::string& key,
                         const std::complex<double>& z) {
  csv.field(key + ".re").field(z.real()).end_row();
  csv.field(key + ".im").field(z.imag()).end_row();
}

}  // namespace detail

inline int run(std::vector<std::string> args) {
  CLI::App app{"chaoskit: deterministic experiments on classic chaotic systems"};
  app.require_subcommand(1);
  int precision = kMaxPrecision;
  app.add_option("--precision", precision,
                 "significant digits for CSV floats")
      ->check(CLI::Range(kMinPrecision, kMaxPrecision))
      ->capture_default_str();

  // ---- lorenz: orbit samples / analyze ------------------------------
  auto* lorenz_cmd =
      app.add_subcommand("lorenz", "integrate a Lorenz orbit (CSV t,x,y,z)");
  LorenzParams lp;
  State3 ls0{0.0, 1.0, 0.0};
  double l_dt = 0.01;
  std::size_t l_steps = 10000;
  std::string l_out = "-";
  lorenz_cmd->add_option("--sigma", lp.sigma, "Prandtl-like parameter")
      ->capture_default_str();
  lorenz_cmd->add_option("--r", lp.r, "Rayleigh-like parameter")
      ->capture_default_str();
  lorenz_cmd->add_option("--b", lp.b, "geometric parameter")
      ->capture_default_str();
  lorenz_cmd->add_option("--x0", ls0.x, "initial X")->capture_default_str();
  lorenz_cmd->add_option("--y0", ls0.y, "initial Y")->capture_default_str();
  lorenz_cmd->add_option("--z0", ls0.z, "initial Z")->capture_default_str();
  lorenz_cmd->add_option("--dt", l_dt, "step size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lorenz_cmd->add_option("--steps", l_steps, "number of steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lorenz_cmd->add_option("-o,--output", l_out, "output path ('-' = stdout)")
      ->capture_default_str();

  auto* analyze_cmd = lorenz_cmd->add_subcommand(
      "analyze", "equilibria, characteristic coefficients, critical r "
                 "(CSV key,value)");
  LorenzParams ap;
  std::string a_out = "-";
  analyze_cmd->add_option("--sigma", ap.sigma, "Prandtl-like parameter")
      ->capture_default_str();
  analyze_cmd->add_option("--r", ap.r, "Rayleigh-like parameter")
      ->capture_default_str();
  analyze_cmd->add_option("--b", ap.b, "geometric parameter")
      ->capture_default_str();
  analyze_cmd->add_option("-o,--output", a_out, "output path ('-' = stdout)")
      ->capture_default_str();

  // ---- poincare: plane section of a Lorenz orbit --------------------
  auto* poincare_cmd = app.add_subcommand(
      "poincare", "plane section of a Lorenz orbit (CSV index,t,x,y,z)");
  LorenzParams pp;
  State3 ps0{0.0, 1.0, 0.0};
  double p_dt = 0.01;
  std::size_t p_steps = 10000;
  State3 p_normal{0.0, 0.0, 1.0};
  double p_offset = 27.0;
  std::string p_direction = "positive";
  std::string p_out = "-";
  poincare_cmd->add_option("--sigma", pp.sigma, "Prandtl-like parameter")
      ->capture_default_str();
  poincare_cmd->add_option("--r", pp.r, "Rayleigh-like parameter")
      ->capture_default_str();
  poincare_cmd->add_option("--b", pp.b, "geometric parameter")
      ->capture_default_str();
  poincare_cmd->add_option("--x0", ps0.x, "initial X")->capture_default_str();
  poincare_cmd->add_option("--y0", ps0.y, "initial Y")->capture_default_str();
  poincare_cmd->add_option("--z0", ps0.z, "initial Z")->capture_default_str();
  poincare_cmd->add_option("--dt", p_dt, "step size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  poincare_cmd->add_option("--steps", p_steps, "number of steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  poincare_cmd->add_option("--nx", p_normal.x, "plane normal x")
      ->capture_default_str();
  poincare_cmd->add_option("--ny", p_normal.y, "plane normal y")
      ->capture_default_str();
  poincare_cmd->add_option("--nz", p_normal.z, "plane normal z")
      ->capture_default_str();
  poincare_cmd->add_option("--offset", p_offset, "plane offset (normal.s = offset)")
      ->capture_default_str();
  poincare_cmd
      ->add_option("--direction", p_direction, "accepted crossing direction")
      ->check(CLI::IsMember({"positive", "negative", "both"}))
      ->capture_default_str();
  poincare_cmd->add_option("-o,--output", p_out, "output path ('-' = stdout)")
      ->capture_default_str();

  // ---- henon: cloud / fixed-points / regimes ------------------------
  auto* henon_cmd =
      app.add_subcommand("henon", "iterate the quadratic map (CSV i,x,y)");
  HenonParams hp;
  Point2 h_x0{0.0, 0.0};
  std::size_t h_transient = 0;
  std::size_t h_n = 10000;
  std::string h_out = "-";
  henon_cmd->add_option("--a", hp.a, "quadratic coefficient")
      ->capture_default_str();
  henon_cmd->add_option("--b", hp.b, "contraction factor")
      ->capture_default_str();
  henon_cmd->add_option("--x0", h_x0.x, "initial x")->capture_default_str();
  henon_cmd->add_option("--y0", h_x0.y, "initial y")->capture_default_str();
  henon_cmd->add_option("--transient", h_transient, "iterates to discard")
      ->capture_default_str();
  henon_cmd->add_option("--n", h_n, "iterates to record")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  henon_cmd->add_option("-o,--output", h_out, "output path ('-' = stdout)")
      ->capture_default_str();

  auto* henon_fp_cmd = henon_cmd->add_subcommand(
      "fixed-points",
      "fixed points with eigenvalues and manifold slopes (CSV)");
  HenonParams hfp;
  std::string hf_out = "-";
  henon_fp_cmd->add_option("--a", hfp.a, "quadratic coefficient")
      ->capture_default_str();
  henon_fp_cmd->add_option("--b", hfp.b, "contraction factor")
      ->capture_default_str();
  henon_fp_cmd->add_option("-o,--output", hf_out, "output path ('-' = stdout)")
      ->capture_default_str();

  auto* henon_regimes_cmd = henon_cmd->add_subcommand(
      "regimes", "behavior labels over an a-sweep (CSV a,label,a0,a1)");
  double hr_b = 0.3, hr_alo = 0.2, hr_ahi = 1.6;
  std::size_t hr_n = 8, hr_transient = 1000, hr_probe = 10000;
  Point2 hr_x0{0.0, 0.0};
  std::string hr_out = "-";
  henon_regimes_cmd->add_option("--b", hr_b, "contraction factor")
      ->capture_default_str();
  henon_regimes_cmd->add_option("--a-lo", hr_alo, "sweep start")
      ->capture_default_str();
  henon_regimes_cmd->add_option("--a-hi", hr_ahi, "sweep end")
      ->capture_default_str();
  henon_regimes_cmd->add_option("--n", hr_n, "sweep point count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  henon_regimes_cmd->add_option("--x0", hr_x0.x, "initial x")
      ->capture_default_str();
  henon_regimes_cmd->add_option("--y0", hr_x0.y, "initial y")
      ->capture_default_str();
  henon_regimes_cmd->add_option("--transient", hr_transient, "warm-up iterates")
      ->capture_default_str();
  henon_regimes_cmd->add_option("--probe", hr_probe, "probe iterates")
      ->capture_default_str();
  henon_regimes_cmd->add_option("-o,--output", hr_out, "output path ('-' = stdout)")
      ->capture_default_str();

  // ---- logistic: diagram / cascade / orbits --------------------------
  auto* logistic_cmd =
      app.add_subcommand("logistic", "quadratic-family experiments");
  logistic_cmd->require_subcommand(1);

  auto* diagram_cmd = logistic_cmd->add_subcommand(
      "diagram", "bifurcation diagram, long format (CSV a,x)");
  double d_alo = 2.5, d_ahi = 4.0, d_x0 = 0.5;
  int d_nparams = 301, d_transient = 500, d_keep = 100;
  std::string d_out = "-";
  diagram_cmd->add_option("--a-lo", d_alo, "grid start")->capture_default_str();
  diagram_cmd->add_option("--a-hi", d_ahi, "grid end")->capture_default_str();
  diagram_cmd->add_option("--n-params", d_nparams, "grid point count")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  diagram_cmd->add_option("--transient", d_transient, "iterates to discard")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  diagram_cmd->add_option("--keep", d_keep, "iterates to record per a")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  diagram_cmd->add_option("--x0", d_x0, "seed point in (0,1)")
      ->capture_default_str();
  diagram_cmd->add_option("-o,--output", d_out, "output path ('-' = stdout)")
      ->capture_default_str();

  auto* cascade_cmd = logistic_cmd->add_subcommand(
      "cascade", "period-doubling onsets (CSV period,a_onset)");
  double c_alo = 2.9, c_ahi = 3.6;
  int c_kmax = 5;
  std::string c_out = "-";
  cascade_cmd->add_option("--a-lo", c_alo, "scan start")->capture_default_str();
  cascade_cmd->add_option("--a-hi", c_ahi, "scan end")->capture_default_str();
  cascade_cmd->add_option("--k-max", c_kmax, "highest doubling index (<= 6)")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  cascade_cmd->add_option("-o,--output", c_out, "output path ('-' = stdout)")
      ->capture_default_str();

  auto* orbits_cmd = logistic_cmd->add_subcommand(
      "orbits", "prime cycles of one period (CSV cycle,point,x,multiplier,stability)");
  double o_a = 3.83;
  int o_period = 3;
  std::string o_out = "-";
  orbits_cmd->add_option("--a", o_a, "parameter in (0,4]")->capture_default_str();
  orbits_cmd->add_option("--period", o_period, "prime period (1..12)")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  orbits_cmd->add_option("-o,--output", o_out, "output path ('-' = stdout)")
      ->capture_default_str();

  // ---- cantor: levels / check ----------------------------------------
  auto* cantor_cmd = app.add_subcommand(
      "cantor", "escape-set interval levels for a > 4 (CSV level,lo,hi)");
  double k_a = 5.0;
  int k_depth = 8;
  std::string k_out = "-";
  cantor_cmd->add_option("--a", k_a, "parameter (> 4)")->capture_default_str();
  cantor_cmd->add_option("--depth", k_depth, "deepest level to emit (<= 30)")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  cantor_cmd->add_option("-o,--output", k_out, "output path ('-' = stdout)")
      ->capture_default_str();

  auto* check_cmd = cantor_cmd->add_subcommand(
      "check", "expansion condition min|f'| on I minus A0 (CSV key,value)");
  double ck_a = 5.0;
  std::string ck_out = "-";
  check_cmd->add_option("--a", ck_a, "parameter (> 4)")->capture_default_str();
  check_cmd->add_option("-o,--output", ck_out, "output path ('-' = stdout)")
      ->capture_default_str();

  // ---- parse ----------------------------------------------------------
  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  // ---- dispatch ------------------------------------------------------
  try {
    if (analyze_cmd->parsed()) {
      detail::with_output(a_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("key").field("value").end_row();
        csv.field("critical_r").field(critical_r(ap)).end_row();
        const auto reports = equilibria(ap);
        const std::vector<std::string> names = {"origin", "c_plus", "c_minus"};
        for (std::size_t i = 0; i < reports.size(); ++i) {
          const auto& eq = reports[i];
          const auto& name = names[i];
          csv.field(name + ".x").field(eq.location.x).end_row();
          csv.field(name + ".y").field(eq.location.y).end_row();
          csv.field(name + ".z").field(eq.location.z).end_row();
          csv.field(name + ".c2").field(eq.char_coeffs[1]).end_row();
          csv.field(name + ".c1").field(eq.char_coeffs[2]).end_row();
          csv.field(name + ".c0").field(eq.char_coeffs[3]).end_row();
          for (int j = 0; j < 3; ++j) {
            detail::emit_complex(csv, name + ".lambda" + std::to_string(j + 1),
                                 eq.eigen_summary.roots[j]);
          }
          csv.field(name + ".stability")
              .field(to_string(eq.eigen_summary.label))
              .end_row();
        }
      });
    } else if (lorenz_cmd->parsed()) {
      const auto orbit = integrate(flow(lp), ls0, StepPlan{0.0, l_dt, l_steps});
      detail::with_output(l_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("t").field("x").field("y").field("z").end_row();
        for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
          const auto& s = orbit.samples[i];
          csv.field(orbit.time_at(i)).field(s.x).field(s.y).field(s.z).end_row();
        }
      });
    } else if (poincare_cmd->parsed()) {
      const auto orbit = integrate(flow(pp), ps0, StepPlan{0.0, p_dt, p_steps});
      const auto plane = make_plane(p_normal, p_offset,
                                    detail::parse_direction(p_direction));
      const auto points = section(orbit, plane);
      detail::with_output(p_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("index").field("t").field("x").field("y").field("z").end_row();
        for (const auto& pt : points) {
          csv.field(pt.index)
              .field(pt.t)
              .field(pt.location.x)
              .field(pt.location.y)
              .field(pt.location.z)
              .end_row();
        }
      });
    } else if (henon_fp_cmd->parsed()) {
      const auto fps = fixed_points(hfp);
      detail::with_output(hf_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("x")
            .field("y")
            .field("lambda1")
            .field("lambda2")
            .field("p1")
            .field("p2")
            .field("stability")
            .end_row();
        for (const auto& fp : fps) {
          csv.field(fp.location.x).field(fp.location.y);
          if (fp.eigenvalues) {
            csv.field((*fp.eigenvalues)[0]).field((*fp.eigenvalues)[1]);
            csv.field((*fp.slopes)[0]).field((*fp.slopes)[1]);
          } else {
            csv.field("").field("").field("").field("");
          }
          csv.field(to_string(fp.stability)).end_row();
        }
      });
    } else if (henon_regimes_cmd->parsed()) {
      detail::with_output(hr_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("a").field("label").field("a0").field("a1").end_row();
        for (std::size_t i = 0; i < hr_n; ++i) {
          const double a =
              hr_n == 1 ? hr_alo
                        : hr_alo + (hr_ahi - hr_alo) *
                                       static_cast<double>(i) /
                                       static_cast<double>(hr_n - 1);
          const auto report = classify_regime(HenonParams{a, hr_b}, hr_x0,
                                              hr_transient, hr_probe);
          csv.field(a)
              .field(to_string(report.label))
              .field(report.a0)
              .field(report.a1)
              .end_row();
        }
      });
    } else if (henon_cmd->parsed()) {
      const auto cloud = attractor_cloud(hp, h_x0, h_transient, h_n);
      detail::with_output(h_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("i").field("x").field("y").end_row();
        for (std::size_t i = 0; i < cloud.size(); ++i) {
          csv.field(i).field(cloud[i].x).field(cloud[i].y).end_row();
        }
      });
    } else if (diagram_cmd->parsed()) {
      const auto columns = bifurcation_diagram(d_alo, d_ahi, d_nparams,
                                               d_transient, d_keep, d_x0);
      detail::with_output(d_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("a").field("x").end_row();
        for (const auto& [a, xs] : columns) {
          for (const double x : xs) {
            csv.field(a).field(x).end_row();
          }
        }
      });
    } else if (cascade_cmd->parsed()) {
      const auto record = cascade_scan(c_alo, c_ahi, c_kmax);
      detail::with_output(c_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("period").field("a_onset").end_row();
        for (const auto& [period, onset] : record.onsets) {
          csv.field(period).field(onset).end_row();
        }
      });
    } else if (orbits_cmd->parsed()) {
      const auto orbits = find_periodic_orbits(o_a, o_period);
      detail::with_output(o_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("cycle")
            .field("point")
            .field("x")
            .field("multiplier")
            .field("stability")
            .end_row();
        for (std::size_t c = 0; c < orbits.size(); ++c) {
          const auto& orbit = orbits[c];
          for (std::size_t j = 0; j < orbit.points.size(); ++j) {
            csv.field(c)
                .field(j)
                .field(orbit.points[j])
                .field(orbit.multiplier)
                .field(to_string(orbit.stability))
                .end_row();
          }
        }
      });
    } else if (check_cmd->parsed()) {
      const auto report = expansion_check(ck_a);
      detail::with_output(ck_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("key").field("value").end_row();
        csv.field("a").field(ck_a).end_row();
        csv.field("min_derivative").field(report.min_derivative).end_row();
        csv.field("holds").field(report.holds).end_row();
        csv.field("threshold_a").field(2.0 + std::sqrt(5.0)).end_row();
      });
    } else if (cantor_cmd->parsed()) {
      const auto levels = cantor_levels(k_a, k_depth);
      detail::with_output(k_out, [&](std::ostream& out) {
        CsvWriter csv(out, precision);
        csv.field("level").field("lo").field("hi").end_row();
        for (std::size_t n = 0; n < levels.size(); ++n) {
          for (const auto& iv : levels[n].intervals) {
            csv.field(n).field(iv.lo).field(iv.hi).end_row();
          }
        }
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace chaoskit::cli

#endif  // CHAOSKIT_CLI_HPP
