#include "rayleigh/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rayleigh/error.hpp"
#include "rayleigh/material_io.hpp"
#include "rayleigh/search.hpp"
#include "rayleigh/special_cases.hpp"
#include "rayleigh/spectrum.hpp"

namespace rayleigh::cli {

namespace {

using json = nlohmann::ordered_json;

json complex_json(cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

struct Common {
  std::string material_path;
  std::string format = "json";
};

struct WindowFlags {
  ScanWindow w{0.05, 1.5, -0.4, 0.0, 128, 64};
};

void add_window_flags(CLI::App* cmd, WindowFlags& wf) {
  cmd->add_option("--re-min", wf.w.re_min, "lower bound of Re v");
  cmd->add_option("--re-max", wf.w.re_max, "upper bound of Re v");
  cmd->add_option("--im-min", wf.w.im_min, "lower bound of Im v (<= 0 in the Rayleigh quadrant)");
  cmd->add_option("--im-max", wf.w.im_max, "upper bound of Im v");
  cmd->add_option("--nx", wf.w.nx, "lattice points along Re v")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--ny", wf.w.ny, "lattice points along Im v")->check(CLI::Range(2, 1 << 20));
}

void print_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int report_error(std::ostream& out, std::ostream& err, const SolverError& e, int code) {
  err << "error: " << e.what() << '\n';
  print_json(out, json{{"error", std::string(e.name())}, {"message", e.what()}});
  return code;
}

json ellipticity_json(const EllipticityReport& r) {
  json margins = json::object();
  for (auto name : {cond::kRho, cond::kA, cond::kB, cond::kK, cond::kPModulus, cond::kMu, cond::kLongitudinal,
                    cond::kTransverse}) {
    margins[std::string(name)] = r.margins.at(std::string(name));
  }
  return json{{"passed", r.passed}, {"violations", r.violations}, {"margins", margins}};
}

// -- check ------------------------------------------------------------------

int cmd_check(const MaterialCoefficients& mat, std::ostream& out) {
  const auto report = check_strong_ellipticity(mat);
  const auto coupling = classify_coupling(mat);
  const auto cubic = derived_cubic_unchecked(mat);
  const bool distinct = report.passed && check_distinct_cubic_roots(cubic);

  json doc;
  doc["strong_ellipticity"] = ellipticity_json(report);
  doc["coupling"] = json{{"tag", std::string(coupling_tag_name(coupling.tag))}, {"description", coupling.description}};
  doc["distinct_cubic_roots"] = distinct;
  if (report.passed) {
    doc["cubic"] = json{{"d", cubic.d},   {"a2", cubic.a2}, {"a0", cubic.a0}, {"b4", cubic.b4},
                        {"b2", cubic.b2}, {"b0", cubic.b0}, {"h0", cubic.h0}, {"h1", cubic.h1}};
  }
  print_json(out, doc);
  return report.passed && distinct ? kExitOk : kExitFailure;
}

// -- roots ------------------------------------------------------------------

struct RootRow {
  int index;
  double t;
  std::string source;
  double residual;
};

void print_rows(std::ostream& out, const std::vector<RootRow>& rows, const std::string& format, const json& extra) {
  if (format == "text") {
    out << std::left << std::setw(6) << "index" << std::setw(26) << "t" << std::setw(20) << "source"
        << "residual\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(6) << r.index << std::setw(26) << format_double(r.t) << std::setw(20) << r.source
          << format_double(r.residual) << '\n';
    }
    return;
  }
  json doc = extra;
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(json{{"index", r.index}, {"t", r.t}, {"source", r.source}, {"residual", r.residual}});
  }
  doc["roots"] = arr;
  print_json(out, doc);
}

int cmd_roots(const MaterialCoefficients& mat, const Common& c, bool use_case, std::ostream& out) {
  const auto cubic = derived_cubic(mat);
  auto residual = [&](const ModeRoot& r) {
    const auto q = polynomial_residual(cubic, r.t);
    return std::abs(r.source == RootSource::q2 ? q.q2 : q.q3);
  };

  std::vector<RootRow> rows;
  json extra = json::object();
  if (use_case) {
    const auto tag = classify_coupling(mat).tag;
    const auto set = roots_case(mat, tag);
    extra["case"] = std::string(coupling_tag_name(tag));
    for (int i = 0; i < 5; ++i) rows.push_back({set.roots[i].index, set.roots[i].t, set.labels[i], residual(set.roots[i])});
  } else {
    const auto set = mode_speeds(mat);
    extra["pairwise_min_gap"] = set.pairwise_min_gap;
    for (const auto& r : set.roots) {
      rows.push_back({r.index, r.t, r.source == RootSource::q2 ? "q2" : "q3", residual(r)});
    }
  }
  print_rows(out, rows, c.format, extra);
  return kExitOk;
}

// -- scan -------------------------------------------------------------------

void write_csv(std::ostream& os, const ScanGrid& grid) {
  const auto& w = grid.window;
  os << "re_v,im_v,F\n";
  for (int j = 0; j < w.ny; ++j) {
    for (int i = 0; i < w.nx; ++i) {
      os << format_double(w.re_at(i)) << ',' << format_double(w.im_at(j)) << ',' << format_double(grid.at(i, j))
         << '\n';
    }
  }
}

int cmd_scan(const MaterialCoefficients& mat, const WindowFlags& wf, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  const ScanGrid grid = grid_scan(mat, wf.w);
  if (out_path.empty() || out_path == "-") {
    write_csv(out, grid);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << out_path << '\n';
      return kExitInput;
    }
    write_csv(file, grid);
  }
  err << "scanned " << grid.values.size() << " points, " << grid.failures << " failed\n";
  return kExitOk;
}

// -- solve ------------------------------------------------------------------

json root_json(const MaterialCoefficients& mat, const RayleighRoot& r, bool verify) {
  json doc;
  doc["v_re"] = r.v.re();
  doc["v_im"] = r.v.value().imag();
  doc["f_value"] = r.f_value;
  doc["det_abs"] = r.det_abs;
  doc["classification"] = r.classification == RootClass::converged ? "converged" : "stagnated";
  doc["iterations"] = r.iterations;
  doc["evaluations"] = r.evaluations;
  if (r.gamma) {
    json g = json::array();
    for (int k = 0; k < 5; ++k) g.push_back(complex_json(r.gamma->gamma(k)));
    doc["gamma"] = g;
  } else {
    doc["gamma"] = nullptr;
  }
  if (verify && r.gamma) {
    json checks = json::array();
    for (double kappa : {0.1, 1.0, 10.0}) {
      const FieldState fs = field_eval(mat, r.v, *r.gamma, kappa, 0.3, 0.0, 0.7);
      checks.push_back(json{{"kappa", kappa}, {"relative_residual", fs.traction.norm() / fs.traction_scale}});
    }
    doc["boundary_residual"] = checks;
  }
  return doc;
}

int cmd_solve(const MaterialCoefficients& mat, const WindowFlags& wf, const SearchOptions& opts, bool verify,
              const Common& c, std::ostream& out) {
  const ScanGrid grid = grid_scan(mat, wf.w, opts.threads);
  const auto roots = find_rayleigh_on_grid(mat, grid, opts);
  const bool any_converged = std::any_of(roots.begin(), roots.end(), [](const RayleighRoot& r) {
    return r.classification == RootClass::converged;
  });

  if (c.format == "text") {
    out << "grid median |det A| = " << format_double(grid.median_det()) << '\n';
    for (const auto& r : roots) {
      out << format_double(r.v.re()) << ' ' << format_double(r.v.value().imag()) << "i  F=" << format_double(r.f_value)
          << "  |det|=" << format_double(r.det_abs) << "  "
          << (r.classification == RootClass::converged ? "converged" : "stagnated") << '\n';
    }
  } else {
    json doc;
    doc["grid_median_det"] = grid.median_det();
    doc["grid_failures"] = grid.failures;
    json arr = json::array();
    for (const auto& r : roots) arr.push_back(root_json(mat, r, verify));
    doc["roots"] = arr;
    print_json(out, doc);
  }
  return any_converged ? kExitOk : kExitFailure;
}

// -- case -------------------------------------------------------------------

int cmd_case(const MaterialCoefficients& mat, int samples, std::ostream& out) {
  const auto coupling = classify_coupling(mat);
  const auto tag = coupling.tag;
  const auto set = roots_case(mat, tag);  // WrongCase for general / degenerate

  json doc;
  doc["case"] = std::string(coupling_tag_name(tag));
  doc["description"] = coupling.description;
  json roots = json::array();
  for (int i = 0; i < 5; ++i) roots.push_back(json{{"index", i + 1}, {"t", set.roots[i].t}, {"label", set.labels[i]}});
  doc["roots"] = roots;

  const auto speeds = sample_speeds(samples, 20170601);
  const ComplexSpeed probe = ComplexSpeed::from_complex(speeds.front());
  const auto modes = mode_vectors_case(mat, probe, tag);
  json kernels = json::array();
  for (const auto& mb : modes) {
    const Matrix5 d = assemble_Dp(mat, probe.value(), mb.p.p);
    kernels.push_back(json{{"index", mb.mode.index},
                           {"p", complex_json(mb.p.p)},
                           {"relative_residual", (d * mb.u_tilde).norm() / (d.norm() * mb.u_tilde.norm())}});
  }
  doc["kernel_check"] = json{{"v", complex_json(probe.value())}, {"modes", kernels}};

  if (tag == CouplingTag::case_iii) {
    json dets = json::array();
    for (int i = 0; i < std::min<int>(5, samples); ++i) {
      dets.push_back(json{{"v", complex_json(speeds[i])},
                          {"det", complex_json(secular_case_det(mat, ComplexSpeed::from_complex(speeds[i]), tag))}});
    }
    doc["secular"] = json{{"route", "determinant only"}, {"note", "no explicit expression is available for case_iii"},
                          {"samples", dets}};
  } else {
    const auto agreement = zero_set_agreement(mat, tag, speeds);
    std::ostringstream summary;
    summary << "agree at " << agreement.agree << "/" << agreement.samples << " samples";
    doc["cross_check"] = json{{"summary", summary.str()},
                              {"agree", agreement.agree},
                              {"samples", agreement.samples},
                              {"both_zero", agreement.both_zero},
                              {"explicit_scale", agreement.explicit_scale},
                              {"det_scale", agreement.det_scale}};
    if (agreement.agree != agreement.samples) {
      print_json(out, doc);
      return kExitFailure;
    }
  }
  print_json(out, doc);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rayleigh surface waves in thermoelastic solids with microtemperatures"};
  app.require_subcommand(1);

  Common common;
  WindowFlags window;
  SearchOptions opts;
  std::string out_path;
  bool verify = false;
  bool use_case = false;
  double zero_threshold = 0.0;
  int samples = 200;

  auto add_material = [&](CLI::App* cmd) {
    cmd->add_option("--material", common.material_path, "material JSON file")->required();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* check = app.add_subcommand("check", "strong ellipticity, coupling case and root distinctness");
  add_material(check);
  check->add_option("--zero-threshold", zero_threshold, "absolute threshold for vanishing couplings");

  auto* roots = app.add_subcommand("roots", "the five mode roots t_k");
  add_material(roots);
  add_format(roots);
  roots->add_flag("--case", use_case, "use the closed forms of the decoupled case");

  auto* scan = app.add_subcommand("scan", "sample F = ln|det A| on a lattice and write CSV");
  add_material(scan);
  add_window_flags(scan, window);
  scan->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* solve = app.add_subcommand("solve", "locate Rayleigh roots of the secular equation");
  add_material(solve);
  add_window_flags(solve, window);
  add_format(solve);
  solve->add_option("--tol-det", opts.tol_det, "convergence threshold relative to the grid median |det A|")
      ->check(CLI::PositiveNumber);
  solve->add_option("--dedup-tol", opts.dedup_tol, "distance below which roots are merged")->check(CLI::PositiveNumber);
  solve->add_flag("--verify", verify, "report the boundary traction residual for kappa in {0.1, 1, 10}");

  auto* cases = app.add_subcommand("case", "decoupled-case roots, kernels and secular cross-check");
  add_material(cases);
  cases->add_option("--samples", samples, "speeds used for the explicit/determinant cross-check")
      ->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  MaterialCoefficients mat;
  try {
    mat = load_material(common.material_path);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (check->parsed()) {
      if (zero_threshold != 0.0) {
        const auto coupling = classify_coupling(mat, zero_threshold);
        err << "coupling with threshold " << zero_threshold << ": " << coupling_tag_name(coupling.tag) << '\n';
      }
      return cmd_check(mat, out);
    }
    if (roots->parsed()) return cmd_roots(mat, common, use_case, out);
    if (scan->parsed()) {
      window.w.validate();
      return cmd_scan(mat, window, out_path, out, err);
    }
    if (solve->parsed()) {
      window.w.validate();
      return cmd_solve(mat, window, opts, verify, common, out);
    }
    if (cases->parsed()) return cmd_case(mat, samples, out);
  } catch (const SolverError& e) {
    const int code = e.code() == ErrorCode::InvalidWindow ? kExitInput : kExitFailure;
    return report_error(out, err, e, code);
  }
  return kExitInput;
}

}  // namespace rayleigh::cli
