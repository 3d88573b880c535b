#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sgate/app.hpp"
#include "sgate/export.hpp"
#include "sgate/field_io.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

namespace {

using ojson = nlohmann::ordered_json;

struct Setup {
  PhysicsPreset preset;
  Grid grid;
  PhaseLayout layout;
  std::vector<Moduli> moduli;
  OperatorPencil pencil;
  std::vector<cplx> z;
};

Grid make_grid(const ScenarioConfig& c, int d) {
  Vec3 cell{1.0, 1.0, 1.0};
  if (!c.cell.empty()) {
    if (static_cast<int>(c.cell.size()) != d)
      throw SchemaError("/grid/cell", 0, fmt::format("/grid/cell: expected {} lengths", d));
    std::copy(c.cell.begin(), c.cell.end(), cell.begin());
  }
  std::array<int, 3> sizes{1, 1, 1};
  if (c.grid_n > 0) {
    std::fill_n(sizes.begin(), d, c.grid_n);
  } else {
    if (static_cast<int>(c.grid_sizes.size()) != d)
      throw SchemaError("/grid/sizes", 0, fmt::format("/grid/sizes: expected {} sizes for this preset", d));
    std::copy(c.grid_sizes.begin(), c.grid_sizes.end(), sizes.begin());
  }
  return Grid(d, sizes, cell);
}

PhaseLayout make_layout(const LayoutSpec& l, const Grid& g) {
  if (l.type == "laminate") return PhaseLayout::laminate(g, l.axis, l.fraction);
  if (l.type == "checkerboard") return PhaseLayout::checkerboard(g, l.cells);
  if (l.type == "disk") return PhaseLayout::disk(g, l.radius);
  if (l.type == "voxel_csv") return PhaseLayout::voxel_csv(g, std::filesystem::path(l.path));
  return PhaseLayout::uniform(g, l.phases, 0);
}

Setup make_setup(const ScenarioConfig& c) {
  const int d = c.dimension > 0 ? c.dimension : default_dimension(c.preset);
  auto preset = build_preset(c.preset, d, c.parameters);
  const Grid grid = make_grid(c, d);
  auto layout = make_layout(c.layout, grid);
  std::vector<Moduli> moduli = c.phases;
  if (moduli.empty()) moduli.resize(static_cast<std::size_t>(layout.phases()));
  if (static_cast<int>(moduli.size()) != layout.phases())
    throw SchemaError("/phases", 0,
                      fmt::format("/phases: the layout has {} phases but {} moduli sets were given", layout.phases(),
                                  moduli.size()));
  std::vector<Matrix> mats;
  for (const auto& m : moduli) mats.push_back(preset.phase_matrix(m));
  auto pencil = multiphase_pencil(layout, preset.shape, mats);
  std::vector<cplx> z = c.z;
  if (z.empty()) z.assign(mats.size(), 1.0);
  if (z.size() != pencil.size())
    throw SchemaError("/z", 0, fmt::format("/z: expected {} parameters, one per phase", pencil.size()));
  return {std::move(preset), grid, std::move(layout), std::move(moduli), std::move(pencil), std::move(z)};
}

std::vector<Translation> make_library(const ScenarioConfig& c, const PhysicsPreset& preset) {
  std::vector<Translation> lib;
  const auto dim = preset.shape.dim();
  for (const auto& spec : c.translations) {
    Translation t = [&] {
      if (!spec.builtin.empty()) return builtin_translation(spec.builtin, dim);
      std::ifstream in(spec.csv);
      if (!in) throw Error(ErrorKind::Io, "cli-io", "cannot read translation file " + spec.csv);
      return load_translation_csv(in, spec.id.empty() ? std::filesystem::path(spec.csv).stem().string() : spec.id,
                                  dim);
    }();
    const double worst = qstar_min_eig(t, preset.symbol);
    spdlog::debug("translation {}: Q* worst {} over {} samples", t.id(), worst, t.status().samples);
    if (!t.status().pass)
      throw Error(ErrorKind::Translation, "translation-certifier",
                  fmt::format("translation '{}' fails the Q* check for '{}' (worst {})", t.id(),
                              preset.symbol.name, fmt17(worst)));
    lib.push_back(std::move(t));
  }
  return lib;
}

ojson complex_json(cplx v) { return ojson::array({json_number(v.real()), json_number(v.imag())}); }

ojson complex_list_json(const std::vector<cplx>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(complex_json(x));
  return a;
}

class Outputs {
 public:
  Outputs(std::filesystem::path dir, RunResult& result) : dir_(std::move(dir)), result_(result) {}

  void text(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    write_text(p, content);
    result_.artifacts.push_back(p);
    spdlog::info("wrote {}", p.string());
  }

  void json(const std::string& name, const ojson& j) { text(name, j.dump(2) + "\n"); }

  template <class Fn>
  void stream(const std::string& name, Fn&& fn) {
    std::ostringstream os;
    fn(os);
    text(name, os.str());
  }

  void field(const std::string& name, const Field& f) {
    const auto p = dir_ / name;
    save_field(f, p);
    result_.artifacts.push_back(p);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  RunResult& result_;
};

void violation(RunResult& r, const std::string& what) {
  r.exit_code = 1;
  r.summary["violations"].push_back(what);
  spdlog::error("{}", what);
}

void run_identity(const ScenarioConfig& c, std::uint64_t seed, Outputs& out, RunResult& r) {
  std::vector<std::string> names = c.identity_presets;
  if (names.empty()) names = c.preset.empty() ? preset_names() : std::vector<std::string>{c.preset};
  constexpr double tol = 1e-12;
  std::ostringstream csv;
  csv << "preset,d,n,max_ratio,idempotence,hermiticity,pass\n";
  ojson rows = ojson::array();
  for (const auto& name : names) {
    const int d = (c.dimension > 0 && name == c.preset) ? c.dimension : default_dimension(name);
    const auto preset = build_preset(name, d, name == c.preset ? c.parameters : Moduli{});
    const Grid g = Grid::square(d, c.grid_n);
    const double ratio = check_key_identity(preset, g, c.identity_trials, seed);
    const auto defects = projector_defects(build_projection(preset.symbol, g));
    const bool pass = ratio <= tol && defects.idempotence <= tol && defects.hermiticity <= tol;
    csv << name << ',' << d << ',' << c.grid_n << ',' << fmt17(ratio) << ',' << fmt17(defects.idempotence) << ','
        << fmt17(defects.hermiticity) << ',' << (pass ? "true" : "false") << '\n';
    rows.push_back({{"preset", name},
                    {"d", d},
                    {"max_ratio", json_number(ratio)},
                    {"idempotence", json_number(defects.idempotence)},
                    {"hermiticity", json_number(defects.hermiticity)},
                    {"pass", pass}});
    spdlog::info("{}: max |(J,E)|/(|J||E|) = {}", name, fmt17(ratio));
    if (!pass) violation(r, fmt::format("preset '{}' exceeds the identity tolerance {}", name, tol));
  }
  out.text("identity.csv", csv.str());
  r.summary["table"] = rows;
}

void run_certify(const ScenarioConfig& c, Outputs& out, RunResult& r) {
  const auto s = make_setup(c);
  const auto lib = make_library(c, s.preset);
  const auto l = evaluate_pencil(s.pencil, s.z);
  const auto cert = certify_coercivity(l, lib, s.preset.symbol.name, c.certifier);
  ojson j;
  j["preset"] = s.preset.name;
  j["z"] = complex_list_json(s.z);
  j["certified"] = cert.has_value();
  j["certificate"] = cert ? certificate_json(*cert) : ojson(nullptr);
  out.json("certificate.json", j);
  r.summary["certified"] = cert.has_value();
  if (cert) r.summary["alpha_over_beta"] = json_number(cert->alpha / cert->beta);
}

void run_solve(const ScenarioConfig& c, std::uint64_t seed, Outputs& out, RunResult& r) {
  const auto s = make_setup(c);
  const auto lib = make_library(c, s.preset);
  const auto pi = build_projection(s.preset.symbol, s.grid);
  const auto l = evaluate_pencil(s.pencil, s.z);
  const auto& shape = s.preset.shape;
  const Field h = c.source == "random"
                      ? random_field(s.grid, shape, seed)
                      : Field(s.grid, shape, std::vector<cplx>(s.grid.points() * shape.dim(), cplx(1.0, 0.0)));
  ojson j;
  j["preset"] = s.preset.name;
  j["method"] = c.method;
  j["z"] = complex_list_json(s.z);
  Field e;
  if (c.method == "neumann") {
    const auto cert = certify_coercivity(l, lib, s.preset.symbol.name, c.certifier);
    if (!cert)
      throw Error(ErrorKind::Certificate, "translation-certifier",
                  "no coercivity certificate at this parameter point; the series cannot be run");
    const auto rep = neumann_solve(l, pi, h, *cert, c.solver.tol, c.solver.max_iter);
    j["certificate"] = certificate_json(*cert);
    j["report"] = solve_report_json(rep);
    e = rep.solution;
    if (!rep.converged) violation(r, fmt::format("series did not converge in {} iterations", rep.iterations));
  } else if (c.method == "inverse") {
    e = inverse_form_solve(l, pi, h, c.solver, c.certifier);
  } else if (c.method == "splitting") {
    // L_A is the anti-Hermitian part of L, L_B the Hermitian part.
    const auto l_a = l.map([](const Matrix& m) -> Matrix { return 0.5 * (m - m.adjoint()); });
    const auto l_b = l.map([](const Matrix& m) -> Matrix { return hermitian_part(m); });
    e = splitting_solve(l_a, l_b, pi, h, c.factors, c.solver, c.certifier);
  } else {
    e = dense_oracle_solve(l, pi, h, c.solver.oracle_cap);
  }
  const Field res = pi.apply(l.apply(e)) - pi.apply(h);
  j["residual"] = json_number(norm(res) / norm(h));
  if (c.compare_oracle && c.method != "dense") {
    const Field ref = dense_oracle_solve(l, pi, h, c.solver.oracle_cap);
    const double rel = norm(e - ref) / norm(ref);
    j["oracle_relative_difference"] = json_number(rel);
    r.summary["oracle_relative_difference"] = json_number(rel);
    if (rel > 1e-8) violation(r, fmt::format("solution differs from the dense oracle by {}", fmt17(rel)));
  }
  r.summary["residual"] = j["residual"];
  out.json("solve.json", j);
  out.field("solution.sgf", e);
  out.stream("solution.csv", [&](std::ostream& os) { export_field_csv(e, os); });
}

void run_spectrum(const ScenarioConfig& c, int workers, Outputs& out, RunResult& r) {
  const auto s = make_setup(c);
  const auto lib = make_library(c, s.preset);
  ScanConfig scan = c.scan;
  scan.workers = workers;
  if (scan.base_z.empty()) scan.base_z.assign(s.pencil.size(), 1.0);
  auto map = map_spectrum_region(s.pencil, scan, lib, s.preset.symbol.name, c.certifier);
  if (c.scan_oracle) {
    const auto pi = build_projection(s.preset.symbol, s.grid);
    const auto oracle = eigen_oracle_spectrum(s.pencil, pi, c.solver.oracle_cap);
    attach_oracle(map, oracle);
    r.summary["oracle_points"] = oracle.points.size();
  }
  std::map<std::string, int> counts;
  for (const auto& p : map.points) ++counts[to_string(p.status)];
  for (const auto& [k, v] : counts) r.summary["counts"][k] = v;
  r.summary["soundness_violations"] = map.soundness_violations;
  out.stream("map.csv", [&](std::ostream& os) { write_map_csv(map, os); });
  out.json("map.json", map_json(map));
  out.stream("map.pgm", [&](std::ostream& os) { write_map_pgm(map, os); });
  if (map.soundness_violations > 0)
    violation(r, fmt::format("{} certified points lie on the oracle spectrum", map.soundness_violations));
}

void run_bloch(const ScenarioConfig& c, int workers, Outputs& out, RunResult& r) {
  const auto s = make_setup(c);
  BlochScanConfig cfg = c.bloch;
  cfg.workers = workers;
  const auto rep = bloch_scan(s.preset, s.layout, s.moduli, cfg, c.certifier);
  const auto certified =
      std::count_if(rep.entries.begin(), rep.entries.end(), [](const BandEntry& e) { return e.certified; });
  r.summary["entries"] = rep.entries.size();
  r.summary["certified"] = certified;
  r.summary["modes"] = rep.modes.size();
  out.stream("bands.csv", [&](std::ostream& os) { write_band_csv(rep, os); });
  out.stream("modes.csv", [&](std::ostream& os) { write_modes_csv(rep, os); });
}

void run_properties(const ScenarioConfig& c, std::uint64_t seed, Outputs& out, RunResult& r) {
  const auto s = make_setup(c);
  const auto pi = build_projection(s.preset.symbol, s.grid);
  ojson rows = ojson::array();
  for (const auto& name : c.property_checks) {
    const auto rep = analytic_property_check(s.pencil, pi, parse_property(name), c.property_samples, seed);
    rows.push_back({{"property", name},
                    {"samples", rep.samples},
                    {"worst", json_number(rep.worst)},
                    {"threshold", json_number(rep.threshold)},
                    {"pass", rep.pass}});
    if (!rep.pass) violation(r, fmt::format("property {} fails (worst {})", name, fmt17(rep.worst)));
  }
  out.json("properties.json", rows);
  r.summary["properties"] = rows;
}

}  // namespace

RunResult run_command(const std::string& command, const ScenarioConfig& c, const RunOptions& options) {
  RunResult r;
  const std::uint64_t seed = options.seed.value_or(c.seed);
  Outputs out(options.out.value_or(std::filesystem::path(c.out)), r);
  r.summary["command"] = command;
  r.summary["seed"] = seed;
  spdlog::info("{}: output directory {}", command, out.dir().string());
  if (command == "identity-check") run_identity(c, seed, out, r);
  else if (command == "certify") run_certify(c, out, r);
  else if (command == "solve") run_solve(c, seed, out, r);
  else if (command == "spectrum-map") run_spectrum(c, options.workers, out, r);
  else if (command == "bloch-scan") run_bloch(c, options.workers, out, r);
  else if (command == "properties") run_properties(c, seed, out, r);
  else throw SchemaError("", 0, "unknown subcommand '" + command + "'");
  ojson files = ojson::array();
  for (const auto& p : r.artifacts) files.push_back(p.filename().string());
  r.summary["artifacts"] = files;
  r.summary["exit_code"] = r.exit_code;
  return r;
}

ojson error_record(const std::exception& e) {
  ojson j;
  if (const auto* s = dynamic_cast<const SchemaError*>(&e)) {
    j["error"] = "schema";
    j["module"] = s->module();
    j["field"] = s->field();
    j["line"] = s->line();
  } else if (const auto* x = dynamic_cast<const Error*>(&e)) {
    j["error"] = to_string(x->kind());
    j["module"] = x->module();
  } else {
    j["error"] = "internal";
    j["module"] = "cli-io";
  }
  j["message"] = e.what();
  return j;
}

void configure_logging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SPECTRAL_GATE_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

int run_config(const std::string& command, const std::filesystem::path& config_path, const RunOptions& options,
               std::ostream& out, std::ostream& err) {
  configure_logging();
  try {
    const auto cfg = load_config(config_path, command);
    if (options.workers > 0) set_default_workers(options.workers);
    const auto r = run_command(command, cfg, options);
    out << r.summary.dump(2) << '\n';
    if (r.exit_code != 0) {
      ojson rec{{"error", "contract_violation"}, {"module", "cli-io"}, {"message", r.summary["violations"]}};
      err << rec.dump() << '\n';
    }
    return r.exit_code;
  } catch (const SchemaError& e) {
    err << error_record(e).dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << error_record(e).dump() << '\n';
    return 1;
  }
}

}  // namespace sgate
