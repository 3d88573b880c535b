#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "sgate/app.hpp"

namespace sgate {

namespace {

using json = nlohmann::json;

// 1-based line of the first quoted occurrence of `key`, 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

class Reader;

struct Doc {
  const std::string& text;
  [[noreturn]] void fail(const std::string& path, const std::string& key, const std::string& msg) const {
    throw SchemaError(path, key.empty() ? 0 : line_of_key(text, key), path + ": " + msg);
  }
};

// One JSON object; every key must be read before finish().
class Reader {
 public:
  Reader(const Doc& doc, const json& j, std::string path, std::string key = "")
      : doc_(doc), j_(j), path_(std::move(path)), key_(std::move(key)) {
    if (!j_.is_object()) doc_.fail(path_.empty() ? "/" : path_, key_, "expected an object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }

  const json* get(const std::string& k) {
    used_.insert(k);
    const auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& need(const std::string& k) {
    const json* v = get(k);
    if (!v) doc_.fail(sub(k), "", "required key is missing");
    return *v;
  }

  std::string sub(const std::string& k) const { return path_ + "/" + k; }

  [[noreturn]] void fail(const std::string& k, const std::string& msg) const { doc_.fail(sub(k), k, msg); }

  Reader object(const std::string& k) { return Reader(doc_, need(k), sub(k), k); }

  Reader nested(const json& v, const std::string& path, const std::string& k) const { return Reader(doc_, v, path, k); }

  double number(const std::string& k, double def) {
    const json* v = get(k);
    if (!v) return def;
    if (!v->is_number()) fail(k, "expected a number");
    return v->get<double>();
  }

  long long integer(const std::string& k, long long def, long long lo = 0) {
    const json* v = get(k);
    if (!v) return def;
    if (!v->is_number_integer()) fail(k, "expected an integer");
    const auto x = v->get<long long>();
    if (x < lo) fail(k, "must be at least " + std::to_string(lo));
    return x;
  }

  bool boolean(const std::string& k, bool def) {
    const json* v = get(k);
    if (!v) return def;
    if (!v->is_boolean()) fail(k, "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& k, const std::string& def, const std::vector<std::string>& allowed = {}) {
    const json* v = get(k);
    if (!v) return def;
    if (!v->is_string()) fail(k, "expected a string");
    auto s = v->get<std::string>();
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(k, "'" + s + "' is not one of " + list);
    }
    return s;
  }

  cplx complex_value(const json& v, const std::string& k) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    fail(k, "expected a number or a [re, im] pair");
  }

  cplx complex(const std::string& k, cplx def) {
    const json* v = get(k);
    return v ? complex_value(*v, k) : def;
  }

  std::vector<cplx> complex_list(const std::string& k) {
    const json* v = get(k);
    if (!v) return {};
    if (!v->is_array()) fail(k, "expected an array");
    std::vector<cplx> out;
    for (const auto& e : *v) out.push_back(complex_value(e, k));
    return out;
  }

  std::vector<double> number_list(const std::string& k) {
    const json* v = get(k);
    if (!v) return {};
    if (!v->is_array()) fail(k, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) fail(k, "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::string> string_list(const std::string& k) {
    const json* v = get(k);
    if (!v) return {};
    if (!v->is_array()) fail(k, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : *v) {
      if (!e.is_string()) fail(k, "expected an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  Moduli moduli(const json& v, const std::string& path, const std::string& k) const {
    Reader r(doc_, v, path, k);
    Moduli m;
    for (const auto& [name, value] : v.items()) {
      r.used_.insert(name);
      m[name] = r.complex_value(value, name);
    }
    return m;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) doc_.fail(sub(k), k, "unknown key");
  }

 private:
  const Doc& doc_;
  const json& j_;
  std::string path_;
  std::string key_;
  std::set<std::string> used_;
};

void read_layout(Reader r, LayoutSpec& l) {
  l.type = r.string("type", "uniform", {"uniform", "laminate", "checkerboard", "disk", "voxel_csv"});
  l.phases = static_cast<int>(r.integer("phases", 1, 1));
  l.axis = static_cast<int>(r.integer("axis", 0, 0));
  l.fraction = r.number("fraction", 0.5);
  l.cells = static_cast<int>(r.integer("cells", 2, 1));
  l.radius = r.number("radius", 0.25);
  l.path = r.string("path", "");
  if (l.type == "voxel_csv" && l.path.empty()) r.fail("path", "voxel_csv layouts need a path");
  r.finish();
}

void read_certifier(Reader r, ScenarioConfig& c) {
  c.certifier.theta_samples = static_cast<int>(r.integer("theta_samples", 720, 1));
  c.certifier.refine_theta = r.boolean("refine_theta", true);
  c.certifier.t_max_factor = r.number("t_max_factor", 10.0);
  if (const json* v = r.get("translations")) {
    if (!v->is_array()) r.fail("translations", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      TranslationSpec t;
      if (e.is_string()) {
        t.builtin = e.get<std::string>();
      } else {
        Reader tr = r.nested(e, r.sub("translations") + "/" + std::to_string(i), "translations");
        t.csv = tr.string("csv", "");
        t.id = tr.string("id", "");
        if (t.csv.empty()) r.fail("translations", "entries are built-in ids or {\"csv\": path}");
        tr.finish();
      }
      c.translations.push_back(t);
    }
  }
  r.finish();
}

void read_solver(Reader r, ScenarioConfig& c) {
  c.method = r.string("method", "neumann", {"neumann", "inverse", "splitting", "dense"});
  c.solver.tol = r.number("tol", 1e-12);
  c.solver.max_iter = static_cast<int>(r.integer("max_iter", 20000, 1));
  c.solver.oracle_cap = static_cast<std::size_t>(r.integer("oracle_cap", 4096, 1));
  c.compare_oracle = r.boolean("compare_oracle", false);
  c.source = r.string("source", "random", {"random", "constant"});
  const auto f = r.complex_list("factors");
  if (!f.empty()) {
    if (f.size() != 4) r.fail("factors", "expected four values (c_e, c_j, d_e, d_j)");
    c.factors = {f[0], f[1], f[2], f[3]};
  }
  r.finish();
}

void read_scan(Reader r, ScenarioConfig& c) {
  auto& s = c.scan;
  s.param = static_cast<std::size_t>(r.integer("param", 1, 0));
  // Empty means all ones, sized to the pencil at run time.
  s.base_z = r.complex_list("base_z");
  s.re_min = r.number("re_min", -5.0);
  s.re_max = r.number("re_max", 5.0);
  s.im_min = r.number("im_min", -5.0);
  s.im_max = r.number("im_max", 5.0);
  s.re_points = static_cast<int>(r.integer("re_points", 101, 1));
  s.im_points = static_cast<int>(r.integer("im_points", 101, 1));
  s.budget = static_cast<std::size_t>(r.integer("budget", 1000000, 0));
  c.scan_oracle = r.boolean("oracle", false);
  r.finish();
}

void read_bloch(Reader r, ScenarioConfig& c) {
  auto& b = c.bloch;
  const json& path = r.need("k_path");
  if (!path.is_array() || path.size() < 2) r.fail("k_path", "expected at least two wavevectors");
  for (const auto& v : path) {
    if (!v.is_array() || v.empty() || v.size() > 3) r.fail("k_path", "wavevectors are arrays of 1 to 3 numbers");
    Vec3 k{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) r.fail("k_path", "wavevectors are arrays of numbers");
      k[i] = v[i].get<double>();
    }
    b.k_path.push_back(k);
  }
  b.points_per_segment = static_cast<int>(r.integer("points_per_segment", 8, 1));
  b.singular_threshold = r.number("singular_threshold", 1e-8);
  b.refine_modes = r.boolean("refine_modes", true);
  b.oracle_cap = static_cast<std::size_t>(r.integer("oracle_cap", 4096, 1));
  Reader w = r.object("omega");
  const double lo = w.number("re_min", 0.1);
  const double hi = w.number("re_max", 10.0);
  const auto n = w.integer("points", 100, 0);
  const double im = w.number("im", 0.0);
  w.finish();
  for (long long i = 0; i < n; ++i)
    b.omegas.emplace_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1), im);
  r.finish();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"identity-check", "solve",     "certify",
                                              "spectrum-map",   "bloch-scan", "properties"};
  return names;
}

ScenarioConfig parse_config(const std::string& text, const std::string& command) {
  if (std::find(subcommands().begin(), subcommands().end(), command) == subcommands().end())
    throw SchemaError("", 0, "unknown subcommand '" + command + "'");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw SchemaError("", line, std::string("invalid JSON: ") + e.what());
  }
  const Doc doc{text};
  Reader r(doc, j, "");
  ScenarioConfig c;

  const json& version = r.need("schema_version");
  if (!version.is_number_integer() || version.get<long long>() != kSchemaVersion)
    r.fail("schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");

  const bool needs_preset = command != "identity-check";
  if (needs_preset) {
    if (!r.has("preset")) doc.fail("/preset", "", "required key is missing");
  }
  c.preset = r.string("preset", "");
  if (!c.preset.empty() && std::find(preset_names().begin(), preset_names().end(), c.preset) == preset_names().end())
    r.fail("preset", "unknown preset '" + c.preset + "'");
  c.dimension = static_cast<int>(r.integer("dimension", 0, 1));
  if (const json* p = r.get("parameters")) c.parameters = r.moduli(*p, "/parameters", "parameters");

  {
    Reader g = r.object("grid");
    c.grid_n = static_cast<int>(g.integer("n", 0, 1));
    if (const json* s = g.get("sizes")) {
      if (!s->is_array() || s->empty() || s->size() > 3) g.fail("sizes", "expected 1 to 3 positive integers");
      for (const auto& e : *s) {
        if (!e.is_number_integer() || e.get<long long>() < 1) g.fail("sizes", "expected 1 to 3 positive integers");
        c.grid_sizes.push_back(e.get<int>());
      }
    }
    c.cell = g.number_list("cell");
    if ((c.grid_n > 0) == !c.grid_sizes.empty()) g.fail("n", "give exactly one of n and sizes");
    if (command == "identity-check" && c.grid_n == 0) g.fail("n", "identity-check needs n");
    g.finish();
  }

  if (r.has("layout")) read_layout(r.object("layout"), c.layout);
  if (const json* ph = r.get("phases")) {
    if (!ph->is_array()) r.fail("phases", "expected an array of moduli objects");
    for (std::size_t i = 0; i < ph->size(); ++i)
      c.phases.push_back(r.moduli((*ph)[i], "/phases/" + std::to_string(i), "phases"));
  }
  c.z = r.complex_list("z");

  if (r.has("certifier")) read_certifier(r.object("certifier"), c);
  if (r.has("solver")) read_solver(r.object("solver"), c);
  if (r.has("scan") || command == "spectrum-map") read_scan(r.object("scan"), c);
  if (r.has("bloch") || command == "bloch-scan") read_bloch(r.object("bloch"), c);
  if (r.has("properties")) {
    Reader p = r.object("properties");
    c.property_checks = p.string_list("checks");
    for (const auto& name : c.property_checks) {
      try {
        parse_property(name);
      } catch (const Error&) {
        p.fail("checks", "unknown property '" + name + "'");
      }
    }
    c.property_samples = static_cast<int>(p.integer("samples", 20, 1));
    p.finish();
  }
  if (command == "properties" && c.property_checks.empty())
    for (auto prop : {AnalyticProperty::HerglotzIm, AnalyticProperty::HerglotzRe, AnalyticProperty::Homogeneity,
                      AnalyticProperty::Normalization})
      c.property_checks.emplace_back(to_string(prop));
  if (r.has("identity")) {
    Reader p = r.object("identity");
    c.identity_presets = p.string_list("presets");
    for (const auto& name : c.identity_presets)
      if (std::find(preset_names().begin(), preset_names().end(), name) == preset_names().end())
        p.fail("presets", "unknown preset '" + name + "'");
    c.identity_trials = static_cast<int>(p.integer("trials", 20, 1));
    p.finish();
  }
  c.seed = static_cast<std::uint64_t>(r.integer("seed", 0, 0));
  c.out = r.string("out", ".");
  r.finish();

  if (command == "bloch-scan" && c.preset != "acoustics") r.fail("preset", "bloch-scan needs the acoustics preset");
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("", 0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), command);
}

}  // namespace sgate
