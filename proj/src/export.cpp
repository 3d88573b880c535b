#include "sgate/export.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sgate/errors.hpp"

namespace sgate {

namespace {

nlohmann::ordered_json num(double v) { return json_number(v); }

}  // namespace

// nlohmann prints the shortest round-trip form; store numbers as 17-digit
// literals instead so JSON and CSV agree digit for digit.
nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nlohmann::ordered_json(fmt17(v));
  return nlohmann::ordered_json::parse(fmt17(v));
}

std::string fmt17(double v) {
  if (v == 0.0) return "0";
  return fmt::format("{:.17g}", v);
}

void write_map_csv(const SpectrumMap& map, std::ostream& out) {
  out << "re,im,status,theta,alpha,beta,t,translation_id,sigma_min\n";
  for (const auto& p : map.points) {
    out << fmt17(p.z.real()) << ',' << fmt17(p.z.imag()) << ',' << to_string(p.status) << ',';
    if (p.cert)
      out << fmt17(p.cert->theta) << ',' << fmt17(p.cert->alpha) << ',' << fmt17(p.cert->beta) << ','
          << fmt17(p.cert->t) << ',' << p.cert->translation_id << ',';
    else
      out << ",,,,,";
    if (p.status == PointStatus::OracleSpectrum) out << fmt17(p.sigma_min);
    out << '\n';
  }
}

nlohmann::ordered_json certificate_json(const CoercivityCertificate& c) {
  nlohmann::ordered_json j;
  j["theta"] = num(c.theta);
  j["alpha"] = num(c.alpha);
  j["beta"] = num(c.beta);
  j["t"] = num(c.t);
  j["translation_id"] = c.translation_id.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(c.translation_id);
  j["residual"] = num(c.residual);
  return j;
}

nlohmann::ordered_json map_json(const SpectrumMap& map) {
  nlohmann::ordered_json j;
  const auto& s = map.scan;
  j["scan"] = {{"param", s.param},          {"re_min", num(s.re_min)},     {"re_max", num(s.re_max)},
               {"im_min", num(s.im_min)},   {"im_max", num(s.im_max)},     {"re_points", s.re_points},
               {"im_points", s.im_points},  {"budget", s.budget}};
  nlohmann::ordered_json base = nlohmann::ordered_json::array();
  for (const cplx z : s.base_z) base.push_back({num(z.real()), num(z.imag())});
  j["scan"]["base_z"] = base;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : map.metadata) meta[k] = v;
  j["metadata"] = meta;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : map.points) {
    nlohmann::ordered_json e;
    e["z"] = {num(p.z.real()), num(p.z.imag())};
    e["status"] = to_string(p.status);
    if (p.cert) e["certificate"] = certificate_json(*p.cert);
    if (p.status == PointStatus::OracleSpectrum) e["sigma_min"] = num(p.sigma_min);
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  nlohmann::ordered_json oracle = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < map.oracle_points.size(); ++i)
    oracle.push_back({{"z", num(map.oracle_points[i])}, {"sigma_min", num(map.oracle_sigma[i])}});
  j["oracle_spectrum"] = std::move(oracle);
  j["soundness_violations"] = map.soundness_violations;
  return j;
}

void write_map_pgm(const SpectrumMap& map, std::ostream& out) {
  const int w = map.scan.re_points, h = map.scan.im_points;
  std::vector<unsigned char> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 128);
  auto pixel = [&](int i_re, int i_im) -> unsigned char& {
    return px[static_cast<std::size_t>(h - 1 - i_im) * static_cast<std::size_t>(w) + static_cast<std::size_t>(i_re)];
  };
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      const auto& p = map.points[static_cast<std::size_t>(j) * static_cast<std::size_t>(w) + static_cast<std::size_t>(i)];
      unsigned char v = 128;
      switch (p.status) {
        case PointStatus::Certified: v = 255; break;
        case PointStatus::Uncertified: v = 0; break;
        case PointStatus::Unscanned: v = 128; break;
        case PointStatus::OracleSpectrum: v = 64; break;
      }
      pixel(i, j) = v;
    }
  // Oracle points off the scan nodes go to the nearest pixel unless it is certified.
  const auto& s = map.scan;
  if (w > 1 && h > 1)
    for (double zo : map.oracle_points) {
      if (zo < s.re_min || zo > s.re_max || 0.0 < s.im_min || 0.0 > s.im_max) continue;
      const int i = static_cast<int>(std::lround((zo - s.re_min) / (s.re_max - s.re_min) * (w - 1)));
      const int j = static_cast<int>(std::lround((0.0 - s.im_min) / (s.im_max - s.im_min) * (h - 1)));
      if (pixel(i, j) != 255) pixel(i, j) = 64;
    }
  out << "P5\n" << w << ' ' << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

void write_band_csv(const BandReport& report, std::ostream& out) {
  out << "s,k1,k2,k3,omega_re,omega_im,certified,sigma_min,near_singular\n";
  for (const auto& e : report.entries)
    out << fmt17(e.s) << ',' << fmt17(e.k[0]) << ',' << fmt17(e.k[1]) << ',' << fmt17(e.k[2]) << ','
        << fmt17(e.omega.real()) << ',' << fmt17(e.omega.imag()) << ',' << (e.certified ? 1 : 0) << ','
        << fmt17(e.sigma_min) << ',' << (e.near_singular ? 1 : 0) << '\n';
}

void write_modes_csv(const BandReport& report, std::ostream& out) {
  out << "s,k1,k2,k3,omega,sigma_min\n";
  for (const auto& m : report.modes)
    out << fmt17(m.s) << ',' << fmt17(m.k[0]) << ',' << fmt17(m.k[1]) << ',' << fmt17(m.k[2]) << ','
        << fmt17(m.omega) << ',' << fmt17(m.sigma_min) << '\n';
}

nlohmann::ordered_json solve_report_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["shift"] = {num(r.shift.real()), num(r.shift.imag())};
  j["predicted_ratio"] = num(r.predicted_ratio);
  j["residual"] = num(r.residual);
  nlohmann::ordered_json inc = nlohmann::ordered_json::array();
  for (double v : r.increments) inc.push_back(num(v));
  j["increments"] = std::move(inc);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cli-io", "cannot write " + path.string());
  f << content;
  if (!f) throw Error(ErrorKind::Io, "cli-io", "write failed for " + path.string());
}

}  // namespace sgate
