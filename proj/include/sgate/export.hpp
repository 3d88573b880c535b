#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sgate/greens.hpp"
#include "sgate/spectrum.hpp"

namespace sgate {

// Every writer prints floating point values with 17 significant digits, so
// identical inputs give identical bytes.

/// Columns re,im,status,theta,alpha,beta,t,translation_id,sigma_min; rows in
/// map order. Certificate columns are empty for points without one.
void write_map_csv(const SpectrumMap& map, std::ostream& out);
nlohmann::ordered_json map_json(const SpectrumMap& map);
/// Binary PGM (P5), one pixel per scan point, top row at the largest Im z.
/// 0 uncertified, 128 unscanned, 255 certified, 64 oracle spectrum.
void write_map_pgm(const SpectrumMap& map, std::ostream& out);

/// Columns s,k1,k2,k3,omega_re,omega_im,certified,sigma_min,near_singular.
void write_band_csv(const BandReport& report, std::ostream& out);
/// Columns s,k1,k2,k3,omega,sigma_min.
void write_modes_csv(const BandReport& report, std::ostream& out);

nlohmann::ordered_json certificate_json(const CoercivityCertificate& cert);
nlohmann::ordered_json solve_report_json(const SolveReport& report);

/// Formats v with 17 significant digits.
std::string fmt17(double v);

/// JSON number that prints as fmt17(v); non-finite values become strings.
nlohmann::ordered_json json_number(double v);

/// Writes `content` to path, creating parent directories. Throws Error(Io).
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace sgate
