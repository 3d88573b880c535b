#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sgate/field.hpp"

namespace sgate {

class ProjectionOperator;

// SGF1 container (all integers and floats little-endian):
//   "SGF1"  u32 kind (1 = field, 2 = projector cache)
//   u32 d, u32 sizes[d], f64 cell[d]
//   u32 nblocks, then (u32 rows, u32 cols) per block
//   u32 label length, label bytes (symbol name for projector caches)
//   u64 count, then count × (f64 re, f64 im)
// Field payload: points × dim values, point-major. Projector payload: per
// Fourier index the dim×dim projector, row-major.

void save_field(const Field& field, const std::filesystem::path& path);
Field load_field(const std::filesystem::path& path);
/// CSV debug export: x_index,component,re,im
void export_field_csv(const Field& field, std::ostream& out);

void save_projector(const ProjectionOperator& pi, const std::filesystem::path& path);
ProjectionOperator load_projector(const std::filesystem::path& path);

}  // namespace sgate
