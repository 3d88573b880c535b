#include "sgate/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "sgate/errors.hpp"
#include "sgate/projection.hpp"

namespace sgate {

static_assert(std::endian::native == std::endian::little, "SGF1 I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'G', 'F', '1'};
constexpr std::uint32_t kKindField = 1;
constexpr std::uint32_t kKindProjector = 2;

[[noreturn]] void io_error(const std::string& what) { throw Error(ErrorKind::Io, "field-core", what); }

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) io_error("truncated SGF1 file");
  return v;
}

struct Header {
  std::uint32_t kind = 0;
  Grid grid;
  TensorShape shape;
  std::string label;
  std::uint64_t count = 0;
};

void write_header(std::ostream& out, std::uint32_t kind, const Grid& grid, const TensorShape& shape,
                  const std::string& label, std::uint64_t count) {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kind);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.d()));
  for (int a = 0; a < grid.d(); ++a) put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.size(a)));
  for (int a = 0; a < grid.d(); ++a) put<double>(out, grid.cell()[static_cast<std::size_t>(a)]);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(shape.blocks().size()));
  for (const auto& b : shape.blocks()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(b.rows));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(b.cols));
  }
  put<std::uint32_t>(out, static_cast<std::uint32_t>(label.size()));
  out.write(label.data(), static_cast<std::streamsize>(label.size()));
  put<std::uint64_t>(out, count);
}

Header read_header(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) io_error("not an SGF1 file");
  Header h;
  h.kind = get<std::uint32_t>(in);
  const auto d = get<std::uint32_t>(in);
  if (d < 1 || d > 3) io_error("SGF1 grid dimension out of range");
  std::array<int, 3> sizes{1, 1, 1};
  Vec3 cell{1.0, 1.0, 1.0};
  for (std::uint32_t a = 0; a < d; ++a) sizes[a] = static_cast<int>(get<std::uint32_t>(in));
  for (std::uint32_t a = 0; a < d; ++a) cell[a] = get<double>(in);
  h.grid = Grid(static_cast<int>(d), sizes, cell);
  const auto nblocks = get<std::uint32_t>(in);
  if (nblocks == 0 || nblocks > 1024) io_error("SGF1 block count out of range");
  std::vector<TensorShape::Block> blocks;
  for (std::uint32_t b = 0; b < nblocks; ++b) {
    const auto r = get<std::uint32_t>(in);
    const auto c = get<std::uint32_t>(in);
    blocks.push_back({static_cast<int>(r), static_cast<int>(c)});
  }
  h.shape = TensorShape(std::move(blocks));
  const auto len = get<std::uint32_t>(in);
  if (len > (1u << 16)) io_error("SGF1 label too long");
  h.label.resize(len);
  in.read(h.label.data(), len);
  h.count = get<std::uint64_t>(in);
  return h;
}

void write_values(std::ostream& out, std::span<const cplx> values) {
  for (const auto& v : values) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
}

std::vector<cplx> read_values(std::istream& in, std::uint64_t count) {
  std::vector<cplx> values(count);
  for (auto& v : values) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = cplx(re, im);
  }
  return values;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open for reading: " + path.string());
  return in;
}

}  // namespace

void save_field(const Field& field, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_header(out, kKindField, field.grid(), field.shape(), "", field.values().size());
  write_values(out, field.values());
  if (!out) io_error("write failed: " + path.string());
}

Field load_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  const Header h = read_header(in);
  if (h.kind != kKindField) io_error("SGF1 file does not hold a field");
  if (h.count != h.grid.points() * h.shape.dim()) io_error("SGF1 value count does not match header");
  return Field(h.grid, h.shape, read_values(in, h.count));
}

void export_field_csv(const Field& field, std::ostream& out) {
  out << "x_index,component,re,im\n";
  out << std::setprecision(17);
  for (std::size_t x = 0; x < field.points(); ++x)
    for (std::size_t c = 0; c < field.dim(); ++c) {
      const cplx v = field(x, c);
      out << x << ',' << c << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

void save_projector(const ProjectionOperator& pi, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_header(out, kKindProjector, pi.grid(), pi.shape(), pi.symbol_name(), pi.raw().size());
  write_values(out, pi.raw());
  if (!out) io_error("write failed: " + path.string());
}

ProjectionOperator load_projector(const std::filesystem::path& path) {
  auto in = open_in(path);
  const Header h = read_header(in);
  if (h.kind != kKindProjector) io_error("SGF1 file does not hold a projector cache");
  const auto d = h.shape.dim();
  if (h.count != h.grid.points() * d * d) io_error("SGF1 projector size does not match header");
  const auto values = read_values(in, h.count);
  std::vector<Matrix> mats(h.grid.points());
  const auto di = static_cast<Eigen::Index>(d);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    mats[k].resize(di, di);
    for (Eigen::Index r = 0; r < di; ++r)
      for (Eigen::Index c = 0; c < di; ++c) mats[k](r, c) = values[k * d * d + static_cast<std::size_t>(r * di + c)];
  }
  return ProjectionOperator(h.grid, h.shape, h.label, std::move(mats));
}

}  // namespace sgate
