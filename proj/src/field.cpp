#include "boxrevive/field.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "boxrevive/error.hpp"
#include "boxrevive/numeric.hpp"

namespace boxrevive {

Field2D::Field2D(Axis rows, Axis cols, std::string quantity, std::string unit)
    : rows_(std::move(rows)), cols_(std::move(cols)), quantity_(std::move(quantity)), unit_(std::move(unit)) {
  if (rows_.samples.empty() || cols_.samples.empty()) throw ContractError("Field2D: empty axis");
  values_.assign(rows_.samples.size() * cols_.samples.size(), 0.0);
}

std::span<const double> Field2D::row(std::size_t i) const {
  return std::span<const double>(values_).subspan(i * col_count(), col_count());
}

std::span<double> Field2D::row(std::size_t i) { return std::span<double>(values_).subspan(i * col_count(), col_count()); }

double Field2D::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double Field2D::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

void write_csv(std::ostream& out, const Field2D& field) {
  const auto& r = field.rows();
  const auto& c = field.cols();
  out << "# rows: " << r.name << " [" << r.unit << "] (" << r.samples.size() << " samples); columns: " << c.name
      << " [" << c.unit << "] (" << c.samples.size() << " samples)\n";
  out << "# values: " << field.quantity() << " [" << field.unit() << "]; first column is " << r.name
      << ", header row lists " << c.name << "\n";
  out << r.name << "\\" << c.name;
  for (double v : c.samples) out << ',' << format_number(v);
  out << '\n';
  for (std::size_t i = 0; i < field.row_count(); ++i) {
    out << format_number(r.samples[i]);
    for (double v : field.row(i)) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_pgm(std::ostream& out, const Field2D& field, PgmMapping mapping) {
  const auto values = field.values();
  std::vector<unsigned char> pixels(values.size());
  out << "P5\n";
  if (mapping == PgmMapping::density_gamma) {
    const double max = field.max_value();
    out << "# boxrevive " << field.quantity() << " mapping=density_gamma max=" << format_number(max)
        << " gamma=" << format_number(kDensityGamma) << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double u = max > 0.0 ? std::clamp(values[i] / max, 0.0, 1.0) : 0.0;
      pixels[i] = static_cast<unsigned char>(std::lround(255.0 * std::pow(u, kDensityGamma)));
    }
  } else {
    const double max_abs = std::max(std::fabs(field.min_value()), std::fabs(field.max_value()));
    out << "# boxrevive " << field.quantity() << " mapping=signed_symmetric max_abs=" << format_number(max_abs)
        << " offset=0.5 scale=0.5\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double u = max_abs > 0.0 ? std::clamp(0.5 + 0.5 * values[i] / max_abs, 0.0, 1.0) : 0.5;
      pixels[i] = static_cast<unsigned char>(std::lround(255.0 * u));
    }
  }
  out << field.col_count() << ' ' << field.row_count() << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace boxrevive
