#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace boxrevive {

struct Axis {
  std::string name;
  std::string unit;
  std::vector<double> samples;
};

/// Real function sampled on a rectangular grid, row-major over (rows, cols).
class Field2D {
 public:
  Field2D(Axis rows, Axis cols, std::string quantity, std::string unit);

  const Axis& rows() const noexcept { return rows_; }
  const Axis& cols() const noexcept { return cols_; }
  const std::string& quantity() const noexcept { return quantity_; }
  const std::string& unit() const noexcept { return unit_; }

  std::size_t row_count() const noexcept { return rows_.samples.size(); }
  std::size_t col_count() const noexcept { return cols_.samples.size(); }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * col_count() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * col_count() + j]; }

  std::span<const double> row(std::size_t i) const;
  std::span<double> row(std::size_t i);
  std::span<const double> values() const noexcept { return values_; }

  double min_value() const;
  double max_value() const;

 private:
  Axis rows_;
  Axis cols_;
  std::string quantity_;
  std::string unit_;
  std::vector<double> values_;
};

/// Two comment lines (axis descriptions and units), then a header row with the
/// column coordinates, then one line per row led by its row coordinate.
void write_csv(std::ostream& out, const Field2D& field);

enum class PgmMapping {
  // v / max, then gamma 0.5, for nonnegative densities.
  density_gamma,
  // 0.5 + 0.5 v / max|v|, for signed quasiprobabilities.
  signed_symmetric,
};

inline constexpr double kDensityGamma = 0.5;

/// Binary 8-bit grayscale (P5): col_count() columns, row_count() rows, row 0
/// first. A comment line records the mapping constants.
void write_pgm(std::ostream& out, const Field2D& field, PgmMapping mapping);

}  // namespace boxrevive
