#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace municlust {

/// Thrown when inputs violate a documented precondition (bad shapes,
/// out-of-range values, malformed files).
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a quantity is mathematically undefined for the given data
/// (correlation of a constant vector, zero-variance column, ...).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense n x p table of entities by variables, row-major storage.
class FeatureMatrix {
public:
    FeatureMatrix(std::vector<double> values, std::size_t rows, std::size_t cols,
                  std::vector<std::string> row_ids, std::vector<std::string> column_names);

    /// Convenience constructor from nested rows; ids auto-generated when empty.
    static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                   std::vector<std::string> row_ids = {},
                                   std::vector<std::string> column_names = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    std::vector<double> column(std::size_t j) const;

    const std::vector<double>& values() const { return values_; }
    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& column_names() const { return column_names_; }

    std::size_t column_index(const std::string& name) const;

private:
    std::vector<double> values_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::string> row_ids_;
    std::vector<std::string> column_names_;
};

}  // namespace municlust
