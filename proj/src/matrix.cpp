#include "municlust/matrix.hpp"

#include <cmath>
#include <unordered_set>

namespace municlust {

FeatureMatrix::FeatureMatrix(std::vector<double> values, std::size_t rows, std::size_t cols,
                             std::vector<std::string> row_ids,
                             std::vector<std::string> column_names)
    : values_(std::move(values)),
      rows_(rows),
      cols_(cols),
      row_ids_(std::move(row_ids)),
      column_names_(std::move(column_names)) {
    if (rows_ < 2 || cols_ < 1)
        throw InvalidInput("FeatureMatrix requires at least 2 rows and 1 column");
    if (values_.size() != rows_ * cols_)
        throw InvalidInput("FeatureMatrix value count does not match shape");
    if (row_ids_.size() != rows_)
        throw InvalidInput("FeatureMatrix row_id count does not match row count");
    if (column_names_.size() != cols_)
        throw InvalidInput("FeatureMatrix column_name count does not match column count");
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidInput("FeatureMatrix contains non-finite entries");
    std::unordered_set<std::string> seen;
    for (const auto& id : row_ids_)
        if (!seen.insert(id).second) throw InvalidInput("duplicate row id: " + id);
    seen.clear();
    for (const auto& name : column_names_)
        if (!seen.insert(name).second) throw InvalidInput("duplicate column name: " + name);
}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                       std::vector<std::string> row_ids,
                                       std::vector<std::string> column_names) {
    if (rows.empty()) throw InvalidInput("FeatureMatrix requires at least 2 rows and 1 column");
    const std::size_t p = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * p);
    for (const auto& r : rows) {
        if (r.size() != p) throw InvalidInput("ragged rows in FeatureMatrix input");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    if (row_ids.empty())
        for (std::size_t i = 0; i < rows.size(); ++i) row_ids.push_back("row" + std::to_string(i));
    if (column_names.empty())
        for (std::size_t j = 0; j < p; ++j) column_names.push_back("col" + std::to_string(j));
    return FeatureMatrix(std::move(flat), rows.size(), p, std::move(row_ids),
                         std::move(column_names));
}

std::vector<double> FeatureMatrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

std::size_t FeatureMatrix::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < cols_; ++j)
        if (column_names_[j] == name) return j;
    throw InvalidInput("unknown column: " + name);
}

}  // namespace municlust
