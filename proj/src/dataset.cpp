#include "municlust/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace municlust {

namespace {

void check_range(const std::string& name, const std::string& field, double v, double lo,
                 double hi) {
    if (v < lo || v > hi) {
        std::ostringstream msg;
        msg << "out-of-range value for " << field << " in row " << name << ": " << v
            << " violates [" << lo << "," << hi << "]";
        throw InvalidInput(msg.str());
    }
}

}  // namespace

void MunicipalityRecord::validate() const {
    if (name.empty()) throw InvalidInput("municipality name must be non-empty");
    if (mhr < 0) throw InvalidInput("out-of-range value for MHR in row " + name +
                                    ": counts must be non-negative");
    if (!(population > 0))
        throw InvalidInput("out-of-range value for POPULATION in row " + name +
                           ": population must be > 0");
    if (demog_density < 0)
        throw InvalidInput("out-of-range value for DEMOGDENSITY in row " + name +
                           ": density must be non-negative");
    static const char* ideb_names[] = {"IDEB2005", "IDEB2007", "IDEB2009", "IDEB2011",
                                       "IDEB2013"};
    for (std::size_t i = 0; i < ideb.size(); ++i)
        check_range(name, ideb_names[i], ideb[i], 0.0, 10.0);
    if (!(life_expect > 0))
        throw InvalidInput("out-of-range value for LIFEEXPECT in row " + name +
                           ": must be > 0");
    check_range(name, "GINI", gini, 0.0, 1.0);
    check_range(name, "INRICHEST10", in_richest10, 0.0, 100.0);
    check_range(name, "EDUCLEVEL", educ_level, 0.0, 100.0);
    check_range(name, "MHDI", mhdi, 0.0, 1.0);
    check_range(name, "MHDIE", mhdi_e, 0.0, 1.0);
    check_range(name, "MHDIL", mhdi_l, 0.0, 1.0);
    check_range(name, "MHDII", mhdi_i, 0.0, 1.0);
}

const std::vector<std::string>& schema_columns() {
    static const std::vector<std::string> cols = {
        "MHR",      "POPULATION", "DEMOGDENSITY", "IDEB2005", "IDEB2007", "IDEB2009",
        "IDEB2011", "IDEB2013",   "LIFEEXPECT",   "GINI",     "INRICHEST10",
        "EDUCLEVEL", "MHDI",      "MHDIE",        "MHDIL",    "MHDII"};
    return cols;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw InvalidInput("non-numeric cell at row " + std::to_string(row) + ", column " +
                           column + ": '" + cell + "'");
    return value;
}

MunicipalityRecord record_from_row(const std::string& name, std::span<const double> row) {
    MunicipalityRecord r;
    r.name = name;
    r.mhr = row[0];
    r.population = row[1];
    r.demog_density = row[2];
    for (std::size_t i = 0; i < 5; ++i) r.ideb[i] = row[3 + i];
    r.life_expect = row[8];
    r.gini = row[9];
    r.in_richest10 = row[10];
    r.educ_level = row[11];
    r.mhdi = row[12];
    r.mhdi_e = row[13];
    r.mhdi_l = row[14];
    r.mhdi_i = row[15];
    return r;
}

}  // namespace

Dataset ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("empty file: " + path.string());

    const auto header = split_csv_line(line);
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < header.size(); ++i) position[header[i]] = i;
    if (!position.count("NAME")) throw InvalidInput("missing column: NAME");
    for (const auto& col : schema_columns())
        if (!position.count(col)) throw InvalidInput("missing column: " + col);

    const auto& cols = schema_columns();
    std::vector<double> values;
    std::vector<std::string> names;
    std::vector<MunicipalityRecord> records;
    std::unordered_set<std::string> seen;
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw InvalidInput("row " + std::to_string(row_number) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
        const std::string& name = fields[position["NAME"]];
        if (!seen.insert(name).second)
            throw InvalidInput("duplicate municipality name: " + name);
        std::vector<double> row(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            row[j] = parse_cell(fields[position[cols[j]]], row_number, cols[j]);
        MunicipalityRecord record = record_from_row(name, row);
        record.validate();
        names.push_back(name);
        values.insert(values.end(), row.begin(), row.end());
        records.push_back(std::move(record));
    }
    if (names.size() < 2) throw InvalidInput("need at least 2 data rows");
    const std::size_t n = names.size();
    FeatureMatrix X(std::move(values), n, cols.size(), std::move(names), cols);
    return {std::move(X), std::move(records)};
}

namespace {

std::string render_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

std::string to_csv(const FeatureMatrix& X, const std::string& id_header) {
    std::ostringstream out;
    out << id_header;
    for (const auto& col : X.column_names()) out << ',' << col;
    out << '\n';
    for (std::size_t i = 0; i < X.rows(); ++i) {
        out << X.row_ids()[i];
        for (std::size_t j = 0; j < X.cols(); ++j) out << ',' << render_double(X(i, j));
        out << '\n';
    }
    return out.str();
}

void write_csv(const FeatureMatrix& X, const std::filesystem::path& path,
               const std::string& id_header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path.string());
    out << to_csv(X, id_header);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

SynthesisResult synthesize(std::uint64_t seed, std::size_t n, int planted_k, double separation,
                           double noise_fraction, std::size_t dims, double blob_sd) {
    if (planted_k < 1 || static_cast<std::size_t>(planted_k) > n)
        throw InvalidInput("synthesize: planted_k must be in [1, n]");
    if (!(separation > 0)) throw InvalidInput("synthesize: separation must be > 0");
    if (noise_fraction < 0.0 || noise_fraction >= 1.0)
        throw InvalidInput("synthesize: noise_fraction must be in [0, 1)");
    if (dims < 1) throw InvalidInput("synthesize: dims must be >= 1");

    const std::size_t k = static_cast<std::size_t>(planted_k);
    // Axis-aligned centers, pairwise at least `separation` apart.
    std::vector<std::vector<double>> centers(k, std::vector<double>(dims, 0.0));
    for (std::size_t c = 1; c < k; ++c) {
        const std::size_t axis = (c - 1) % dims;
        const double scale = 1.0 + static_cast<double>((c - 1) / dims);
        centers[c][axis] = separation * scale;
    }

    const std::size_t n_noise =
        static_cast<std::size_t>(std::floor(noise_fraction * static_cast<double>(n)));
    const std::size_t n_blob = n - n_noise;
    if (n_blob < k) throw InvalidInput("synthesize: not enough non-noise points for planted_k");

    double lo = 0.0, hi = 0.0;
    for (const auto& c : centers)
        for (double v : c) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    lo -= separation;
    hi += separation;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, blob_sd);
    std::uniform_real_distribution<double> uniform(lo, hi);

    SynthesisResult out{FeatureMatrix::from_rows({{0.0}, {0.0}}), {}};
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    std::vector<int> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n_blob; ++i) {
        const std::size_t c = i % k;
        std::vector<double> row(dims);
        for (std::size_t j = 0; j < dims; ++j) row[j] = centers[c][j] + gauss(rng);
        rows.push_back(std::move(row));
        labels.push_back(static_cast<int>(c));
    }
    for (std::size_t i = 0; i < n_noise; ++i) {
        std::vector<double> row(dims);
        for (std::size_t j = 0; j < dims; ++j) row[j] = uniform(rng);
        rows.push_back(std::move(row));
        labels.push_back(kNoise);
    }
    out.X = FeatureMatrix::from_rows(rows);
    out.true_labels = std::move(labels);
    return out;
}

Dataset synthesize_schema(std::uint64_t seed, std::size_t n, int planted_k, double separation,
                          double noise_fraction) {
    // Blob structure in unit space, then mapped into each column's legal
    // range. Unit coordinates are squashed into (0, 1) via a logistic.
    const std::size_t p = schema_columns().size();
    SynthesisResult base = synthesize(seed, n, planted_k, separation, noise_fraction, p, 1.0);

    struct Range {
        double lo, hi;
    };
    static const Range ranges[16] = {
        {0.0, 5000.0},   // MHR
        {500.0, 1.5e6},  // POPULATION
        {1.0, 500.0},    // DEMOGDENSITY
        {0.0, 10.0},     {0.0, 10.0}, {0.0, 10.0}, {0.0, 10.0}, {0.0, 10.0},  // IDEB
        {60.0, 80.0},    // LIFEEXPECT
        {0.0, 1.0},      // GINI
        {0.0, 100.0},    // INRICHEST10
        {0.0, 100.0},    // EDUCLEVEL
        {0.0, 1.0},      {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};  // MHDI*

    const std::size_t nrows = base.X.rows();
    std::vector<double> values(nrows * p);
    std::vector<std::string> names(nrows);
    std::vector<MunicipalityRecord> records;
    records.reserve(nrows);
    for (std::size_t i = 0; i < nrows; ++i) {
        names[i] = "M" + std::to_string(i);
        std::vector<double> row(p);
        for (std::size_t j = 0; j < p; ++j) {
            const double u = 1.0 / (1.0 + std::exp(-(base.X(i, j) - separation / 2.0) / 2.0));
            row[j] = ranges[j].lo + u * (ranges[j].hi - ranges[j].lo);
            values[i * p + j] = row[j];
        }
        MunicipalityRecord r = record_from_row(names[i], row);
        r.validate();
        records.push_back(std::move(r));
    }
    FeatureMatrix X(std::move(values), nrows, p, std::move(names), schema_columns());
    return {std::move(X), std::move(records)};
}

}  // namespace municlust
