#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "municlust/clustering.hpp"

namespace municlust {

/// One row of the municipality table, field-for-field.
struct MunicipalityRecord {
    std::string name;
    double mhr = 0.0;            // homicide deaths 2002-2014, >= 0
    double population = 0.0;     // > 0
    double demog_density = 0.0;  // inhabitants per km^2, >= 0
    std::array<double, 5> ideb{};  // 2005, 2007, 2009, 2011, 2013; each in [0, 10]
    double life_expect = 0.0;    // years, > 0
    double gini = 0.0;           // [0, 1]
    double in_richest10 = 0.0;   // percent, [0, 100]
    double educ_level = 0.0;     // percent, [0, 100]
    double mhdi = 0.0;           // [0, 1]
    double mhdi_e = 0.0;
    double mhdi_l = 0.0;
    double mhdi_i = 0.0;

    void validate() const;  // throws InvalidInput naming the violated constraint
};

/// The 16 numeric column names in table order (NAME is carried separately).
const std::vector<std::string>& schema_columns();

struct Dataset {
    FeatureMatrix features;
    std::vector<MunicipalityRecord> records;
};

/// Reads a UTF-8 CSV with a header row of exact schema names plus NAME.
/// Columns may appear in any order; the output matrix is in schema order.
Dataset ingest_csv(const std::filesystem::path& path);

/// Canonical CSV bytes: header plus shortest round-trip decimal rendering.
std::string to_csv(const FeatureMatrix& X, const std::string& id_header = "NAME");

void write_csv(const FeatureMatrix& X, const std::filesystem::path& path,
               const std::string& id_header = "NAME");

/// FNV-1a 64-bit digest, used as the dataset fingerprint hash.
std::uint64_t fnv1a64(std::string_view bytes);

struct SynthesisResult {
    FeatureMatrix X;
    std::vector<int> true_labels;  // 0..k-1, kNoise for noise points
};

/// Gaussian blobs at centers `separation` apart plus uniform background
/// noise; bit-identical output per seed.
SynthesisResult synthesize(std::uint64_t seed, std::size_t n, int planted_k, double separation,
                           double noise_fraction, std::size_t dims = 2, double blob_sd = 1.0);

/// Schema-shaped variant: the same blob structure mapped into legal
/// MunicipalityRecord ranges across all 16 columns.
Dataset synthesize_schema(std::uint64_t seed, std::size_t n, int planted_k,
                          double separation = 6.0, double noise_fraction = 0.0);

}  // namespace municlust
