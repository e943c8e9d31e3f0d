#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairtopk/model.hpp"

namespace fairtopk {

/// One coded bucket of an attribute: either an explicit value set or an
/// inclusive numeric range [lo, hi].
struct AttributeBin {
    std::string code;
    std::vector<std::string> values;
    bool has_range = false;
    double lo = 0.0;
    double hi = 0.0;
};

struct AttributeCoding {
    std::string source_column;
    std::vector<AttributeBin> bins;
};

/// Maps raw CSV columns onto attribute codes. Bins must be disjoint and
/// must cover every value encountered; an unmatched value fails the load.
struct CodingConfig {
    std::string id_column = "id";
    std::string score_column = "score";
    std::vector<AttributeCoding> attributes;

    static CodingConfig from_json_file(const std::string& path);
    static CodingConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

/// Reads `id,score,<attr columns>` rows and builds an Instance with class
/// labels formed by concatenating the matched bin codes in config order.
Instance load_csv(const std::string& path, const CodingConfig& coding);
Instance load_csv_stream(std::istream& in, const CodingConfig& coding);

struct ClassStats {
    std::string label;
    std::size_t size = 0;
    double mean = 0.0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Per-class descriptive score statistics; quartiles use linear
/// interpolation between order statistics (the "type 7" rule).
std::vector<ClassStats> class_stats(const Instance& instance);
void write_stats_csv(const std::vector<ClassStats>& stats, std::ostream& out);

struct ClassSpec {
    std::string label;
    std::size_t size = 0;
    double score_mean = 0.0;
    double score_stddev = 1.0;
};

/// Deterministic synthetic pool: per class, truncated-normal scores
/// rounded to 0.01.
struct SyntheticSpec {
    std::vector<ClassSpec> class_specs;
    double score_floor = 0.0;
    double score_cap = 850.0;
    std::uint64_t seed = 0;

    static SyntheticSpec from_json_file(const std::string& path);
    static SyntheticSpec from_json_text(const std::string& text);
};

Instance generate_synthetic(const SyntheticSpec& spec);

/// Writes an instance in the load_csv format with a single `class`
/// attribute column holding each candidate's class label.
void write_instance_csv(const Instance& instance, std::ostream& out);

/// The coding that reads write_instance_csv output back: one attribute on
/// the `class` column, one identity bin per label.
CodingConfig identity_coding(const Instance& instance);

}  // namespace fairtopk
