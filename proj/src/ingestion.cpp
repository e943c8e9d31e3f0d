#include "fairtopk/ingestion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "fairtopk/csv.hpp"

namespace fairtopk {

namespace {

using nlohmann::json;

bool parse_double(const std::string& text, double& out) {
    try {
        std::size_t consumed = 0;
        out = std::stod(text, &consumed);
        while (consumed < text.size() && std::isspace(static_cast<unsigned char>(text[consumed])))
            ++consumed;
        return consumed == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

AttributeBin bin_from_json(const json& j) {
    AttributeBin bin;
    bin.code = j.at("code").get<std::string>();
    if (j.contains("range")) {
        const auto& range = j.at("range");
        if (!range.is_array() || range.size() != 2)
            throw std::invalid_argument("coding: bin '" + bin.code +
                                        "' range must be a [lo, hi] pair");
        bin.has_range = true;
        bin.lo = range[0].get<double>();
        bin.hi = range[1].get<double>();
        if (bin.lo > bin.hi)
            throw std::invalid_argument("coding: bin '" + bin.code + "' has lo > hi");
    } else if (j.contains("values")) {
        bin.values = j.at("values").get<std::vector<std::string>>();
        if (bin.values.empty())
            throw std::invalid_argument("coding: bin '" + bin.code + "' has no values");
    } else {
        throw std::invalid_argument("coding: bin '" + bin.code +
                                    "' needs either \"values\" or \"range\"");
    }
    return bin;
}

void validate_coding(const CodingConfig& coding) {
    for (const auto& attr : coding.attributes) {
        if (attr.bins.empty())
            throw std::invalid_argument("coding: attribute '" + attr.source_column +
                                        "' has no bins");
        std::unordered_set<std::string> codes;
        std::unordered_set<std::string> values;
        for (const auto& bin : attr.bins) {
            if (!codes.insert(bin.code).second)
                throw std::invalid_argument("coding: attribute '" + attr.source_column +
                                            "' repeats code '" + bin.code + "'");
            for (const auto& v : bin.values)
                if (!values.insert(v).second)
                    throw std::invalid_argument("coding: attribute '" + attr.source_column +
                                                "' maps value '" + v + "' twice");
        }
        for (std::size_t a = 0; a < attr.bins.size(); ++a)
            for (std::size_t b = a + 1; b < attr.bins.size(); ++b) {
                const auto& x = attr.bins[a];
                const auto& y = attr.bins[b];
                if (x.has_range && y.has_range && x.lo <= y.hi && y.lo <= x.hi)
                    throw std::invalid_argument("coding: attribute '" + attr.source_column +
                                                "' has overlapping ranges '" + x.code +
                                                "' and '" + y.code + "'");
            }
    }
}

// A value may match at most one bin; ranges and value sets are checked
// against each other at match time since a numeric literal can appear in
// both kinds.
const AttributeBin* match_bin(const AttributeCoding& attr, const std::string& cell,
                              std::size_t row_number) {
    const AttributeBin* matched = nullptr;
    double numeric = 0.0;
    const bool is_numeric = parse_double(cell, numeric);
    for (const auto& bin : attr.bins) {
        bool hit = false;
        if (bin.has_range) {
            hit = is_numeric && numeric >= bin.lo && numeric <= bin.hi;
        } else {
            hit = std::find(bin.values.begin(), bin.values.end(), cell) != bin.values.end();
        }
        if (!hit) continue;
        if (matched)
            throw std::invalid_argument("row " + std::to_string(row_number) + ": value '" +
                                        cell + "' in column '" + attr.source_column +
                                        "' matches bins '" + matched->code + "' and '" +
                                        bin.code + "'");
        matched = &bin;
    }
    return matched;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace

CodingConfig CodingConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("coding: invalid JSON: ") + e.what());
    }
    CodingConfig coding;
    coding.id_column = j.value("id_column", std::string("id"));
    coding.score_column = j.value("score_column", std::string("score"));
    if (!j.contains("attributes") || !j.at("attributes").is_array() ||
        j.at("attributes").empty())
        throw std::invalid_argument("coding: \"attributes\" must be a non-empty array");
    for (const auto& a : j.at("attributes")) {
        AttributeCoding attr;
        attr.source_column = a.at("source_column").get<std::string>();
        for (const auto& b : a.at("bins")) attr.bins.push_back(bin_from_json(b));
        coding.attributes.push_back(std::move(attr));
    }
    validate_coding(coding);
    return coding;
}

CodingConfig CodingConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("coding: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::string CodingConfig::to_json_text() const {
    json j;
    j["id_column"] = id_column;
    j["score_column"] = score_column;
    j["attributes"] = json::array();
    for (const auto& attr : attributes) {
        json a;
        a["source_column"] = attr.source_column;
        a["bins"] = json::array();
        for (const auto& bin : attr.bins) {
            json b;
            b["code"] = bin.code;
            if (bin.has_range)
                b["range"] = {bin.lo, bin.hi};
            else
                b["values"] = bin.values;
            a["bins"].push_back(std::move(b));
        }
        j["attributes"].push_back(std::move(a));
    }
    return j.dump(2) + "\n";
}

Instance load_csv_stream(std::istream& in, const CodingConfig& coding) {
    const auto rows = csv::parse(in);
    if (rows.empty()) throw std::invalid_argument("load_csv: file is empty");

    const auto& header = rows.front();
    std::unordered_map<std::string, std::size_t> columns;
    for (std::size_t c = 0; c < header.size(); ++c) columns.emplace(header[c], c);

    const auto column_index = [&](const std::string& name) {
        const auto it = columns.find(name);
        if (it == columns.end())
            throw std::invalid_argument("load_csv: missing column '" + name + "'");
        return it->second;
    };

    const std::size_t id_col = column_index(coding.id_column);
    const std::size_t score_col = column_index(coding.score_column);
    std::vector<std::size_t> attr_cols;
    for (const auto& attr : coding.attributes) attr_cols.push_back(column_index(attr.source_column));

    std::vector<Candidate> candidates;
    candidates.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t row_number = r + 1;  // 1-based, header is row 1
        if (row.size() != header.size())
            throw std::invalid_argument("row " + std::to_string(row_number) + ": expected " +
                                        std::to_string(header.size()) + " fields, found " +
                                        std::to_string(row.size()));
        Candidate candidate;
        candidate.id = row[id_col];
        if (!parse_double(row[score_col], candidate.score))
            throw std::invalid_argument("row " + std::to_string(row_number) +
                                        ": non-numeric score '" + row[score_col] + "'");
        for (std::size_t a = 0; a < coding.attributes.size(); ++a) {
            const std::string& cell = row[attr_cols[a]];
            const AttributeBin* bin = match_bin(coding.attributes[a], cell, row_number);
            if (!bin)
                throw std::invalid_argument("row " + std::to_string(row_number) + ": value '" +
                                            cell + "' in column '" +
                                            coding.attributes[a].source_column +
                                            "' matches no bin");
            candidate.attributes.push_back(bin->code);
        }
        candidates.push_back(std::move(candidate));
    }
    return build_instance(std::move(candidates));
}

Instance load_csv(const std::string& path, const CodingConfig& coding) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("load_csv: cannot open '" + path + "'");
    return load_csv_stream(in, coding);
}

namespace {

// Type 7 quantile on an ascending sample.
double quantile7(const std::vector<double>& ascending, double q) {
    if (ascending.size() == 1) return ascending.front();
    const double h = q * static_cast<double>(ascending.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, ascending.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return ascending[lo] + frac * (ascending[hi] - ascending[lo]);
}

}  // namespace

std::vector<ClassStats> class_stats(const Instance& instance) {
    std::vector<ClassStats> stats;
    stats.reserve(instance.num_classes());
    for (const auto& cls : instance.classes) {
        std::vector<double> ascending(cls.utilities.rbegin(), cls.utilities.rend());
        ClassStats s;
        s.label = cls.label;
        s.size = cls.size();
        double sum = 0.0;
        for (double u : ascending) sum += u;
        s.mean = sum / static_cast<double>(ascending.size());
        s.min = ascending.front();
        s.max = ascending.back();
        s.q1 = quantile7(ascending, 0.25);
        s.median = quantile7(ascending, 0.5);
        s.q3 = quantile7(ascending, 0.75);
        stats.push_back(std::move(s));
    }
    return stats;
}

void write_stats_csv(const std::vector<ClassStats>& stats, std::ostream& out) {
    out << "label,size,mean,min,q1,median,q3,max\n";
    for (const auto& s : stats) {
        csv::write_row(out, {s.label, std::to_string(s.size), format_fixed(s.mean, 4),
                             format_fixed(s.min, 4), format_fixed(s.q1, 4),
                             format_fixed(s.median, 4), format_fixed(s.q3, 4),
                             format_fixed(s.max, 4)});
    }
}

SyntheticSpec SyntheticSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("synthetic spec: invalid JSON: ") + e.what());
    }
    SyntheticSpec spec;
    spec.score_floor = j.value("score_floor", 0.0);
    spec.score_cap = j.value("score_cap", 850.0);
    spec.seed = j.value("seed", 0ull);
    if (spec.score_floor >= spec.score_cap)
        throw std::invalid_argument("synthetic spec: score_floor must be below score_cap");
    if (!j.contains("class_specs") || !j.at("class_specs").is_array() ||
        j.at("class_specs").empty())
        throw std::invalid_argument("synthetic spec: \"class_specs\" must be a non-empty array");
    for (const auto& c : j.at("class_specs")) {
        ClassSpec cs;
        cs.label = c.at("label").get<std::string>();
        cs.size = c.at("size").get<std::size_t>();
        cs.score_mean = c.at("score_mean").get<double>();
        cs.score_stddev = c.at("score_stddev").get<double>();
        if (cs.size < 1)
            throw std::invalid_argument("synthetic spec: class '" + cs.label + "' has size 0");
        if (!(cs.score_stddev > 0.0))
            throw std::invalid_argument("synthetic spec: class '" + cs.label +
                                        "' needs stddev > 0");
        spec.class_specs.push_back(std::move(cs));
    }
    return spec;
}

SyntheticSpec SyntheticSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("synthetic spec: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

Instance generate_synthetic(const SyntheticSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<Candidate> candidates;
    for (const auto& cls : spec.class_specs) {
        std::normal_distribution<double> normal(cls.score_mean, cls.score_stddev);
        for (std::size_t j = 0; j < cls.size; ++j) {
            // Truncation by rejection keeps the in-range distribution shape.
            double draw = normal(rng);
            int attempts = 0;
            while (draw < spec.score_floor || draw > spec.score_cap) {
                if (++attempts > 1'000'000)
                    throw std::invalid_argument("generate_synthetic: class '" + cls.label +
                                                "' mean/stddev place almost no mass in range");
                draw = normal(rng);
            }
            Candidate candidate;
            char idbuf[64];
            std::snprintf(idbuf, sizeof(idbuf), "%s-%05zu", cls.label.c_str(), j + 1);
            candidate.id = idbuf;
            candidate.score = std::round(draw * 100.0) / 100.0;
            candidate.attributes = {cls.label};
            candidates.push_back(std::move(candidate));
        }
    }
    return build_instance(std::move(candidates));
}

void write_instance_csv(const Instance& instance, std::ostream& out) {
    out << "id,score,class\n";
    for (const auto& cls : instance.classes)
        for (const auto& member : cls.members)
            csv::write_row(out, {member.id, format_fixed(member.score, 2), cls.label});
}

CodingConfig identity_coding(const Instance& instance) {
    CodingConfig coding;
    AttributeCoding attr;
    attr.source_column = "class";
    for (const auto& cls : instance.classes) {
        AttributeBin bin;
        bin.code = cls.label;
        bin.values = {cls.label};
        attr.bins.push_back(std::move(bin));
    }
    coding.attributes.push_back(std::move(attr));
    return coding;
}

}  // namespace fairtopk
