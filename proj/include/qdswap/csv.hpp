// Copyright 2026 The qdswap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdswap/density_matrix.hpp"
#include "qdswap/mc.hpp"
#include "qdswap/tomography.hpp"

namespace qdswap {

/// Full-precision, locale-independent number formatting. Identical inputs
/// always serialize to identical bytes.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

inline void write_histogram_csv(std::ostream& os, const FidelityHistogram& h) {
    os << "bin_lo_fidelity,bin_hi_fidelity,probability_density\n";
    for (std::size_t i = 0; i < h.density.size(); ++i)
        os << fmt_double(h.edges[i]) << ',' << fmt_double(h.edges[i + 1]) << ','
           << fmt_double(h.density[i]) << '\n';
}

namespace csv_detail {

inline void write_spec_line(std::ostream& os, const char* name, const GaussianSpec& s) {
    os << name << ": mu=" << fmt_double(s.mu) << " sigma=" << fmt_double(s.sigma);
    if (s.lower) os << " lower=" << fmt_double(*s.lower);
    if (s.upper) os << " upper=" << fmt_double(*s.upper);
    os << "\n";
}

inline void write_dists(std::ostream& os, const char* device,
                        const ParamDistributions& d) {
    os << device << ".";
    write_spec_line(os, "wavelength_x_nm", d.wavelength_x);
    os << device << ".";
    write_spec_line(os, "fss_uev", d.fss);
    os << device << ".";
    write_spec_line(os, "t1_x_ns", d.t1_x);
    os << device << ".";
    write_spec_line(os, "t1_xx_ns", d.t1_xx);
    os << device << ".";
    write_spec_line(os, "t2_star_ns", d.t2_star);
}

}  // namespace csv_detail

inline void write_histogram_summary(std::ostream& os, const FidelityHistogram& h) {
    const auto& cfg = h.provenance;
    os << "qdswap montecarlo summary (version " << h.code_version << ")\n"
       << "scenario: " << cfg.scenario.id << "\n"
       << "tuning_stack:";
    for (const auto& t : cfg.scenario.stack)
        os << " " << to_string(t.kind) << "(" << fmt_double(t.range) << ")";
    os << "\n"
       << "zero_sigma: " << (cfg.scenario.zero_sigma ? "true" : "false") << "\n";
    if (cfg.scenario.t2_star_override)
        csv_detail::write_spec_line(os, "t2_star_override", *cfg.scenario.t2_star_override);
    os << "n_samples: " << cfg.n_samples << "\n"
       << "seed: " << cfg.seed << "\n"
       << "bins: " << cfg.bins << "\n"
       << "ideal_bsm: " << (cfg.swap.ideal_bsm ? "true" : "false") << "\n"
       << "include_cascade: " << (cfg.swap.include_cascade ? "true" : "false") << "\n"
       << "pair_cross_dephasing: " << (cfg.swap.pair_cross_dephasing ? "true" : "false")
       << "\n";
    csv_detail::write_dists(os, "device_a", cfg.dists_a);
    csv_detail::write_dists(os, "device_b", cfg.dists_b);
    os << "mean: " << fmt_fixed(h.mean) << "\n"
       << "median: " << fmt_fixed(h.median) << "\n";
    for (std::size_t i = 0; i < kSummaryPercentiles.size(); ++i)
        os << "p" << kSummaryPercentiles[i] << ": " << fmt_fixed(h.percentiles[i]) << "\n";
}

inline void write_counts_csv(std::ostream& os, const std::vector<CoincidenceRecord>& records) {
    os << "basis_label,counts,gate_ns\n";
    for (const auto& r : records)
        os << r.basis_label << ',' << fmt_double(r.observed()) << ','
           << fmt_double(r.gate_ns) << '\n';
}

inline std::vector<CoincidenceRecord> read_counts_csv(std::istream& is) {
    std::vector<CoincidenceRecord> records;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("counts csv: empty input");
    if (line.rfind("basis_label,", 0) != 0)
        throw std::invalid_argument("counts csv: missing header row");
    int index = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string label, rate_str, gate_str;
        if (!std::getline(row, label, ',') || !std::getline(row, rate_str, ',') ||
            !std::getline(row, gate_str))
            throw std::invalid_argument("counts csv: malformed row: " + line);
        CoincidenceRecord rec;
        rec.basis_label = label;
        rec.basis_index = index++;
        rec.expected_rate = std::stod(rate_str);
        rec.counts = static_cast<std::uint64_t>(rec.expected_rate);
        rec.noisy = false;  // observed() returns the stored rate either way
        rec.gate_ns = std::stod(gate_str);
        records.push_back(std::move(rec));
    }
    return records;
}

/// 4x4 complex matrix as rows (part,row,col,value), real block then
/// imaginary block.
inline void write_matrix_csv(std::ostream& os, const DensityMatrix& rho) {
    os << "part,row,col,value\n";
    for (const char* part : {"re", "im"})
        for (int r = 0; r < rho.dim(); ++r)
            for (int c = 0; c < rho.dim(); ++c) {
                const Complex v = rho(r, c);
                os << part << ',' << r << ',' << c << ','
                   << fmt_double(part[0] == 'r' ? v.real() : v.imag()) << '\n';
            }
}

/// Sample list: one numeric value per line under a unit-bearing header.
struct SampleColumn {
    std::string unit_header;
    std::vector<double> values;
};

inline SampleColumn read_sample_csv(std::istream& is) {
    SampleColumn col;
    if (!std::getline(is, col.unit_header) || col.unit_header.empty())
        throw std::invalid_argument("sample csv: missing header line");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        col.values.push_back(std::stod(line));
    }
    return col;
}

}  // namespace qdswap
