#pragma once

// CSV outputs. Numbers are written with 17 significant digits; every file is
// written to a temporary sibling and renamed into place.

#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace kinmix {

struct TimeSeriesRow {
    static constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

    double t = 0.0;
    double u_gap_inf = 0.0;
    double T_gap_inf = 0.0;
    double u_gap_sq = 0.0;
    double T_gap = kNone;
    double analytic_u_gap_sq = kNone;
    double analytic_T_gap = kNone;
    double mass1 = 0.0;
    double mass2 = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
    double abs_weight1 = kNone;
    double abs_weight2 = kNone;
    double entropy = kNone;
};

/// Column names in file order.
const std::vector<std::string>& timeseries_columns();

/// Phase-space samples f(x_i, v_j), row-major in (i, j).
struct Snapshot {
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> f;
};

/// Throws Error when the file cannot be written.
void write_timeseries(const std::filesystem::path& path, std::span<const TimeSeriesRow> rows);
/// Columns x, v, f. Throws Error when the file cannot be written.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace kinmix
