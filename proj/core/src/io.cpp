#include "kinmix/io.hpp"

#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "kinmix/errors.hpp"

namespace kinmix {

const std::vector<std::string>& timeseries_columns() {
    static const std::vector<std::string> columns{
        "t",        "u_gap_inf", "T_gap_inf", "u_gap_sq",     "T_gap",        "analytic_u_gap_sq", "analytic_T_gap",
        "mass1",    "mass2",     "momentum",  "energy",       "abs_weight1",  "abs_weight2",       "entropy"};
    return columns;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(fmt::format("cannot open '{}' for writing", tmp.string()));
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error(fmt::format("failed writing '{}'", tmp.string()));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(fmt::format("cannot move output into place at '{}'", path.string()));
    }
}

void write_timeseries(const std::filesystem::path& path, std::span<const TimeSeriesRow> rows) {
    fmt::memory_buffer buf;
    const auto& cols = timeseries_columns();
    fmt::format_to(std::back_inserter(buf), "{}\n", fmt::join(cols, ","));
    for (const TimeSeriesRow& r : rows) {
        fmt::format_to(std::back_inserter(buf),
                       "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                       "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       r.t, r.u_gap_inf, r.T_gap_inf, r.u_gap_sq, r.T_gap, r.analytic_u_gap_sq, r.analytic_T_gap,
                       r.mass1, r.mass2, r.momentum, r.energy, r.abs_weight1, r.abs_weight2, r.entropy);
    }
    write_file_atomic(path, fmt::to_string(buf));
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
    if (s.f.size() != s.x.size() * s.v.size()) throw Error("snapshot size does not match its axes");
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "x,v,f\n");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        for (std::size_t j = 0; j < s.v.size(); ++j) {
            fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g},{:.17g}\n", s.x[i], s.v[j],
                           s.f[i * s.v.size() + j]);
        }
    }
    write_file_atomic(path, fmt::to_string(buf));
}

}  // namespace kinmix
