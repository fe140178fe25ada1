#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace kinmix {

/// Periodic spatial cells on [0, lx) and the velocity box [-lv/2, lv/2] with
/// nv diagnostic bins / nodes.
struct GridSpec {
    double lx = 4.0 * 3.14159265358979323846;
    std::size_t nx = 128;
    double lv = 20.0;
    std::size_t nv = 512;

    double dx() const noexcept { return lx / static_cast<double>(nx); }
    double cell_center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx(); }
    std::size_t cell_of(double x) const noexcept {
        const auto i = static_cast<std::size_t>(x / dx());
        return std::min(i, nx - 1);
    }
    double wrap(double x) const noexcept {
        double y = std::fmod(x, lx);
        if (y < 0.0) y += lx;
        // fmod of a tiny negative value can round up to lx itself.
        return y >= lx ? 0.0 : y;
    }

    bool operator==(const GridSpec&) const = default;
};

inline std::size_t periodic_prev(std::size_t i, std::size_t n) noexcept { return i == 0 ? n - 1 : i - 1; }
inline std::size_t periodic_next(std::size_t i, std::size_t n) noexcept { return i + 1 == n ? 0 : i + 1; }

}  // namespace kinmix
