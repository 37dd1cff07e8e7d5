#include "smc/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace smc {

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
        return "0";
    return std::string(buf, end);
}

std::string format_fraction_percent(double fraction) {
    if (!std::isfinite(fraction))
        return "inf%";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
    return buf;
}

std::string format_quantity(const units::MetricValue& m) {
    std::string out = format_number(m.value);
    out += ' ';
    out += units::unit_name(m.unit);
    return out;
}

} // namespace smc
