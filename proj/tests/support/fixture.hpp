#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace smc::test {

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(SMC_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) {
    return read_file(fixture_path(name));
}

/// Replaces a fragment that must occur exactly once, so single-field
/// mutations of the golden fixture stay single-field.
inline std::string replace_once(std::string text, const std::string& from,
                                const std::string& to) {
    const auto pos = text.find(from);
    if (pos == std::string::npos)
        throw std::runtime_error("fragment not found: " + from);
    if (text.find(from, pos + from.size()) != std::string::npos)
        throw std::runtime_error("fragment is ambiguous: " + from);
    text.replace(pos, from.size(), to);
    return text;
}

} // namespace smc::test
