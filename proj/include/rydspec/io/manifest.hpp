#pragma once

#include <cstdint>
#include <ctime>
#include <string>
#include <string_view>

#include <json.hpp>

namespace rydspec::io {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a, 64-bit: tiny, stable across platforms, good enough to tell two
// configs apart in a run log.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

struct RunManifest {
    std::string command;       // full argv line that produced the output
    std::string config_digest; // fnv1a64 of the exact config bytes, hex
    std::string tool_version = kToolVersion;
    std::string timestamp;     // ISO-8601 UTC
};

inline std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline RunManifest make_manifest(std::string command, std::string_view config_bytes) {
    RunManifest m;
    m.command = std::move(command);
    m.config_digest = hex64(fnv1a64(config_bytes));
    m.timestamp = iso8601_utc_now();
    return m;
}

inline nlohmann::json manifest_to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"config_digest", m.config_digest},
            {"tool_version", m.tool_version},
            {"timestamp", m.timestamp}};
}

} // namespace rydspec::io
