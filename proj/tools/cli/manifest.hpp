#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <worldfunc/io.hpp>

namespace worldfunc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(const std::string& data);

/// UTC timestamp in ISO 8601 with seconds resolution.
std::string iso_timestamp(std::chrono::system_clock::time_point t);

struct NamedOutput {
    /// Logical name: "primary", "profile" or "raw".
    std::string name;
    std::string content;
};

json build_manifest(const json& config, std::chrono::system_clock::time_point started,
                    std::chrono::system_clock::time_point finished, const std::vector<NamedOutput>& outputs);

}  // namespace worldfunc::cli
