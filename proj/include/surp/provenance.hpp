#pragma once

// Reproducibility metadata attached to every artifact the CLI writes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "surp/core.hpp"

namespace surp {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct Provenance {
    std::string tool_version = kToolVersion;
    std::string command_line;
    std::uint64_t seed = 0;
    /// (path, sha256) per input file.
    std::vector<std::pair<std::string, std::string>> inputs;

    void add_input(const std::filesystem::path& path);
    json to_json() const;
};

/// Writes `<artifact>.prov.json` next to the artifact.
std::filesystem::path write_provenance(const std::filesystem::path& artifact, const Provenance& prov);

}  // namespace surp
