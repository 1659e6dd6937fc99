#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace ngems {

inline constexpr const char* kToolVersion = "0.1.0";

// Audit record written next to every subcommand's outputs: hashes of the
// inputs that determine them, the seed, and the invocation. Outputs are a
// pure function of (input hashes, flags, seed); the manifest makes that
// checkable. The timestamp is the one deliberately non-deterministic field
// and lives only here, never in data outputs.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string subcommand;
    std::map<std::string, std::string> input_hashes;  // path -> fnv1a64 hex
    std::map<std::string, std::string> flags;         // flag -> rendered value
    std::uint64_t seed = 0;
    std::string created_utc;  // ISO 8601
};

// FNV-1a 64-bit of a byte string / file contents, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);
std::string hash_file(const std::string& path);  // throws DataError if unreadable

std::string utc_now_iso8601();

// Writes <out_dir>/manifest.json.
void write_manifest(const RunManifest& manifest, const std::string& out_dir);

}  // namespace ngems
