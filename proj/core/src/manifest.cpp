#include "ngems/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ngems/errors.hpp"

namespace ngems {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("manifest: cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hex(ss.str());
}

std::string utc_now_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const RunManifest& manifest, const std::string& out_dir) {
    nlohmann::json j;
    j["tool_version"] = manifest.tool_version;
    j["subcommand"] = manifest.subcommand;
    j["input_hashes"] = manifest.input_hashes;
    j["flags"] = manifest.flags;
    j["seed"] = manifest.seed;
    j["created_utc"] = manifest.created_utc;

    const auto path = std::filesystem::path(out_dir) / "manifest.json";
    std::ofstream out(path);
    if (!out) {
        throw DataError("manifest: cannot open " + path.string() + " for writing");
    }
    out << j.dump(2) << '\n';
}

}  // namespace ngems
