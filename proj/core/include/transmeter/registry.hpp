#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace transmeter {

// One dataset the CLI can refer to by name. Paths are resolved against the
// registry file's directory when relative.
struct RegistryEntry {
    std::string name;
    std::filesystem::path csv_path;
    std::string label_column;
    std::string positive_label;
    std::filesystem::path checkpoint_path;  // optional; empty if absent
};

struct Registry {
    std::vector<RegistryEntry> entries;
    std::filesystem::path file;
    std::uint64_t content_hash = 0;  // FNV-1a of the file bytes

    const RegistryEntry* find(const std::string& name) const;
};

// INI-style file: one [name] section per dataset with csv, label_column,
// positive_label and an optional checkpoint key. '#' starts a comment.
Registry load_registry(const std::filesystem::path& path);

void write_registry(const std::filesystem::path& path,
                    const std::vector<RegistryEntry>& entries);

}  // namespace transmeter
