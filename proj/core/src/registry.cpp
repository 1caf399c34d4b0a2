#include "transmeter/registry.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "transmeter/errors.hpp"
#include "transmeter/rng.hpp"

namespace transmeter {

const RegistryEntry* Registry::find(const std::string& name) const {
    for (const RegistryEntry& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    std::filesystem::path p(value);
    if (p.is_absolute()) return p;
    return base / p;
}

}  // namespace

Registry load_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open registry '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    Registry registry;
    registry.file = path;
    registry.content_hash = fnv1a(content);
    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");

    std::istringstream lines(content);
    std::string line;
    RegistryEntry* current = nullptr;
    std::set<std::string> names;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const std::string t = trimmed(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw LoadError("registry line " + std::to_string(line_no) +
                                ": unterminated section header");
            }
            const std::string name = trimmed(t.substr(1, t.size() - 2));
            if (name.empty()) {
                throw LoadError("registry line " + std::to_string(line_no) + ": empty name");
            }
            if (!names.insert(name).second) {
                throw LoadError("registry: duplicate dataset name '" + name + "'");
            }
            RegistryEntry entry;
            entry.name = name;
            registry.entries.push_back(std::move(entry));
            current = &registry.entries.back();
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos || !current) {
            throw LoadError("registry line " + std::to_string(line_no) + ": expected key = value"
                            " inside a [section]");
        }
        const std::string key = trimmed(t.substr(0, eq));
        const std::string value = trimmed(t.substr(eq + 1));
        if (key == "csv") {
            current->csv_path = resolve(base, value);
        } else if (key == "label_column") {
            current->label_column = value;
        } else if (key == "positive_label") {
            current->positive_label = value;
        } else if (key == "checkpoint") {
            current->checkpoint_path = resolve(base, value);
        } else {
            throw LoadError("registry line " + std::to_string(line_no) + ": unknown key '" +
                            key + "'");
        }
    }

    for (const RegistryEntry& e : registry.entries) {
        if (e.csv_path.empty() || e.label_column.empty() || e.positive_label.empty()) {
            throw LoadError("registry entry '" + e.name +
                            "' needs csv, label_column and positive_label");
        }
    }
    if (registry.entries.empty()) {
        throw LoadError("registry '" + path.string() + "' lists no datasets");
    }
    return registry;
}

void write_registry(const std::filesystem::path& path,
                    const std::vector<RegistryEntry>& entries) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write registry '" + path.string() + "'");
    }
    out << "# transmeter dataset registry\n";
    for (const RegistryEntry& e : entries) {
        out << '[' << e.name << "]\n";
        out << "csv = " << e.csv_path.string() << '\n';
        out << "label_column = " << e.label_column << '\n';
        out << "positive_label = " << e.positive_label << '\n';
        if (!e.checkpoint_path.empty()) {
            out << "checkpoint = " << e.checkpoint_path.string() << '\n';
        }
        out << '\n';
    }
}

}  // namespace transmeter
