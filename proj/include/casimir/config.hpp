#pragma once

#include <map>
#include <optional>
#include <string>

namespace casimir {

/// Plain-text configuration: one `section.key = value` per line, '#' comments.
/// Environment variables override file values: key `materials.omega_p_ev`
/// maps to `CASIMIR_MATERIALS_OMEGA_P_EV`.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);  // throws ConfigError
    static Config from_string(const std::string& text);

    void apply_env_overrides();

    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

    /// FNV-1a hash of the canonicalized (sorted) key=value list.
    std::string hash() const;

private:
    std::map<std::string, std::string> values_;
};

/// Directory holding the bundled data files: the CASIMIR_DATA_DIR environment
/// variable if set, else the compiled-in default.
std::string default_data_dir();

} // namespace casimir
