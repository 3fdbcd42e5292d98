#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace remd {

/// Flat typed key-value configuration. Keys are "section.name"; the key
/// set and each key's type are fixed by a registry, so typos are rejected
/// by name instead of silently ignored. Values arrive as text (file or
/// flag) and are validated against the registered type on entry.
class RunConfig {
public:
    enum class Type { integer, unsigned64, real, text };

    /// Registry-backed construction with every key at its default.
    static RunConfig defaults();

    /// Parses an INI-style file: `[section]` headers, `key = value` lines,
    /// `#` comments. Later values win. Throws on unknown keys, type
    /// violations, or syntax errors (with line numbers).
    void load_file(const std::string& path);
    /// Same grammar, from memory.
    void load_text(const std::string& text, const std::string& origin);

    /// Sets one "section.key" to a value; validates key and type.
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    double get_real(const std::string& key) const;
    const std::string& get_text(const std::string& key) const;

    /// Full sorted listing in the file grammar; reloading it reproduces
    /// this configuration exactly.
    std::string echo() const;

private:
    void require_known(const std::string& key, Type expected,
                       const char* caller) const;

    std::map<std::string, std::string> values_;
};

}  // namespace remd
