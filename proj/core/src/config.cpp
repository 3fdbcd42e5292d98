#include "remd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace remd {

namespace {

struct KeySpec {
    const char* key;
    RunConfig::Type type;
    const char* default_value;
};

/// The full key registry. Every configurable quantity in the toolchain
/// appears here; anything else is a typo and is rejected by name.
const std::vector<KeySpec>& registry() {
    using T = RunConfig::Type;
    static const std::vector<KeySpec> keys = {
        {"run.seed", T::unsigned64, "7"},
        {"run.out_dir", T::text, "."},

        {"data.nx", T::integer, "32"},
        {"data.ny", T::integer, "32"},
        {"data.slope", T::real, "-3.5"},
        {"data.count", T::integer, "64"},

        {"training.iterations", T::integer, "2000"},
        {"training.batch_size", T::integer, "8"},
        {"training.learning_rate", T::real, "1e-3"},
        {"training.scale_factor", T::integer, "2"},
        {"training.checkpoint_every", T::integer, "500"},
        {"training.T", T::integer, "1000"},
        {"training.levels", T::integer, "2"},
        {"training.wavelet", T::text, "haar"},
        {"training.lift", T::text, "wavelet"},

        {"physics.w_lap", T::real, "1"},
        {"physics.w_bi", T::real, "1"},
        {"physics.w_aniso", T::real, "1"},
        {"physics.w_spec", T::real, "1"},
        {"physics.kappa", T::real, "0"},
        {"physics.huber_delta", T::real, "1"},
        {"physics.lambda_max", T::real, "0.1"},

        {"sampler.T", T::integer, "1000"},
        {"sampler.nfe", T::integer, "5"},
        {"sampler.seed", T::unsigned64, "0"},
        {"sampler.alpha_clip", T::real, "0.05"},
        {"sampler.t_start", T::integer, "0"},
        {"sampler.init_noise", T::real, "1"},
    };
    return keys;
}

const KeySpec* find_key(const std::string& key) {
    for (const KeySpec& s : registry())
        if (key == s.key) return &s;
    return nullptr;
}

void check_type(const std::string& key, RunConfig::Type type,
                const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    switch (type) {
        case RunConfig::Type::integer:
            std::strtoll(begin, &end, 10);
            break;
        case RunConfig::Type::unsigned64:
            if (!value.empty() && value[0] == '-') end = const_cast<char*>(begin);
            else std::strtoull(begin, &end, 10);
            break;
        case RunConfig::Type::real:
            std::strtod(begin, &end);
            break;
        case RunConfig::Type::text:
            return;
    }
    if (value.empty() || end != begin + value.size())
        throw std::invalid_argument("config: value '" + value + "' for key '" +
                                    key + "' is not of the registered type");
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::defaults() {
    RunConfig c;
    for (const KeySpec& s : registry()) c.values_[s.key] = s.default_value;
    return c;
}

void RunConfig::require_known(const std::string& key, Type expected,
                              const char* caller) const {
    const KeySpec* spec = find_key(key);
    if (!spec)
        throw std::invalid_argument(std::string(caller) + ": unknown key '" +
                                    key + "'");
    if (spec->type != expected)
        throw std::invalid_argument(std::string(caller) + ": key '" + key +
                                    "' has a different registered type");
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const KeySpec* spec = find_key(key);
    if (!spec)
        throw std::invalid_argument("config: unknown key '" + key + "'");
    check_type(key, spec->type, value);
    values_[key] = value;
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    load_text(buf.str(), path);
}

void RunConfig::load_text(const std::string& text, const std::string& origin) {
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section at " +
                                            origin + ":" + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value' at " +
                                        origin + ":" + std::to_string(lineno));
        const std::string name = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string key = section.empty() ? name : section + "." + name;
        set(key, value);
    }
}

bool RunConfig::has(const std::string& key) const {
    return values_.count(key) != 0;
}

long long RunConfig::get_int(const std::string& key) const {
    require_known(key, Type::integer, "config.get_int");
    return std::strtoll(values_.at(key).c_str(), nullptr, 10);
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
    require_known(key, Type::unsigned64, "config.get_u64");
    return std::strtoull(values_.at(key).c_str(), nullptr, 10);
}

double RunConfig::get_real(const std::string& key) const {
    require_known(key, Type::real, "config.get_real");
    return std::strtod(values_.at(key).c_str(), nullptr);
}

const std::string& RunConfig::get_text(const std::string& key) const {
    require_known(key, Type::text, "config.get_text");
    return values_.at(key);
}

std::string RunConfig::echo() const {
    std::ostringstream os;
    std::string section;
    for (const auto& [key, value] : values_) {
        const std::size_t dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) os << '\n';
            os << '[' << sec << "]\n";
            section = sec;
        }
        os << key.substr(dot + 1) << " = " << value << '\n';
    }
    return os.str();
}

}  // namespace remd
