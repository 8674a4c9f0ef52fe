#include "hydrostat/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hydrostat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

} // namespace

void RunConfig::validate() const {
    try {
        (void)grid(); // checks evenness / minimum size / h > 0
        params.validate();
        stepper.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    static const char* presets[] = {"zero", "conduction", "shear", "manufactured", "file"};
    if (std::find_if(std::begin(presets), std::end(presets),
                     [&](const char* p) { return preset == p; }) == std::end(presets))
        throw ConfigError("config: unknown preset '" + preset + "'");
    if (preset == "file" && ic_file.empty())
        throw ConfigError("config: preset = file requires ic_file");
    if (sample_every < 1) throw ConfigError("config: sample_every must be >= 1");
    if (snapshot_every < 0) throw ConfigError("config: snapshot_every must be >= 0");
    if (perturb_magnitude < 0.0)
        throw ConfigError("config: perturb_magnitude must be nonnegative");
    if (envelope_multiplier <= 0.0)
        throw ConfigError("config: envelope_multiplier must be positive");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (epsilons[i] > epsilons[i - 1])
            throw ConfigError("config: epsilons must be nonincreasing");
    for (double e : epsilons)
        if (e < 0.0) throw ConfigError("config: epsilons must be nonnegative");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "nx") c.nx = static_cast<int>(parse_long(key, val));
        else if (key == "ny") c.ny = static_cast<int>(parse_long(key, val));
        else if (key == "nz") c.nz = static_cast<int>(parse_long(key, val));
        else if (key == "h") c.params.h = parse_double(key, val);
        else if (key == "R1") c.params.R1 = parse_double(key, val);
        else if (key == "R2") c.params.R2 = parse_double(key, val);
        else if (key == "R3") c.params.R3 = parse_double(key, val);
        else if (key == "f0") c.params.f0 = parse_double(key, val);
        else if (key == "epsilon") c.params.epsilon = parse_double(key, val);
        else if (key == "preset") c.preset = val;
        else if (key == "ic_file") c.ic_file = val;
        else if (key == "ic_amplitude") c.ic_amplitude = parse_double(key, val);
        else if (key == "scheme") {
            try {
                c.stepper.scheme = scheme_from_string(val);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        } else if (key == "dt") c.stepper.dt = parse_double(key, val);
        else if (key == "cfl_safety") c.stepper.cfl_safety = parse_double(key, val);
        else if (key == "dt_max") c.stepper.dt_max = parse_double(key, val);
        else if (key == "t_end") c.stepper.t_end = parse_double(key, val);
        else if (key == "sample_every") c.sample_every = static_cast<int>(parse_long(key, val));
        else if (key == "snapshot_every") c.snapshot_every = static_cast<int>(parse_long(key, val));
        else if (key == "out_dir") c.out_dir = val;
        else if (key == "epsilons") c.epsilons = parse_list(key, val);
        else if (key == "perturb_magnitude") c.perturb_magnitude = parse_double(key, val);
        else if (key == "envelope_multiplier") c.envelope_multiplier = parse_double(key, val);
        else if (key == "seed") c.seed = static_cast<unsigned long>(parse_long(key, val));
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace hydrostat
