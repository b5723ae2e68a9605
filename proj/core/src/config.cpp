#include "rfswarm/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace rfswarm {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"scenario", {"name"}},
        {"grid", {"kind", "width_m", "height_m", "spacing_m", "path_nodes"}},
        {"robots", {"count", "placement", "initial_nodes"}},
        {"targets", {"positions"}},
        {"run", {"horizon", "seed", "runs"}},
        {"sensor", {"detection_probability", "fov_radius_m", "noise_variance", "noise", "observation"}},
        {"filter",
         {"survival_probability", "transition", "process_noise_variance", "process_noise",
          "extract_threshold", "replicate_by_rounded_weight"}},
        {"birth", {"weights", "bearings_deg", "bearings_rad", "covariance_variance", "radius_fraction"}},
        {"spawn", {"enabled", "weights", "offsets", "noise_variance"}},
        {"clutter", {"intensity_per_m2"}},
        {"prune", {"truncation_threshold", "merge_threshold", "max_components"}},
        {"exchange", {"dedup_radius_m", "discard_measurements_outside_fov"}},
        {"metrics", {"match_radius_m"}},
        {"output", {"intensity_resolution_m", "intensity_margin_m"}},
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {
        for (const auto& [section, body] : tree) {
            const auto it = known_keys().find(section);
            if (it == known_keys().end()) throw ConfigParseError(section, "unknown section");
            if (body.empty() && !body.data().empty()) {
                throw ConfigParseError(section, "key outside of any section");
            }
            for (const auto& [key, value] : body) {
                if (!it->second.contains(key)) throw ConfigParseError(section + "." + key, "unknown key");
            }
        }
    }

    std::optional<std::string> text(const std::string& path) const {
        if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
        return std::nullopt;
    }

    template <typename T>
    void get(const std::string& path, T& out) const {
        auto v = text(path);
        if (!v) return;
        out = parse<T>(path, *v);
    }

    std::vector<double> numbers(const std::string& path, const std::string& raw) const {
        std::vector<double> out;
        std::string cleaned = raw;
        for (char& c : cleaned) {
            if (c == ',' || c == ';') c = ' ';
        }
        std::istringstream in(cleaned);
        std::string token;
        while (in >> token) out.push_back(parse<double>(path, token));
        return out;
    }

    /// "x y; x y; ..." into points.
    std::vector<Vec2> points(const std::string& path, const std::string& raw) const {
        std::vector<Vec2> out;
        std::istringstream in(raw);
        std::string chunk;
        while (std::getline(in, chunk, ';')) {
            if (trim(chunk).empty()) continue;
            const auto xy = numbers(path, chunk);
            if (xy.size() != 2) throw ConfigParseError(path, "expected 'x y' pairs separated by ';'");
            out.emplace_back(xy[0], xy[1]);
        }
        return out;
    }

    /// Four numbers, row-major.
    Mat2 matrix(const std::string& path, const std::string& raw) const {
        const auto v = numbers(path, raw);
        if (v.size() != 4) throw ConfigParseError(path, "expected 4 numbers (row-major 2x2)");
        Mat2 m;
        m << v[0], v[1], v[2], v[3];
        return m;
    }

    template <typename T>
    static T parse(const std::string& path, const std::string& raw) {
        if constexpr (std::is_same_v<T, bool>) {
            if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
            if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
            throw ConfigParseError(path, "expected a boolean, got '" + raw + "'");
        } else if constexpr (std::is_same_v<T, std::string>) {
            return raw;
        } else {
            std::istringstream in(raw);
            T value{};
            in >> value;
            if (in.fail() || !in.eof()) {
                throw ConfigParseError(path, "cannot parse '" + raw + "'");
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (!raw.empty() && raw.front() == '-') throw ConfigError(path, "must be nonnegative");
            }
            return value;
        }
    }

private:
    static std::string trim(const std::string& s) {
        const auto first = s.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) return {};
        const auto last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

    const pt::ptree& tree_;
};

ConfigFile from_tree(const pt::ptree& tree) {
    const Reader r(tree);
    ConfigFile file;
    ScenarioConfig& cfg = file.scenario;
    SwarmModels& m = cfg.models;

    r.get("scenario.name", cfg.name);

    if (auto kind = r.text("grid.kind")) {
        if (*kind == "lattice") cfg.grid.kind = GridSpec::Kind::lattice;
        else if (*kind == "path") cfg.grid.kind = GridSpec::Kind::path;
        else throw ConfigParseError("grid.kind", "expected 'lattice' or 'path'");
    }
    r.get("grid.width_m", cfg.grid.width_m);
    r.get("grid.height_m", cfg.grid.height_m);
    r.get("grid.spacing_m", cfg.grid.spacing_m);
    r.get("grid.path_nodes", cfg.grid.path_nodes);

    r.get("robots.count", cfg.robot_count);
    if (auto placement = r.text("robots.placement")) {
        if (*placement == "uniform") cfg.placement = Placement::uniform;
        else if (*placement == "fixed") cfg.placement = Placement::fixed;
        else throw ConfigParseError("robots.placement", "expected 'uniform' or 'fixed'");
    }
    if (auto nodes = r.text("robots.initial_nodes")) {
        cfg.initial_nodes.clear();
        for (double v : r.numbers("robots.initial_nodes", *nodes)) {
            if (v < 0 || v != std::floor(v)) throw ConfigError("robots.initial_nodes", "expected node ids");
            cfg.initial_nodes.push_back(static_cast<NodeId>(v));
        }
    }

    if (auto positions = r.text("targets.positions")) cfg.targets = r.points("targets.positions", *positions);

    r.get("run.horizon", cfg.horizon);
    r.get("run.seed", cfg.seed);
    r.get("run.runs", file.runs);

    r.get("sensor.detection_probability", m.sensor.detection_probability);
    r.get("sensor.fov_radius_m", m.sensor.fov_radius_m);
    if (auto v = r.text("sensor.noise_variance")) {
        m.sensor.noise = Reader::parse<double>("sensor.noise_variance", *v) * Mat2::Identity();
    }
    if (auto v = r.text("sensor.noise")) m.sensor.noise = r.matrix("sensor.noise", *v);
    if (auto v = r.text("sensor.observation")) m.sensor.observation = r.matrix("sensor.observation", *v);

    r.get("filter.survival_probability", m.motion.survival_probability);
    if (auto v = r.text("filter.transition")) m.motion.transition = r.matrix("filter.transition", *v);
    if (auto v = r.text("filter.process_noise_variance")) {
        m.motion.process_noise =
            Reader::parse<double>("filter.process_noise_variance", *v) * Mat2::Identity();
    }
    if (auto v = r.text("filter.process_noise")) m.motion.process_noise = r.matrix("filter.process_noise", *v);
    r.get("filter.extract_threshold", m.extract.threshold);
    r.get("filter.replicate_by_rounded_weight", m.extract.replicate_by_rounded_weight);

    if (auto v = r.text("birth.weights")) m.birth.weights = r.numbers("birth.weights", *v);
    if (auto v = r.text("birth.bearings_deg")) {
        m.birth.bearings_rad = r.numbers("birth.bearings_deg", *v);
        for (double& b : m.birth.bearings_rad) b *= std::numbers::pi / 180.0;
    }
    if (auto v = r.text("birth.bearings_rad")) m.birth.bearings_rad = r.numbers("birth.bearings_rad", *v);
    double birth_variance = m.birth.covariances.empty() ? 0.5 : m.birth.covariances.front()(0, 0);
    r.get("birth.covariance_variance", birth_variance);
    m.birth.covariances.assign(m.birth.weights.size(), birth_variance * Mat2::Identity());
    r.get("birth.radius_fraction", m.birth.radius_fraction);

    r.get("spawn.enabled", m.spawn.enabled);
    if (auto v = r.text("spawn.weights")) {
        const auto weights = r.numbers("spawn.weights", *v);
        std::vector<Vec2> offsets(weights.size(), Vec2::Zero());
        if (auto o = r.text("spawn.offsets")) offsets = r.points("spawn.offsets", *o);
        if (offsets.size() != weights.size()) {
            throw ConfigError("spawn.offsets", "needs one offset per spawn weight");
        }
        double variance = 1.0;
        r.get("spawn.noise_variance", variance);
        m.spawn.terms.clear();
        for (std::size_t i = 0; i < weights.size(); ++i) {
            m.spawn.terms.push_back({weights[i], Mat2::Identity(), offsets[i], variance * Mat2::Identity()});
        }
    }

    r.get("clutter.intensity_per_m2", m.clutter.intensity_per_m2);

    r.get("prune.truncation_threshold", m.prune.truncation_threshold);
    r.get("prune.merge_threshold", m.prune.merge_threshold);
    r.get("prune.max_components", m.prune.max_components);

    r.get("exchange.dedup_radius_m", m.dedup_radius_m);
    r.get("exchange.discard_measurements_outside_fov", m.discard_measurements_outside_fov);
    r.get("metrics.match_radius_m", cfg.match_radius_m);

    r.get("output.intensity_resolution_m", file.intensity_resolution_m);
    r.get("output.intensity_margin_m", file.intensity_margin_m);

    // One FoV radius drives the sensor, the clutter disc and the birth ring.
    m.birth.fov_radius_m = m.sensor.fov_radius_m;
    m.clutter.fov_radius_m = m.sensor.fov_radius_m;
    m.bind_clutter_to_sensor();

    if (!(file.intensity_resolution_m > 0.0)) {
        throw ConfigError("output.intensity_resolution_m", "must be positive");
    }
    if (file.runs < 1) throw ConfigError("run.runs", "must be at least 1");
    cfg.validate();
    return file;
}

}  // namespace

ConfigFile parse_config_text(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigParseError("config", "line " + std::to_string(e.line()) + ": " + e.message());
    }
    try {
        return from_tree(tree);
    } catch (const pt::ptree_error& e) {
        throw ConfigParseError("config", e.what());
    }
}

ConfigFile parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigFileMissing(path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace rfswarm
