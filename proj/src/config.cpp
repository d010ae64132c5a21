#include "agdn/config.hpp"

#include <set>
#include <string>

namespace agdn {

using nlohmann::json;

namespace {

void require_object(const json& j, std::string_view what, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
    const std::set<std::string_view> keys(allowed);
    for (const auto& [k, _] : j.items()) {
        if (!keys.contains(k)) throw ConfigError("unknown key '" + k + "' in " + std::string(what));
    }
}

template <class T>
T get(const json& j, const char* key, std::string_view what) {
    if (!j.contains(key)) throw ConfigError(std::string(what) + " is missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(what) + ": '" + key + "' has the wrong type");
    }
}

template <class T>
void get_opt(const json& j, const char* key, std::string_view what, T& out) {
    if (j.contains(key)) out = get<T>(j, key, what);
}

std::pair<double, double> pair_of(const json& j, std::string_view what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(std::string(what) + " entries must be [number, number]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class F>
auto wrap(F&& f) {
    try {
        return f();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

json to_json(const ScenarioPolicy& p) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::Fixed>) {
                return {{"type", "fixed"}, {"mu", v.mu}, {"sigma", v.sigma}};
            } else if constexpr (std::is_same_v<T, policy::IidUniformBox>) {
                return {{"type", "iid_uniform_box"}};
            } else if constexpr (std::is_same_v<T, policy::TwoPointSwitch>) {
                return {{"type", "two_point_switch"}, {"p", v.p}};
            } else if constexpr (std::is_same_v<T, policy::BlockSwitch>) {
                return {{"type", "block_switch"}, {"block_len", v.block_len}};
            } else {
                json schedule = json::array();
                for (const auto& e : v.schedule) schedule.push_back({e.mu, e.sigma});
                return {{"type", "custom"}, {"schedule", schedule}};
            }
        },
        p);
}

ScenarioPolicy policy_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("policy must be a JSON object");
    const auto type = get<std::string>(j, "type", "policy");
    if (type == "fixed") {
        require_object(j, "policy", {"type", "mu", "sigma"});
        return policy::Fixed{get<double>(j, "mu", "policy"), get<double>(j, "sigma", "policy")};
    }
    if (type == "iid_uniform_box") {
        require_object(j, "policy", {"type"});
        return policy::IidUniformBox{};
    }
    if (type == "two_point_switch") {
        require_object(j, "policy", {"type", "p"});
        policy::TwoPointSwitch p;
        get_opt(j, "p", "policy", p.p);
        return p;
    }
    if (type == "block_switch") {
        require_object(j, "policy", {"type", "block_len"});
        policy::BlockSwitch p;
        get_opt(j, "block_len", "policy", p.block_len);
        return p;
    }
    if (type == "custom") {
        require_object(j, "policy", {"type", "schedule"});
        const auto& s = j.contains("schedule") ? j.at("schedule") : throw ConfigError("custom policy needs 'schedule'");
        if (!s.is_array()) throw ConfigError("custom schedule must be an array");
        policy::Custom p;
        p.schedule.reserve(s.size());
        for (const auto& e : s) {
            const auto [mu, sigma] = pair_of(e, "custom schedule");
            p.schedule.push_back({mu, sigma});
        }
        return p;
    }
    throw ConfigError("unknown policy type '" + type + "'");
}

json to_json(const NoiseModel& n) {
    return {{"mu_lo", n.mean.lo()}, {"mu_hi", n.mean.hi()}, {"sigma_lo", n.sigma.lo()}, {"sigma_hi", n.sigma.hi()}};
}

NoiseModel noise_from_json(const json& j) {
    require_object(j, "noise", {"mu_lo", "mu_hi", "sigma_lo", "sigma_hi"});
    return wrap([&] {
        return NoiseModel{UncertaintyInterval(get<double>(j, "mu_lo", "noise"), get<double>(j, "mu_hi", "noise")),
                          SigmaBox(get<double>(j, "sigma_lo", "noise"), get<double>(j, "sigma_hi", "noise"))};
    });
}

json to_json(const ExperimentConfig& cfg) {
    json detector = std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, detector_choice::Optimal>) {
                return "optimal";
            } else if constexpr (std::is_same_v<T, detector_choice::MinDistance>) {
                return "min_distance";
            } else {
                return {{"threshold", d.threshold}};
            }
        },
        cfg.detector);

    json gains = "rayleigh";
    if (cfg.gains) {
        gains = json::array();
        for (const auto& h : *cfg.gains) gains.push_back({h.real(), h.imag()});
    }

    return {
        {"constellation", {{"x_a", cfg.constellation.x_a()}, {"x_b", cfg.constellation.x_b()}}},
        {"noise", to_json(cfg.noise)},
        {"policy", to_json(cfg.policy)},
        {"detector", detector},
        {"trials", cfg.trials},
        {"seed", cfg.seed.value},
        {"snr_db", cfg.snr_db},
        {"window", cfg.window},
        {"sweep_mode", cfg.sweep_mode == SweepMode::ScaleDistance ? "scale_distance" : "scale_sigma"},
        {"simulate", cfg.simulate},
        {"independent_components", cfg.independent_components},
        {"gains", gains},
    };
}

ExperimentConfig config_from_json(const json& j) {
    require_object(j, "config",
                   {"constellation", "noise", "policy", "detector", "trials", "seed", "snr_db", "window", "sweep_mode",
                    "simulate", "threads", "independent_components", "gains"});
    ExperimentConfig cfg;
    if (j.contains("constellation")) {
        const auto& c = j.at("constellation");
        require_object(c, "constellation", {"x_a", "x_b"});
        cfg.constellation = wrap(
            [&] { return Constellation(get<double>(c, "x_a", "constellation"), get<double>(c, "x_b", "constellation")); });
    }
    if (j.contains("noise")) cfg.noise = noise_from_json(j.at("noise"));
    if (j.contains("policy")) cfg.policy = policy_from_json(j.at("policy"));
    if (j.contains("detector")) {
        const auto& d = j.at("detector");
        if (d == "optimal") {
            cfg.detector = detector_choice::Optimal{};
        } else if (d == "min_distance") {
            cfg.detector = detector_choice::MinDistance{};
        } else if (d.is_object()) {
            require_object(d, "detector", {"threshold"});
            cfg.detector = detector_choice::Custom{get<double>(d, "threshold", "detector")};
        } else {
            throw ConfigError("detector must be \"optimal\", \"min_distance\" or {\"threshold\": t}");
        }
    }
    get_opt(j, "trials", "config", cfg.trials);
    get_opt(j, "seed", "config", cfg.seed.value);
    get_opt(j, "snr_db", "config", cfg.snr_db);
    get_opt(j, "window", "config", cfg.window);
    if (j.contains("sweep_mode")) {
        const auto mode = get<std::string>(j, "sweep_mode", "config");
        if (mode == "scale_distance") {
            cfg.sweep_mode = SweepMode::ScaleDistance;
        } else if (mode == "scale_sigma") {
            cfg.sweep_mode = SweepMode::ScaleSigma;
        } else {
            throw ConfigError("sweep_mode must be \"scale_distance\" or \"scale_sigma\"");
        }
    }
    get_opt(j, "simulate", "config", cfg.simulate);
    get_opt(j, "threads", "config", cfg.threads);
    get_opt(j, "independent_components", "config", cfg.independent_components);
    if (j.contains("gains")) {
        const auto& g = j.at("gains");
        if (g == "rayleigh") {
            cfg.gains.reset();
        } else if (g.is_array()) {
            std::vector<std::complex<double>> gains;
            for (const auto& e : g) {
                const auto [re, im] = pair_of(e, "gains");
                gains.emplace_back(re, im);
            }
            cfg.gains = std::move(gains);
        } else {
            throw ConfigError("gains must be \"rayleigh\" or a list of [re, im]");
        }
    }
    return cfg;
}

std::uint64_t fnv1a_64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) { return fnv1a_64(to_json(cfg).dump()); }

}  // namespace agdn
