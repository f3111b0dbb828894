#include "ntnsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ntnsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
        }
    }
}

template <typename T>
T get_field(const json& obj, const std::string& key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + (path.empty() ? key : path + "." + key) +
                          "' has the wrong type");
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void parse_radio(const json& obj, ChannelParams& radio) {
    reject_unknown_keys(obj, {"carrier_ghz", "bandwidth_hz", "tx_power_dbm", "tx_gain_dbi",
                              "rx_gain_dbi", "noise_figure_db", "system_temp_k",
                              "sidelobe_atten_db", "rain_loss_db", "cloud_loss_db",
                              "vapor_loss_db", "min_elevation_deg", "slant_range_mode"},
                        "radio");
    radio.carrier_ghz = get_field(obj, "carrier_ghz", "radio", radio.carrier_ghz);
    radio.bandwidth_hz = get_field(obj, "bandwidth_hz", "radio", radio.bandwidth_hz);
    radio.tx_power_dbm = get_field(obj, "tx_power_dbm", "radio", radio.tx_power_dbm);
    radio.tx_gain_dbi = get_field(obj, "tx_gain_dbi", "radio", radio.tx_gain_dbi);
    radio.rx_gain_dbi = get_field(obj, "rx_gain_dbi", "radio", radio.rx_gain_dbi);
    radio.noise_figure_db = get_field(obj, "noise_figure_db", "radio", radio.noise_figure_db);
    radio.system_temp_k = get_field(obj, "system_temp_k", "radio", radio.system_temp_k);
    radio.sidelobe_atten_db =
        get_field(obj, "sidelobe_atten_db", "radio", radio.sidelobe_atten_db);
    radio.rain_loss_db = get_field(obj, "rain_loss_db", "radio", radio.rain_loss_db);
    radio.cloud_loss_db = get_field(obj, "cloud_loss_db", "radio", radio.cloud_loss_db);
    radio.vapor_loss_db = get_field(obj, "vapor_loss_db", "radio", radio.vapor_loss_db);
    radio.min_elevation_deg =
        get_field(obj, "min_elevation_deg", "radio", radio.min_elevation_deg);
    const std::string mode =
        get_field<std::string>(obj, "slant_range_mode", "radio",
                               radio.slant_mode == SlantRangeMode::Geometric ? "geometric"
                                                                             : "surface");
    if (mode == "geometric") {
        radio.slant_mode = SlantRangeMode::Geometric;
    } else if (mode == "surface") {
        radio.slant_mode = SlantRangeMode::SurfaceHaversine;
    } else {
        throw ConfigError("field 'radio.slant_range_mode' must be 'geometric' or 'surface'");
    }

    require(radio.carrier_ghz > 0, "field 'radio.carrier_ghz' must be > 0");
    require(radio.bandwidth_hz > 0, "field 'radio.bandwidth_hz' must be > 0");
    require(radio.system_temp_k > 0, "field 'radio.system_temp_k' must be > 0");
    require(radio.sidelobe_atten_db >= 0, "field 'radio.sidelobe_atten_db' must be >= 0");
    require(radio.rain_loss_db >= 0 && radio.cloud_loss_db >= 0 && radio.vapor_loss_db >= 0,
            "field 'radio.*_loss_db' values must be >= 0");
    require(radio.min_elevation_deg >= 0 && radio.min_elevation_deg <= 90,
            "field 'radio.min_elevation_deg' must be in [0, 90]");
}

void parse_layer(const json& obj, const std::string& path, LayerConfig& layer) {
    reject_unknown_keys(obj, {"planes", "sats_per_plane", "altitude_km", "inclination_deg",
                              "longitude_offset_deg"},
                        path);
    layer.planes = get_field(obj, "planes", path, layer.planes);
    layer.sats_per_plane = get_field(obj, "sats_per_plane", path, layer.sats_per_plane);
    layer.altitude_km = get_field(obj, "altitude_km", path, layer.altitude_km);
    layer.inclination_deg = get_field(obj, "inclination_deg", path, layer.inclination_deg);
    layer.longitude_offset_deg =
        get_field(obj, "longitude_offset_deg", path, layer.longitude_offset_deg);

    require(layer.planes >= 1, "field '" + path + ".planes' must be >= 1");
    require(layer.sats_per_plane >= 1, "field '" + path + ".sats_per_plane' must be >= 1");
    require(layer.altitude_km > 0, "field '" + path + ".altitude_km' must be > 0");
    require(layer.inclination_deg >= 0 && layer.inclination_deg <= 180,
            "field '" + path + ".inclination_deg' must be in [0, 180]");
}

void parse_range(const json& obj, const std::string& path, IntRange& range) {
    reject_unknown_keys(obj, {"min", "max"}, path);
    range.lo = get_field(obj, "min", path, range.lo);
    range.hi = get_field(obj, "max", path, range.hi);
    require(range.lo >= 1 && range.hi <= 50 && range.lo <= range.hi,
            "field '" + path + "' must satisfy 1 <= min <= max <= 50");
}

}  // namespace

Constellation ScenarioConfig::make_constellation(const DesignPoint& d) const {
    Constellation c;
    LayerConfig l = leo;
    l.planes = d.leo_planes;
    l.sats_per_plane = d.leo_sats;
    LayerConfig m = meo;
    m.planes = d.meo_planes;
    m.sats_per_plane = d.meo_sats;
    c.layers = {l, m, geo};
    return c;
}

AssociationConfig ScenarioConfig::association() const {
    AssociationConfig a;
    a.max_beams_per_sat = beams_per_satellite;
    a.max_users_per_beam = users_per_beam;
    a.channel = radio;
    a.bandwidth_policy = bandwidth_policy;
    return a;
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    reject_unknown_keys(doc, {"users", "steps", "step_seconds", "realizations", "seed", "omega",
                              "rate_ref_bps", "threads", "radio", "capacity", "layers",
                              "mobility", "region_file", "bandwidth_policy", "coverage_reset",
                              "search_space", "optimizer"},
                        "");

    ScenarioConfig cfg;
    cfg.users = get_field(doc, "users", "", cfg.users);
    cfg.steps = get_field(doc, "steps", "", cfg.steps);
    cfg.step_seconds = get_field(doc, "step_seconds", "", cfg.step_seconds);
    cfg.realizations = get_field(doc, "realizations", "", cfg.realizations);
    cfg.seed = get_field(doc, "seed", "", cfg.seed);
    cfg.omega = get_field(doc, "omega", "", cfg.omega);
    cfg.rate_ref_bps = get_field(doc, "rate_ref_bps", "", cfg.rate_ref_bps);
    cfg.threads = get_field(doc, "threads", "", cfg.threads);

    require(cfg.users >= 1, "field 'users' must be >= 1");
    require(cfg.steps >= 1, "field 'steps' must be >= 1");
    require(cfg.step_seconds > 0, "field 'step_seconds' must be > 0");
    require(cfg.realizations >= 1, "field 'realizations' must be >= 1");
    require(cfg.omega >= 0 && cfg.omega <= 1, "field 'omega' must be in [0, 1]");
    require(cfg.rate_ref_bps > 0, "field 'rate_ref_bps' must be > 0");
    require(cfg.threads >= 0, "field 'threads' must be >= 0");

    if (doc.contains("radio")) parse_radio(doc.at("radio"), cfg.radio);

    if (doc.contains("capacity")) {
        const json& cap = doc.at("capacity");
        reject_unknown_keys(cap, {"beams_per_satellite", "users_per_beam"}, "capacity");
        cfg.beams_per_satellite =
            get_field(cap, "beams_per_satellite", "capacity", cfg.beams_per_satellite);
        cfg.users_per_beam = get_field(cap, "users_per_beam", "capacity", cfg.users_per_beam);
        require(cfg.beams_per_satellite >= 1, "field 'capacity.beams_per_satellite' must be >= 1");
        require(cfg.users_per_beam >= 1, "field 'capacity.users_per_beam' must be >= 1");
    }

    if (doc.contains("layers")) {
        const json& layers = doc.at("layers");
        reject_unknown_keys(layers, {"leo", "meo", "geo"}, "layers");
        if (layers.contains("leo")) parse_layer(layers.at("leo"), "layers.leo", cfg.leo);
        if (layers.contains("meo")) parse_layer(layers.at("meo"), "layers.meo", cfg.meo);
        if (layers.contains("geo")) parse_layer(layers.at("geo"), "layers.geo", cfg.geo);
    }

    if (doc.contains("mobility")) {
        const json& mob = doc.at("mobility");
        reject_unknown_keys(mob, {"v_max_deg", "sigma_a_deg", "sigma_eta_deg", "v_clamp_deg"},
                            "mobility");
        cfg.mobility.v_max_deg = get_field(mob, "v_max_deg", "mobility", cfg.mobility.v_max_deg);
        cfg.mobility.sigma_a_deg =
            get_field(mob, "sigma_a_deg", "mobility", cfg.mobility.sigma_a_deg);
        cfg.mobility.sigma_eta_deg =
            get_field(mob, "sigma_eta_deg", "mobility", cfg.mobility.sigma_eta_deg);
        cfg.mobility.v_clamp_deg =
            get_field(mob, "v_clamp_deg", "mobility", cfg.mobility.v_clamp_deg);
        require(cfg.mobility.v_max_deg >= 0, "field 'mobility.v_max_deg' must be >= 0");
        require(cfg.mobility.sigma_a_deg >= 0, "field 'mobility.sigma_a_deg' must be >= 0");
        require(cfg.mobility.sigma_eta_deg >= 0, "field 'mobility.sigma_eta_deg' must be >= 0");
        require(cfg.mobility.v_clamp_deg > 0, "field 'mobility.v_clamp_deg' must be > 0");
    }

    cfg.region_file = get_field<std::string>(doc, "region_file", "", cfg.region_file);

    const std::string policy = get_field<std::string>(doc, "bandwidth_policy", "", "full");
    if (policy == "full") {
        cfg.bandwidth_policy = BandwidthPolicy::FullReuse;
    } else if (policy == "split") {
        cfg.bandwidth_policy = BandwidthPolicy::EqualSplit;
    } else {
        throw ConfigError("field 'bandwidth_policy' must be 'full' or 'split'");
    }

    const std::string reset = get_field<std::string>(doc, "coverage_reset", "", "per_step");
    if (reset == "per_step") {
        cfg.coverage_reset = CoverageReset::PerStep;
    } else if (reset == "persistent") {
        cfg.coverage_reset = CoverageReset::Persistent;
    } else {
        throw ConfigError("field 'coverage_reset' must be 'per_step' or 'persistent'");
    }

    if (doc.contains("search_space")) {
        const json& ss = doc.at("search_space");
        reject_unknown_keys(ss, {"leo_planes", "leo_sats", "meo_planes", "meo_sats"},
                            "search_space");
        if (ss.contains("leo_planes"))
            parse_range(ss.at("leo_planes"), "search_space.leo_planes", cfg.search_space.leo_planes);
        if (ss.contains("leo_sats"))
            parse_range(ss.at("leo_sats"), "search_space.leo_sats", cfg.search_space.leo_sats);
        if (ss.contains("meo_planes"))
            parse_range(ss.at("meo_planes"), "search_space.meo_planes", cfg.search_space.meo_planes);
        if (ss.contains("meo_sats"))
            parse_range(ss.at("meo_sats"), "search_space.meo_sats", cfg.search_space.meo_sats);
    }

    if (doc.contains("optimizer")) {
        const json& opt = doc.at("optimizer");
        reject_unknown_keys(opt, {"strategy", "budget", "n_init", "trial_realizations"},
                            "optimizer");
        const std::string strategy =
            get_field<std::string>(opt, "strategy", "optimizer",
                                   strategy_name(cfg.optimizer.strategy));
        try {
            cfg.optimizer.strategy = parse_strategy(strategy);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("field 'optimizer.strategy': ") + e.what());
        }
        cfg.optimizer.budget = get_field(opt, "budget", "optimizer", cfg.optimizer.budget);
        cfg.optimizer.n_init = get_field(opt, "n_init", "optimizer", cfg.optimizer.n_init);
        cfg.optimizer.trial_realizations =
            get_field(opt, "trial_realizations", "optimizer", cfg.optimizer.trial_realizations);
        require(cfg.optimizer.budget >= 1, "field 'optimizer.budget' must be >= 1");
        require(cfg.optimizer.n_init >= 1, "field 'optimizer.n_init' must be >= 1");
        require(cfg.optimizer.trial_realizations >= 1,
                "field 'optimizer.trial_realizations' must be >= 1");
    }

    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in '" + path.string() + "': " + e.what());
    }
    ScenarioConfig cfg = parse_config(doc);
    const std::filesystem::path region(cfg.region_file);
    if (region.is_relative()) {
        cfg.region_file = (path.parent_path() / region).string();
    }
    return cfg;
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json radio_j = {
        {"carrier_ghz", radio.carrier_ghz},
        {"bandwidth_hz", radio.bandwidth_hz},
        {"tx_power_dbm", radio.tx_power_dbm},
        {"tx_gain_dbi", radio.tx_gain_dbi},
        {"rx_gain_dbi", radio.rx_gain_dbi},
        {"noise_figure_db", radio.noise_figure_db},
        {"system_temp_k", radio.system_temp_k},
        {"sidelobe_atten_db", radio.sidelobe_atten_db},
        {"rain_loss_db", radio.rain_loss_db},
        {"cloud_loss_db", radio.cloud_loss_db},
        {"vapor_loss_db", radio.vapor_loss_db},
        {"min_elevation_deg", radio.min_elevation_deg},
        {"slant_range_mode",
         radio.slant_mode == SlantRangeMode::Geometric ? "geometric" : "surface"},
    };
    auto layer_j = [](const LayerConfig& l) {
        return nlohmann::json{{"planes", l.planes},
                              {"sats_per_plane", l.sats_per_plane},
                              {"altitude_km", l.altitude_km},
                              {"inclination_deg", l.inclination_deg},
                              {"longitude_offset_deg", l.longitude_offset_deg}};
    };
    auto range_j = [](const IntRange& r) {
        return nlohmann::json{{"min", r.lo}, {"max", r.hi}};
    };
    return nlohmann::json{
        {"users", users},
        {"steps", steps},
        {"step_seconds", step_seconds},
        {"realizations", realizations},
        {"seed", seed},
        {"omega", omega},
        {"rate_ref_bps", rate_ref_bps},
        {"threads", threads},
        {"radio", radio_j},
        {"capacity",
         {{"beams_per_satellite", beams_per_satellite}, {"users_per_beam", users_per_beam}}},
        {"layers", {{"leo", layer_j(leo)}, {"meo", layer_j(meo)}, {"geo", layer_j(geo)}}},
        {"mobility",
         {{"v_max_deg", mobility.v_max_deg},
          {"sigma_a_deg", mobility.sigma_a_deg},
          {"sigma_eta_deg", mobility.sigma_eta_deg},
          {"v_clamp_deg", mobility.v_clamp_deg}}},
        {"region_file", region_file},
        {"bandwidth_policy", bandwidth_policy == BandwidthPolicy::FullReuse ? "full" : "split"},
        {"coverage_reset", coverage_reset == CoverageReset::PerStep ? "per_step" : "persistent"},
        {"search_space",
         {{"leo_planes", range_j(search_space.leo_planes)},
          {"leo_sats", range_j(search_space.leo_sats)},
          {"meo_planes", range_j(search_space.meo_planes)},
          {"meo_sats", range_j(search_space.meo_sats)}}},
        {"optimizer",
         {{"strategy", strategy_name(optimizer.strategy)},
          {"budget", optimizer.budget},
          {"n_init", optimizer.n_init},
          {"trial_realizations", optimizer.trial_realizations}}},
    };
}

}  // namespace ntnsim
