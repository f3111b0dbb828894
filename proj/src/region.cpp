#include "ntnsim/region.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ntnsim {

namespace {

std::vector<GeoPoint> parse_ring(const nlohmann::json& ring) {
    if (!ring.is_array() || ring.size() < 4) {
        throw std::invalid_argument("region: polygon ring needs at least 4 positions");
    }
    std::vector<GeoPoint> out;
    out.reserve(ring.size());
    for (const auto& pos : ring) {
        if (!pos.is_array() || pos.size() < 2) {
            throw std::invalid_argument("region: ring position must be [lon, lat]");
        }
        // GeoJSON order is lon, lat.
        out.push_back({pos[1].get<double>(), pos[0].get<double>()});
    }
    const GeoPoint& first = out.front();
    const GeoPoint& last = out.back();
    if (first.lat_deg != last.lat_deg || first.lon_deg != last.lon_deg) {
        throw std::invalid_argument("region: polygon ring is not closed");
    }
    out.pop_back();
    return out;
}

void collect_polygon(const nlohmann::json& coords, std::vector<std::vector<GeoPoint>>& rings) {
    if (!coords.is_array() || coords.empty()) {
        throw std::invalid_argument("region: Polygon has no rings");
    }
    // First ring is the outer boundary; interior rings (holes) ignored.
    rings.push_back(parse_ring(coords[0]));
}

void collect_geometry(const nlohmann::json& geom, std::vector<std::vector<GeoPoint>>& rings) {
    const std::string type = geom.at("type").get<std::string>();
    if (type == "Polygon") {
        collect_polygon(geom.at("coordinates"), rings);
    } else if (type == "MultiPolygon") {
        for (const auto& poly : geom.at("coordinates")) {
            collect_polygon(poly, rings);
        }
    } else if (type == "Feature") {
        collect_geometry(geom.at("geometry"), rings);
    } else if (type == "FeatureCollection") {
        for (const auto& f : geom.at("features")) {
            collect_geometry(f, rings);
        }
    } else {
        throw std::invalid_argument("region: unsupported GeoJSON type '" + type + "'");
    }
}

}  // namespace

RegionModel::RegionModel(std::vector<std::vector<GeoPoint>> rings) : rings_(std::move(rings)) {
    if (rings_.empty()) {
        throw std::invalid_argument("region: needs at least one polygon");
    }
    bool first = true;
    for (const auto& ring : rings_) {
        if (ring.size() < 3) {
            throw std::invalid_argument("region: polygon ring needs at least 3 vertices");
        }
        for (const auto& p : ring) {
            if (first) {
                bbox_ = {p.lat_deg, p.lat_deg, p.lon_deg, p.lon_deg};
                first = false;
            } else {
                bbox_.lat_min = std::min(bbox_.lat_min, p.lat_deg);
                bbox_.lat_max = std::max(bbox_.lat_max, p.lat_deg);
                bbox_.lon_min = std::min(bbox_.lon_min, p.lon_deg);
                bbox_.lon_max = std::max(bbox_.lon_max, p.lon_deg);
            }
        }
    }
}

RegionModel RegionModel::from_geojson(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("region: GeoJSON parse error: ") + e.what());
    }
    std::vector<std::vector<GeoPoint>> rings;
    collect_geometry(doc, rings);
    return RegionModel(std::move(rings));
}

RegionModel RegionModel::from_geojson_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("region: cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_geojson(buf.str());
}

bool RegionModel::contains(const GeoPoint& p) const {
    if (p.lat_deg < bbox_.lat_min || p.lat_deg > bbox_.lat_max || p.lon_deg < bbox_.lon_min ||
        p.lon_deg > bbox_.lon_max) {
        return false;
    }
    bool inside = false;
    for (const auto& ring : rings_) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const double xi = ring[i].lon_deg, yi = ring[i].lat_deg;
            const double xj = ring[j].lon_deg, yj = ring[j].lat_deg;
            const bool crosses = (yi > p.lat_deg) != (yj > p.lat_deg);
            if (crosses &&
                p.lon_deg < (xj - xi) * (p.lat_deg - yi) / (yj - yi) + xi) {
                inside = !inside;
            }
        }
    }
    return inside;
}

}  // namespace ntnsim
