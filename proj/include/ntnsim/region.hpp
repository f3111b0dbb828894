#ifndef NTNSIM_REGION_HPP
#define NTNSIM_REGION_HPP

// Land-region geometry: polygon set with point-in-polygon containment.
// Regions load from GeoJSON (Polygon / MultiPolygon, lon-lat vertex order).

#include <filesystem>
#include <string>
#include <vector>

#include "ntnsim/geo.hpp"

namespace ntnsim {

struct BoundingBox {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;
};

class RegionModel {
  public:
    // Rings are vertex lists without the closing duplicate; each needs >= 3
    // vertices. Throws std::invalid_argument on degenerate input.
    explicit RegionModel(std::vector<std::vector<GeoPoint>> rings);

    // Parses a GeoJSON document (Feature, FeatureCollection, Polygon or
    // MultiPolygon). Outer rings only; holes are ignored at this resolution.
    static RegionModel from_geojson(const std::string& text);
    static RegionModel from_geojson_file(const std::filesystem::path& path);

    // Even-odd ray cast over all rings, planar in (lon, lat).
    bool contains(const GeoPoint& p) const;

    const BoundingBox& bbox() const { return bbox_; }
    const std::vector<std::vector<GeoPoint>>& rings() const { return rings_; }

  private:
    std::vector<std::vector<GeoPoint>> rings_;
    BoundingBox bbox_;
};

}  // namespace ntnsim

#endif  // NTNSIM_REGION_HPP
