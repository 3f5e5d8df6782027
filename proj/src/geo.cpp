#include "triage/geo.hpp"

#include <cmath>
#include <string_view>
#include <unordered_map>

namespace triage {

namespace {

constexpr double kEarthRadiusMiles = 3958.8;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

}  // namespace

double haversine_miles(const GeoPoint& a, const GeoPoint& b) {
    const double lat1 = a.latitude * kDegToRad;
    const double lat2 = b.latitude * kDegToRad;
    const double dlat = (b.latitude - a.latitude) * kDegToRad;
    const double dlon = (b.longitude - a.longitude) * kDegToRad;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(std::min(1.0, h)));
}

std::optional<GeoPoint> lookup_city(std::string_view city) {
    static const std::unordered_map<std::string_view, GeoPoint> gazetteer = {
        {"London", {51.5074, -0.1278}},
        {"New York", {40.7128, -74.0060}},
        {"Paris", {48.8566, 2.3522}},
        {"Tokyo", {35.6762, 139.6503}},
        {"Sydney", {-33.8688, 151.2093}},
        {"San Francisco", {37.7749, -122.4194}},
        {"Chicago", {41.8781, -87.6298}},
        {"Berlin", {52.5200, 13.4050}},
        {"Madrid", {40.4168, -3.7038}},
        {"Toronto", {43.6532, -79.3832}},
        {"Seattle", {47.6062, -122.3321}},
        {"Boston", {42.3601, -71.0589}},
        {"Dublin", {53.3498, -6.2603}},
        {"Amsterdam", {52.3676, 4.9041}},
        {"Manchester", {53.4808, -2.2426}},
        {"Singapore", {1.3521, 103.8198}},
        {"Mumbai", {19.0760, 72.8777}},
        {"Sao Paulo", {-23.5505, -46.6333}},
        {"Denver", {39.7392, -104.9903}},
        {"Atlanta", {33.7490, -84.3880}},
    };
    auto it = gazetteer.find(city);
    if (it == gazetteer.end()) return std::nullopt;
    return it->second;
}

}  // namespace triage
