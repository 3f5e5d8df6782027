#pragma once

#include <optional>
#include <string_view>

namespace triage {

struct GeoPoint {
    double latitude = 0.0;   // degrees, |lat| <= 90
    double longitude = 0.0;  // degrees, |lon| <= 180

    bool operator==(const GeoPoint& other) const = default;
};

// Great-circle distance, Earth radius 3958.8 mi.
double haversine_miles(const GeoPoint& a, const GeoPoint& b);

// Embedded gazetteer for fixture cities. Lookup is case-sensitive on the
// canonical city spelling used by the corpus generator.
std::optional<GeoPoint> lookup_city(std::string_view city);

}  // namespace triage
