#pragma once

#include "folded/curves.hpp"
#include "folded/surface.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace folded {

// Parses a surface document: {"vertices": [[x,y,z]...], "faces": [[i...]...],
// "boundary": [i...], "name": optional}. Throws std::runtime_error on parse
// failure.
RawSurface parse_surface_document(const std::string& text);

// Curve document: {"vertices": [[x,y,z]...], "closed": bool}.
PolyCurve parse_curve_document(const std::string& text);

// True when the document contains a "faces" field (surface) rather than a
// plain curve.
bool looks_like_surface(const std::string& text);

std::string serialize_surface_document(const RawSurface& s);
std::string serialize_curve_document(const PolyCurve& c);

// Deterministic JSON writer: doubles with seventeen significant digits.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& raw_value(const std::string& v);
    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<int> counts_{0};
    bool pendingKey_ = false;
};

std::string format_double(double v);

} // namespace folded
