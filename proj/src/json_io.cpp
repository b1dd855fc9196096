#include "folded/json_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <stdexcept>

namespace folded {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("invalid JSON document");
    return j;
}

Point3 point_from(const json& a) {
    if (!a.is_array() || a.size() != 3) throw std::runtime_error("vertex must be [x,y,z]");
    return Point3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

} // namespace

bool looks_like_surface(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    return !j.is_discarded() && j.is_object() && j.contains("faces");
}

RawSurface parse_surface_document(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object()) throw std::runtime_error("surface document must be an object");
    RawSurface s;
    if (!j.contains("vertices") || !j.contains("faces") || !j.contains("boundary"))
        throw std::runtime_error("surface document needs vertices, faces and boundary");
    for (const auto& v : j["vertices"]) s.vertices.push_back(point_from(v));
    for (const auto& f : j["faces"]) {
        std::vector<int> face;
        for (const auto& ix : f) face.push_back(ix.get<int>());
        s.faces.push_back(face);
    }
    for (const auto& ix : j["boundary"]) s.boundary.push_back(ix.get<int>());
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    return s;
}

PolyCurve parse_curve_document(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("vertices"))
        throw std::runtime_error("curve document needs vertices");
    PolyCurve c;
    for (const auto& v : j["vertices"]) c.vertices.push_back(point_from(v));
    if (j.contains("closed")) c.closed = j["closed"].get<bool>();
    if (c.vertices.size() < 2) throw std::runtime_error("curve needs at least two vertices");
    return c;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (pendingKey_) {
        pendingKey_ = false;
        return;
    }
    if (!counts_.empty() && counts_.back() > 0) out_ += ",";
    if (!counts_.empty()) counts_.back()++;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += "{";
    counts_.push_back(0);
    return *this;
}
JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    counts_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ += "[";
    counts_.push_back(0);
    return *this;
}
JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    counts_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ += "\"" + k + "\":";
    pendingKey_ = true;
    return *this;
}
JsonWriter& JsonWriter::value(double v) {
    comma();
    out_ += format_double(v);
    return *this;
}
JsonWriter& JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}
JsonWriter& JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
    return *this;
}
JsonWriter& JsonWriter::value(const std::string& v) {
    comma();
    std::string esc;
    for (char ch : v) {
        if (ch == '"' || ch == '\\') esc += '\\';
        if (ch == '\n') { esc += "\\n"; continue; }
        esc += ch;
    }
    out_ += "\"" + esc + "\"";
    return *this;
}
JsonWriter& JsonWriter::raw_value(const std::string& v) {
    comma();
    out_ += v;
    return *this;
}

std::string serialize_surface_document(const RawSurface& s) {
    JsonWriter w;
    w.begin_object();
    if (!s.name.empty()) w.key("name").value(s.name);
    w.key("vertices").begin_array();
    for (const Point3& p : s.vertices) {
        w.begin_array().value(p.x).value(p.y).value(p.z).end_array();
    }
    w.end_array();
    w.key("faces").begin_array();
    for (const auto& f : s.faces) {
        w.begin_array();
        for (int ix : f) w.value(ix);
        w.end_array();
    }
    w.end_array();
    w.key("boundary").begin_array();
    for (int ix : s.boundary) w.value(ix);
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string serialize_curve_document(const PolyCurve& c) {
    JsonWriter w;
    w.begin_object();
    w.key("closed").value(c.closed);
    w.key("vertices").begin_array();
    for (const Point3& p : c.vertices) w.begin_array().value(p.x).value(p.y).value(p.z).end_array();
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

} // namespace folded
