// SPDX-License-Identifier: Apache-2.0
#include "radgeom/body_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace radgeom {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw std::invalid_argument(origin + ": " + what);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Body parse_body_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(origin, std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail(origin, "top level must be an object");
    if (!j.contains("kappa") || !j["kappa"].is_number())
        fail(origin, "missing numeric field \"kappa\"");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        fail(origin, "missing integer field \"dim\"");
    if (!j.contains("balls") || !j["balls"].is_array() || j["balls"].empty())
        fail(origin, "missing non-empty array field \"balls\"");

    double kappa = j["kappa"].get<double>();
    int dim = j["dim"].get<int>();
    if (kappa != 0.0 && kappa != 1.0) fail(origin, "\"kappa\" must be 0 or 1");
    if (dim < 1) fail(origin, "\"dim\" must be positive");
    SpaceForm sf(kappa, dim);

    std::vector<Ball> balls;
    balls.reserve(j["balls"].size());
    for (std::size_t i = 0; i < j["balls"].size(); ++i) {
        const auto& e = j["balls"][i];
        std::string where = "balls[" + std::to_string(i) + "]";
        if (!e.is_object()) fail(origin, where + " must be an object");
        if (!e.contains("center") || !e["center"].is_array())
            fail(origin, where + " missing array field \"center\"");
        if (!e.contains("radius") || !e["radius"].is_number())
            fail(origin, where + " missing numeric field \"radius\"");
        if (static_cast<int>(e["center"].size()) != sf.ambient_dim())
            fail(origin, where + " center needs " + std::to_string(sf.ambient_dim()) +
                             " coordinates");
        Ball b;
        b.center = Point(sf.ambient_dim());
        for (int c = 0; c < sf.ambient_dim(); ++c) {
            if (!e["center"][static_cast<std::size_t>(c)].is_number())
                fail(origin, where + " center coordinates must be numbers");
            b.center[c] = e["center"][static_cast<std::size_t>(c)].get<double>();
        }
        b.radius = e["radius"].get<double>();
        balls.push_back(std::move(b));
    }
    try {
        return Body(sf, std::move(balls));
    } catch (const std::invalid_argument& e) {
        fail(origin, e.what());
    }
}

Body read_body_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_body_json(ss.str(), path);
}

std::string body_to_json(const Body& body) {
    std::string out = "{\n";
    out += "  \"kappa\": " + fmt_double(body.space().kappa) + ",\n";
    out += "  \"dim\": " + std::to_string(body.space().dim) + ",\n";
    out += "  \"balls\": [\n";
    const auto& balls = body.balls();
    for (std::size_t i = 0; i < balls.size(); ++i) {
        out += "    {\"center\": [";
        for (int c = 0; c < balls[i].center.size(); ++c) {
            if (c) out += ", ";
            out += fmt_double(balls[i].center[c]);
        }
        out += "], \"radius\": " + fmt_double(balls[i].radius) + "}";
        if (i + 1 < balls.size()) out += ",";
        out += "\n";
    }
    out += "  ]\n}\n";
    return out;
}

void write_body_file(const Body& body, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << body_to_json(body);
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace radgeom
