#include "rieszcap/set_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rieszcap {

namespace {

using nlohmann::json;

SetSpec parse(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw std::invalid_argument("set json: object with a \"type\" field expected");
    const std::string type = j["type"].get<std::string>();

    auto vec = [&](const char* key) {
        if (!j.contains(key))
            throw std::invalid_argument(std::string("set json: missing \"") + key +
                                        "\"");
        return j[key].get<std::vector<double>>();
    };

    if (type == "ball" || type == "sphere") {
        if (!j.contains("dim") || !j.contains("radius"))
            throw std::invalid_argument("set json: ball/sphere needs dim, center, radius");
        const int dim = j["dim"].get<int>();
        const double radius = j["radius"].get<double>();
        auto center = vec("center");
        return type == "ball" ? SetSpec::ball(dim, std::move(center), radius)
                              : SetSpec::sphere(dim, std::move(center), radius);
    }
    if (type == "interval") {
        if (!j.contains("a") || !j.contains("b"))
            throw std::invalid_argument("set json: interval needs a and b");
        return SetSpec::interval(j["a"].get<double>(), j["b"].get<double>());
    }
    if (type == "box") {
        return SetSpec::box(vec("lo"), vec("hi"));
    }
    if (type == "points") {
        if (!j.contains("coords"))
            throw std::invalid_argument("set json: points needs coords");
        return SetSpec::points(j["coords"].get<std::vector<std::vector<double>>>());
    }
    if (type == "union") {
        if (!j.contains("parts") || !j["parts"].is_array())
            throw std::invalid_argument("set json: union needs parts array");
        std::vector<SetSpec> parts;
        for (const auto& p : j["parts"]) parts.push_back(parse(p));
        return SetSpec::set_union(std::move(parts));
    }
    throw std::invalid_argument("set json: unknown type \"" + type + "\"");
}

json to_json(const SetSpec& spec) {
    json j;
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BallSpec>) {
                j = {{"type", "ball"}, {"dim", s.dim}, {"center", s.center},
                     {"radius", s.radius}};
            } else if constexpr (std::is_same_v<T, SphereSpec>) {
                j = {{"type", "sphere"}, {"dim", s.dim}, {"center", s.center},
                     {"radius", s.radius}};
            } else if constexpr (std::is_same_v<T, IntervalSpec>) {
                j = {{"type", "interval"}, {"a", s.a}, {"b", s.b}};
            } else if constexpr (std::is_same_v<T, BoxSpec>) {
                j = {{"type", "box"}, {"lo", s.lo}, {"hi", s.hi}};
            } else if constexpr (std::is_same_v<T, PointsSpec>) {
                j = {{"type", "points"}, {"coords", s.coords}};
            } else {
                json parts = json::array();
                for (const auto& p : s.parts) parts.push_back(to_json(p));
                j = {{"type", "union"}, {"parts", parts}};
            }
        },
        spec.v);
    return j;
}

}  // namespace

SetSpec set_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("set json: parse error: ") + e.what());
    }
    return parse(j);
}

SetSpec set_spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open set file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return set_spec_from_json(buf.str());
}

std::string set_spec_to_json(const SetSpec& spec) { return to_json(spec).dump(); }

}  // namespace rieszcap
