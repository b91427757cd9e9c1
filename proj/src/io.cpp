#include "afinv/io.h"

#include <fstream>
#include <sstream>

namespace io {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

num::Real parse_number(const json& j, const std::string& field) {
    try {
        if (j.is_string())
            return num::real_from_string(j.get<std::string>());
        if (j.is_number_integer())
            return num::Real(j.get<long long>());
        if (j.is_number())
            return num::Real(j.get<double>());
    } catch (const std::exception& e) {
        throw SchemaError(field + ": " + e.what());
    }
    throw SchemaError(field + ": expected a number or a numeric string");
}

bool is_oned_file(const json& j) {
    return j.is_object() && j.contains("poles") && j.contains("weights");
}

bool is_arrangement_file(const json& j) {
    return j.is_object() && j.contains("n") && j.contains("hyperplanes");
}

namespace {

std::vector<num::Real> parse_array(const json& j, const std::string& field) {
    if (!j.is_array())
        throw SchemaError(field + ": expected an array");
    std::vector<num::Real> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

oned::System parse_oned_system(const json& j) {
    if (!is_oned_file(j))
        throw SchemaError("expected an object with \"poles\" and \"weights\"");
    std::vector<num::Real> poles = parse_array(j.at("poles"), "poles");
    std::vector<num::Real> weights = parse_array(j.at("weights"), "weights");
    if (poles.size() != weights.size())
        throw SchemaError("weights: expected " + std::to_string(poles.size()) +
                          " entries to match poles, got " + std::to_string(weights.size()));
    for (std::size_t i = 0; i + 1 < poles.size(); ++i)
        if (!(poles[i] < poles[i + 1])) {
            std::string idx = std::to_string(i + 1);
            throw SchemaError("poles[" + idx + "]: must be strictly greater than poles[" +
                              std::to_string(i) + "] (duplicate or out of order)");
        }
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (!(weights[i] > 0))
            throw SchemaError("weights[" + std::to_string(i) + "]: must be positive");
    return oned::System(std::move(poles), std::move(weights));
}

hyper::Arrangement parse_arrangement(const json& j) {
    if (!is_arrangement_file(j))
        throw SchemaError("expected an object with \"n\" and \"hyperplanes\"");
    if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 1)
        throw SchemaError("n: expected a positive integer dimension");
    int n = j.at("n").get<int>();
    const json& hs = j.at("hyperplanes");
    if (!hs.is_array() || hs.empty())
        throw SchemaError("hyperplanes: expected a non-empty array");
    std::vector<hyper::Hyperplane> planes;
    planes.reserve(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        std::string base = "hyperplanes[" + std::to_string(i) + "]";
        const json& h = hs[i];
        if (!h.is_object())
            throw SchemaError(base + ": expected an object");
        for (const char* key : {"u0", "u", "lambda"})
            if (!h.contains(key))
                throw SchemaError(base + "." + key + ": missing");
        hyper::Hyperplane plane;
        plane.offset = parse_number(h.at("u0"), base + ".u0");
        plane.normal = parse_array(h.at("u"), base + ".u");
        if (static_cast<int>(plane.normal.size()) != n)
            throw SchemaError(base + ".u: expected " + std::to_string(n) + " entries, got " +
                              std::to_string(plane.normal.size()));
        bool nonzero = false;
        for (const num::Real& u : plane.normal)
            if (u != 0)
                nonzero = true;
        if (!nonzero)
            throw SchemaError(base + ".u: zero normal vector");
        plane.weight = parse_number(h.at("lambda"), base + ".lambda");
        if (!(plane.weight > 0))
            throw SchemaError(base + ".lambda: must be positive");
        planes.push_back(std::move(plane));
    }
    return hyper::Arrangement(n, std::move(planes));
}

}  // namespace io
