#include "tauwalk/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace tw {

Json partition_json(const Partition& p) {
    Json arr = Json::array();
    for (int v : p.parts) arr.push_back(v);
    return arr;
}

Partition partition_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("partition must be a JSON array");
    std::vector<int> parts;
    for (const auto& v : j) parts.push_back(v.get<int>());
    return Partition(parts);
}

Json potential_json(const Potential& U) {
    Json j;
    switch (U.kind) {
        case Potential::Kind::constant_rate:
            j["kind"] = "constant_rate";
            j["r"] = rat_string(U.r);
            break;
        case Potential::Kind::gauss:
            j["kind"] = "gauss";
            j["c"] = rat_string(U.c);
            break;
        case Potential::Kind::table:
            j["kind"] = "table";
            j["base"] = U.base_site;
            j["values"] = U.values;
            j["tail_slope"] = U.tail_slope;
            break;
    }
    if (U.hard_wall) j["hard_wall"] = true;
    return j;
}

namespace {

Rat rat_field(const Json& j, const char* name, const Rat& fallback) {
    if (!j.contains(name)) return fallback;
    const auto& v = j.at(name);
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw std::invalid_argument(std::string(name) + " must be an integer or a \"p/q\" string");
}

}  // namespace

Potential potential_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("potential file needs a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    Potential U;
    if (kind == "constant_rate") {
        U = Potential::constant_rate(rat_field(j, "r", Rat(1)));
    } else if (kind == "gauss") {
        U = Potential::gauss(rat_field(j, "c", Rat(0)));
    } else if (kind == "table") {
        std::vector<double> values = j.value("values", std::vector<double>{0.0});
        U = Potential::table(j.value("base", 0L), std::move(values), j.value("tail_slope", 0.0));
    } else {
        throw std::invalid_argument("unknown potential kind: " + kind);
    }
    U.hard_wall = j.value("hard_wall", false);
    return U;
}

Potential load_potential(const std::string& path) { return potential_from_json(load_json(path)); }

Json graph_json(const GraphOperator<double>& A) {
    Json j;
    Json arcs = Json::array();
    for (const auto& [arc, w] : A.arcs)
        arcs.push_back(Json{{"from", arc.second}, {"to", arc.first}, {"weight", w}});
    j["arcs"] = std::move(arcs);
    j["window"] = Json::array({A.lo, A.hi});
    return j;
}

GraphOperator<double> graph_from_json(const Json& j) {
    GraphOperator<double> A;
    if (!j.is_object() || !j.contains("arcs"))
        throw std::invalid_argument("graph file needs an \"arcs\" array");
    for (const auto& e : j.at("arcs"))
        A.add_arc(e.at("to").get<long>(), e.at("from").get<long>(), e.at("weight").get<double>());
    if (j.contains("window")) {
        const auto& w = j.at("window");
        if (!w.is_array() || w.size() != 2)
            throw std::invalid_argument("window must be [lo, hi]");
        A.lo = std::min(A.lo, w[0].get<long>());
        A.hi = std::max(A.hi, w[1].get<long>());
    }
    return A;
}

GraphOperator<double> load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot replace " + path);
    }
}

std::string format_float(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("float format failure");
    return std::string(buf, res.ptr);
}

std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
}

}  // namespace tw
