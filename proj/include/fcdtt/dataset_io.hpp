#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dataset.hpp"

// Dataset file: one JSON object per line. Normative field names:
//   record_kind ("link"|"route"), link_id / route_id, date (ISO-8601),
//   tod_start_s, tod_end_s, sample_size, full_traversal,
//   speed_limit_kmh (link records only),
//   speed_percentiles_kmh[19], travel_time_percentiles_s[19]  (p5 -> p95,
//   omitted when sample_size is 0)
//
// Geometry file: a single JSON object
//   { "routes": [ { "route_id": ..., "links": [
//       { "link_id": ..., "length_m": ..., "speed_limit_kmh": ... } ] } ] }

namespace fcdtt {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json percentiles_to_json(const PercentileDistribution& d) {
    return ordered_json(d.values);
}

inline PercentileDistribution percentiles_from_json(const nlohmann::json& j) {
    PercentileDistribution d;
    d.values = j.get<std::vector<double>>();
    return d;
}

} // namespace detail

inline ordered_json link_record_to_json(const LinkRecord& r) {
    ordered_json j;
    j["record_kind"] = "link";
    j["link_id"] = r.link_id;
    j["date"] = format_date(r.date);
    j["tod_start_s"] = r.tod.start_s;
    j["tod_end_s"] = r.tod.end_s;
    j["sample_size"] = r.sample_size;
    j["full_traversal"] = r.full_traversal;
    j["speed_limit_kmh"] = r.speed_limit_kmh;
    if (r.sample_size > 0) {
        j["speed_percentiles_kmh"] = detail::percentiles_to_json(*r.speed_percentiles_kmh);
        j["travel_time_percentiles_s"] =
            detail::percentiles_to_json(*r.travel_time_percentiles_s);
    }
    return j;
}

inline ordered_json route_record_to_json(const RouteRecord& r) {
    ordered_json j;
    j["record_kind"] = "route";
    j["route_id"] = r.route_id;
    j["date"] = format_date(r.date);
    j["tod_start_s"] = r.tod.start_s;
    j["tod_end_s"] = r.tod.end_s;
    j["sample_size"] = r.sample_size;
    j["full_traversal"] = r.full_traversal;
    if (r.sample_size > 0)
        j["travel_time_percentiles_s"] =
            detail::percentiles_to_json(*r.travel_time_percentiles_s);
    return j;
}

inline void save_dataset(const Dataset& dataset, std::ostream& os) {
    for (const auto& r : dataset.link_records())
        os << link_record_to_json(r).dump() << '\n';
    for (const auto& r : dataset.route_records())
        os << route_record_to_json(r).dump() << '\n';
}

inline void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open '" + path + "' for writing");
    save_dataset(dataset, os);
}

inline Dataset load_dataset(std::istream& is, const std::string& origin = "<stream>") {
    Dataset dataset;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(origin + ":" + std::to_string(lineno) +
                             ": parse error: " + e.what());
        }
        try {
            std::string kind = j.at("record_kind").get<std::string>();
            if (kind == "link") {
                LinkRecord r;
                r.link_id = j.at("link_id").get<std::string>();
                r.date = parse_date(j.at("date").get<std::string>());
                r.tod = {j.at("tod_start_s").get<int>(), j.at("tod_end_s").get<int>()};
                r.sample_size = j.at("sample_size").get<std::size_t>();
                r.full_traversal = j.at("full_traversal").get<bool>();
                r.speed_limit_kmh = j.at("speed_limit_kmh").get<double>();
                if (j.contains("speed_percentiles_kmh"))
                    r.speed_percentiles_kmh =
                        detail::percentiles_from_json(j.at("speed_percentiles_kmh"));
                if (j.contains("travel_time_percentiles_s"))
                    r.travel_time_percentiles_s =
                        detail::percentiles_from_json(j.at("travel_time_percentiles_s"));
                dataset.add(std::move(r));
            } else if (kind == "route") {
                RouteRecord r;
                r.route_id = j.at("route_id").get<std::string>();
                r.date = parse_date(j.at("date").get<std::string>());
                r.tod = {j.at("tod_start_s").get<int>(), j.at("tod_end_s").get<int>()};
                r.sample_size = j.at("sample_size").get<std::size_t>();
                r.full_traversal = j.at("full_traversal").get<bool>();
                if (j.contains("travel_time_percentiles_s"))
                    r.travel_time_percentiles_s =
                        detail::percentiles_from_json(j.at("travel_time_percentiles_s"));
                dataset.add(std::move(r));
            } else {
                throw InputError("unknown record_kind '" + kind + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw InputError(origin + ":" + std::to_string(lineno) +
                             ": bad record: " + e.what());
        } catch (const InputError& e) {
            throw InputError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    dataset.finalize();
    return dataset;
}

inline Dataset load_dataset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("dataset file not found: '" + path + "'");
    return load_dataset(is, path);
}

inline void save_geometry(const std::vector<Route>& routes, const std::string& path) {
    ordered_json j;
    j["routes"] = ordered_json::array();
    for (const auto& route : routes) {
        ordered_json rj;
        rj["route_id"] = route.id;
        rj["links"] = ordered_json::array();
        for (const auto& link : route.links) {
            ordered_json lj;
            lj["link_id"] = link.id;
            lj["length_m"] = link.length_m;
            lj["speed_limit_kmh"] = link.speed_limit_kmh;
            rj["links"].push_back(lj);
        }
        j["routes"].push_back(rj);
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
}

inline std::vector<Route> load_geometry(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("geometry file not found: '" + path + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": parse error: " + e.what());
    }
    std::vector<Route> routes;
    for (const auto& rj : j.at("routes")) {
        std::vector<std::tuple<std::string, double, double>> specs;
        for (const auto& lj : rj.at("links"))
            specs.emplace_back(lj.at("link_id").get<std::string>(),
                               lj.at("length_m").get<double>(),
                               lj.at("speed_limit_kmh").get<double>());
        routes.push_back(make_route(rj.at("route_id").get<std::string>(), specs));
    }
    return routes;
}

inline Route find_route(const std::vector<Route>& routes, const std::string& id) {
    for (const auto& r : routes)
        if (r.id == id) return r;
    throw InputError("route '" + id + "' not found in geometry");
}

} // namespace fcdtt
