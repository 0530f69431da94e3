#include "locograph/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "locograph/errors.hpp"

namespace loco {

using nlohmann::json;

void write_edge_list(std::ostream& os, const LocalGraph& g, int d) {
    os << "# locograph v1 n=" << g.vertex_count() << " d=" << d << "\n";
    for (int64_t v = 0; v < g.vertex_count(); ++v) {
        for (int32_t w : g.neighbors(v)) {
            if (v < w) os << v << " " << w << "\n";
        }
    }
}

EdgeListFile read_edge_list(std::istream& is) {
    std::string line;
    long lineno = 0;
    if (!std::getline(is, line)) throw parse_error("empty file", 1);
    ++lineno;
    int64_t n = -1;
    int d = -1;
    {
        std::istringstream hs(line);
        std::string hash, name, ver, field;
        hs >> hash >> name >> ver;
        if (hash != "#" || name != "locograph" || ver != "v1")
            throw parse_error("bad header, expected '# locograph v1 n=<N> d=<d>'", lineno);
        while (hs >> field) {
            if (field.rfind("n=", 0) == 0)
                n = std::stoll(field.substr(2));
            else if (field.rfind("d=", 0) == 0)
                d = std::stoi(field.substr(2));
        }
        if (n < 0 || d < 1) throw parse_error("header missing n= or d=", lineno);
    }
    std::vector<std::pair<int32_t, int32_t>> edges;
    int64_t pu = -1, pv = -1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int64_t u, v;
        if (!(ls >> u >> v)) throw parse_error("expected 'u v'", lineno);
        std::string rest;
        if (ls >> rest) throw parse_error("trailing content after edge", lineno);
        if (u < 0 || v < 0 || u >= n || v >= n) throw parse_error("vertex out of range", lineno);
        if (u >= v) throw parse_error("edges must satisfy u < v", lineno);
        if (u < pu || (u == pu && v <= pv))
            throw parse_error(v == pv && u == pu ? "duplicate edge" : "edges must be sorted",
                              lineno);
        pu = u;
        pv = v;
        edges.emplace_back(static_cast<int32_t>(u), static_cast<int32_t>(v));
    }
    EdgeListFile f;
    f.d = d;
    f.graph = LocalGraph::from_edges(n, std::move(edges));
    return f;
}

json orbit_to_json(const OrbitClass& oc, int d) {
    json rows = json::array();
    for (int i = 0; i < d; ++i) {
        json row = json::array();
        for (int j = 0; j < d; ++j) row.push_back(oc.rep.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"d", d},
                {"index", oc.index},
                {"min_distance", oc.min_distance},
                {"orbit_size", oc.orbit_size},
                {"stabilizer_size", oc.stabilizer_size},
                {"rep", std::move(rows)}};
}

OrbitClass orbit_from_json(const json& j) {
    OrbitClass oc;
    const int d = j.at("d").get<int>();
    std::vector<int64_t> rows;
    rows.reserve(static_cast<size_t>(d) * d);
    for (const auto& row : j.at("rep"))
        for (const auto& e : row) rows.push_back(e.get<int64_t>());
    if (rows.size() != static_cast<size_t>(d) * d) throw usage_error("bad rep matrix");
    oc.rep = SublatticeHnf::from_rows_unchecked(d, std::move(rows));
    oc.index = j.at("index").get<int64_t>();
    oc.min_distance = j.at("min_distance").get<int64_t>();
    oc.orbit_size = j.at("orbit_size").get<int64_t>();
    oc.stabilizer_size = j.at("stabilizer_size").get<int64_t>();
    return oc;
}

json census_record_to_json(const CensusTable& t, int64_t n) {
    json orbits = json::array();
    for (const auto& oc : t.orbits[n]) orbits.push_back(orbit_to_json(oc, t.d));
    return json{{"n", n}, {"gamma", t.gamma[n]}, {"orbits", std::move(orbits)}};
}

json report_to_json(const SampleReport& rep) {
    json orbit_ids = json::array();
    for (const auto& [idx, pos] : rep.component_orbits)
        orbit_ids.push_back(json::array({idx, pos}));
    return json{{"component_orders", rep.component_orders},
                {"largest_component", rep.largest_component},
                {"component_orbits", std::move(orbit_ids)},
                {"aut_log_lower_bound", rep.aut_log_lower_bound},
                {"local_limit_radius", rep.local_limit_radius},
                {"local_limit_fraction", rep.local_limit_fraction}};
}

std::string shard_path(const std::string& dir, int d, int64_t r, int64_t lo, int64_t hi) {
    std::ostringstream os;
    os << dir << "/census-d" << d << "-r" << r << "-b" << lo << "-" << hi << ".jsonl";
    return os.str();
}

void write_census_shard(const std::string& dir, const CensusTable& t, int64_t lo, int64_t hi) {
    std::filesystem::create_directories(dir);
    const std::string path = shard_path(dir, t.d, t.r, lo, hi);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw usage_error("cannot write shard " + tmp);
        os << json{{"artifact", "census-shard"},
                   {"version", kArtifactVersion},
                   {"d", t.d},
                   {"r", t.r},
                   {"lo", lo},
                   {"hi", hi}}
                  .dump()
           << "\n";
        for (int64_t n = lo; n <= hi; ++n) os << census_record_to_json(t, n).dump() << "\n";
        os << json{{"end", true}}.dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

bool load_census_shard(const std::string& dir, CensusTable& t, int64_t lo, int64_t hi) {
    std::ifstream is(shard_path(dir, t.d, t.r, lo, hi));
    if (!is) return false;
    std::string line;
    if (!std::getline(is, line)) return false;
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("lo", -1) != lo || header.value("hi", -1) != hi)
        return false;
    std::vector<std::pair<int64_t, std::vector<OrbitClass>>> records;
    bool complete = false;
    while (std::getline(is, line)) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) return false;
        if (j.contains("end")) {
            complete = true;
            break;
        }
        const int64_t n = j.at("n").get<int64_t>();
        std::vector<OrbitClass> orbits;
        for (const auto& oj : j.at("orbits")) orbits.push_back(orbit_from_json(oj));
        records.emplace_back(n, std::move(orbits));
    }
    if (!complete || records.size() != static_cast<size_t>(hi - lo + 1)) return false;
    for (auto& [n, orbits] : records) {
        if (n < lo || n > hi) return false;
        t.gamma[n] = static_cast<int64_t>(orbits.size());
        t.orbits[n] = std::move(orbits);
    }
    return true;
}

CensusTable cached_census(const std::string& dir, int d, int64_t r, int64_t max_index,
                          int threads) {
    if (dir.empty()) return build_census(d, r, max_index, threads);
    if (d >= 2 && r < r_star(d))
        throw usage_error("pure-translation census not asymptotically exact below r*(d) = " +
                          std::to_string(r_star(d)));
    CensusTable t;
    t.d = d;
    t.r = r;
    t.max_index = max_index;
    t.gamma.assign(max_index + 1, 0);
    t.orbits.assign(max_index + 1, {});
    for (int64_t lo = 1; lo <= max_index; lo += kShardSpan) {
        const int64_t hi = std::min(max_index, lo + kShardSpan - 1);
        if (load_census_shard(dir, t, lo, hi)) continue;
        build_census_range(t, lo, hi, threads);
        write_census_shard(dir, t, lo, hi);
    }
    return t;
}

}  // namespace loco
