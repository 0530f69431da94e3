#pragma once

// File formats: the `# locograph v1` edge-list text format, JSON
// serialization of orbit classes / census records / sample reports, and the
// config echo every artifact carries.

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "locograph/census.hpp"
#include "locograph/graph.hpp"
#include "locograph/sampler.hpp"

namespace loco {

inline constexpr const char* kArtifactVersion = "locograph/0.1.0";

// Header: `# locograph v1 n=<N> d=<d>`, then one `u v` line per edge,
// 0-indexed, u < v, sorted.
void write_edge_list(std::ostream& os, const LocalGraph& g, int d);
struct EdgeListFile {
    LocalGraph graph;
    int d = 0;
};
// Throws parse_error (with line number) on malformed input.
EdgeListFile read_edge_list(std::istream& is);

nlohmann::json orbit_to_json(const OrbitClass& oc, int d);
OrbitClass orbit_from_json(const nlohmann::json& j);

// One census.jsonl record: {"n":..., "gamma":..., "orbits":[...]}.
nlohmann::json census_record_to_json(const CensusTable& t, int64_t n);

nlohmann::json report_to_json(const SampleReport& rep);

// Census shards under a cache directory: blocks of kShardSpan indices per
// file, `census-d{d}-r{r}-b{lo}-{hi}.jsonl`. A shard is complete iff its
// final line is the end-marker.
inline constexpr int64_t kShardSpan = 256;
std::string shard_path(const std::string& dir, int d, int64_t r, int64_t lo, int64_t hi);
void write_census_shard(const std::string& dir, const CensusTable& t, int64_t lo, int64_t hi);
// Loads [lo, hi] into the table; returns false if the shard is missing or
// incomplete.
bool load_census_shard(const std::string& dir, CensusTable& t, int64_t lo, int64_t hi);

// Census with shard caching: builds only the missing shards (resume), or
// everything in memory when dir is empty.
CensusTable cached_census(const std::string& dir, int d, int64_t r, int64_t max_index,
                          int threads);

}  // namespace loco
