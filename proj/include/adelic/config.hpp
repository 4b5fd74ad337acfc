#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "adelic/brs.hpp"
#include "adelic/harness.hpp"

namespace adelic {

/// configuration problem; the message names the offending field
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunParams {
    long n_max = 1000;
    long stride = 1;
    long precision_bits = 64;
    long height = 1;
    Int eta_min = -1;
    Int eta_max = 1;
    Rat v_cap = Rat(10);
    unsigned long seed = 1;
    int threads = 1;
    bool reduce_spans = true;
    bool emit_svg = false;
    std::string output_dir = ".";
};

/// Parsed run configuration. All numeric fields arrive as exact strings
/// (rationals "a/b", reals as sparse sqrt-coefficient maps); floats are
/// rejected so exactness survives the file format.
struct RunConfig {
    std::vector<long> primes;
    long dimension = 0;
    std::vector<QuadReal> alpha_real;
    std::vector<std::vector<Rat>> alpha_parts;  // [coordinate][prime index]
    std::optional<std::vector<Rat>> gamma;
    std::optional<Int> eta;
    RunParams params;
    nlohmann::json raw;

    PrimeSet prime_set() const;
    AdeleVector alpha() const;
    RotationSpec rotation() const;  // runs the ergodicity check
    VolumeSpec volume_spec() const; // throws ConfigError if spec absent
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// canonical dump (sorted keys) and its FNV-1a 64 hash, for manifests
std::string canonical_dump(const nlohmann::json& j);
std::string config_hash(const nlohmann::json& j);

/// exact BRSSet serialization: enough to rebuild the set bit-for-bit
nlohmann::json brs_to_json(const BRSSet& set);
BRSSet brs_from_json(const nlohmann::json& j);

// ---- artifact emission (deterministic output) ----

std::string format_numeric(const QuadReal& v, long precision_bits);
void write_orbit_csv(const std::string& path, const OrbitSeries& s, long precision_bits);
void write_volumes_csv(const std::string& path, const VolumeList& v, long precision_bits);
void write_orbit_svg(const std::string& path, const OrbitSeries& s);

}  // namespace adelic
