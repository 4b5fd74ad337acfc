#include "adelic/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace adelic {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(std::string("config: missing field '") + where + "'");
    return *it;
}

long as_long(const json& j, const char* where) {
    if (!j.is_number_integer())
        throw ConfigError(std::string("config: field '") + where + "' must be an integer");
    return j.get<long>();
}

std::string as_string(const json& j, const char* where) {
    if (!j.is_string())
        throw ConfigError(std::string("config: field '") + where +
                          "' must be an exact string (floats are rejected)");
    return j.get<std::string>();
}

Rat as_rat(const json& j, const std::string& where) {
    if (!j.is_string())
        throw ConfigError("config: field '" + where +
                          "' must be a rational string \"a/b\" (floats are rejected)");
    try {
        return rat_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError("config: field '" + where + "': " + e.what());
    }
}

QuadReal as_quad(const json& j, const std::string& where) {
    if (!j.is_object())
        throw ConfigError("config: field '" + where + "' must be a {\"n\": \"a/b\"} map");
    QuadReal r;
    for (auto it = j.begin(); it != j.end(); ++it) {
        long n;
        try {
            n = std::stol(it.key());
        } catch (const std::exception&) {
            throw ConfigError("config: field '" + where + "': key '" + it.key() +
                              "' is not an integer radicand");
        }
        if (n < 1) throw ConfigError("config: field '" + where + "': radicand must be >= 1");
        r += QuadReal::radical_term(as_rat(it.value(), where + "." + it.key()), Int(n));
    }
    return r;
}

}  // namespace

PrimeSet RunConfig::prime_set() const { return PrimeSet(primes); }

AdeleVector RunConfig::alpha() const {
    PrimeSet Q = prime_set();
    std::vector<AdeleScalar> coords;
    coords.reserve(static_cast<size_t>(dimension));
    for (long j = 0; j < dimension; ++j)
        coords.emplace_back(alpha_real[static_cast<size_t>(j)], Q,
                            alpha_parts[static_cast<size_t>(j)]);
    return AdeleVector(std::move(coords));
}

RotationSpec RunConfig::rotation() const { return RotationSpec::make(alpha()); }

VolumeSpec RunConfig::volume_spec() const {
    if (!gamma || !eta) throw ConfigError("config: missing field 'spec' (gamma/eta)");
    return {GammaVector(*gamma, prime_set()), *eta};
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    RunConfig c;
    c.raw = j;

    const json& jp = need(j, "primes", "primes");
    if (!jp.is_array() || jp.empty()) throw ConfigError("config: 'primes' must be a nonempty array");
    for (const auto& e : jp) c.primes.push_back(as_long(e, "primes[]"));
    PrimeSet Q = [&] {
        try {
            return PrimeSet(c.primes);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: 'primes': ") + e.what());
        }
    }();

    c.dimension = as_long(need(j, "dimension", "dimension"), "dimension");
    if (c.dimension < 1) throw ConfigError("config: 'dimension' must be >= 1");

    const json& ja = need(j, "alpha", "alpha");
    if (!ja.is_array() || ja.size() != static_cast<size_t>(c.dimension))
        throw ConfigError("config: 'alpha' must be an array of length 'dimension'");
    for (size_t jx = 0; jx < ja.size(); ++jx) {
        const std::string where = "alpha[" + std::to_string(jx) + "]";
        const json& coord = ja[jx];
        if (!coord.is_object()) throw ConfigError("config: '" + where + "' must be an object");
        c.alpha_real.push_back(as_quad(need(coord, "real", (where + ".real").c_str()), where + ".real"));
        const json& pp = need(coord, "p_parts", (where + ".p_parts").c_str());
        if (!pp.is_object())
            throw ConfigError("config: '" + where + ".p_parts' must be a {\"p\": \"a/b\"} map");
        std::vector<Rat> parts;
        for (size_t i = 0; i < Q.size(); ++i) {
            std::string key = std::to_string(Q[i]);
            auto it = pp.find(key);
            if (it == pp.end())
                throw ConfigError("config: '" + where + ".p_parts' is missing prime " + key);
            parts.push_back(as_rat(*it, where + ".p_parts." + key));
        }
        if (pp.size() != Q.size())
            throw ConfigError("config: '" + where + ".p_parts' has entries outside 'primes'");
        c.alpha_parts.push_back(std::move(parts));
    }

    if (auto it = j.find("spec"); it != j.end()) {
        const json& js = *it;
        const json& jg = need(js, "gamma", "spec.gamma");
        if (!jg.is_array() || jg.size() != static_cast<size_t>(c.dimension))
            throw ConfigError("config: 'spec.gamma' must be an array of length 'dimension'");
        std::vector<Rat> gamma;
        for (size_t k = 0; k < jg.size(); ++k)
            gamma.push_back(as_rat(jg[k], "spec.gamma[" + std::to_string(k) + "]"));
        for (const Rat& gk : gamma)
            if (!gamma_check(gk, Q))
                throw ConfigError("config: 'spec.gamma' entry " + rat_to_string(gk) +
                                  " is not in Gamma_" + Q.str());
        c.gamma = std::move(gamma);
        c.eta = Int(as_long(need(js, "eta", "spec.eta"), "spec.eta"));
    }

    if (auto it = j.find("params"); it != j.end()) {
        const json& p = *it;
        if (!p.is_object()) throw ConfigError("config: 'params' must be an object");
        auto get_long = [&](const char* k, long dflt, long min_v) {
            auto f = p.find(k);
            if (f == p.end()) return dflt;
            long v = as_long(*f, k);
            if (v < min_v)
                throw ConfigError(std::string("config: 'params.") + k + "' must be >= " +
                                  std::to_string(min_v));
            return v;
        };
        c.params.n_max = get_long("n_max", c.params.n_max, 0);
        c.params.stride = get_long("stride", c.params.stride, 1);
        c.params.precision_bits = get_long("precision_bits", c.params.precision_bits, 1);
        c.params.height = get_long("height", c.params.height, 0);
        c.params.threads = static_cast<int>(get_long("threads", c.params.threads, 1));
        c.params.eta_min = Int(get_long("eta_min", -1, -1000000));
        c.params.eta_max = Int(get_long("eta_max", 1, -1000000));
        if (auto f = p.find("v_cap"); f != p.end()) c.params.v_cap = as_rat(*f, "params.v_cap");
        if (auto f = p.find("seed"); f != p.end())
            c.params.seed = static_cast<unsigned long>(as_long(*f, "seed"));
        if (auto f = p.find("reduce_spans"); f != p.end()) {
            if (!f->is_boolean()) throw ConfigError("config: 'params.reduce_spans' must be a bool");
            c.params.reduce_spans = f->get<bool>();
        }
        if (auto f = p.find("svg"); f != p.end()) {
            if (!f->is_boolean()) throw ConfigError("config: 'params.svg' must be a bool");
            c.params.emit_svg = f->get<bool>();
        }
        if (auto f = p.find("output_dir"); f != p.end())
            c.params.output_dir = as_string(*f, "params.output_dir");
    }

    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config: JSON parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string config_hash(const json& j) {
    // FNV-1a 64 over the canonical dump
    std::string s = canonical_dump(j);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

json brs_to_json(const BRSSet& set) {
    json j;
    j["dim"] = set.dim;
    j["primes"] = set.primes.list();
    auto int_strings = [](const IntVec& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const Int& e : v) out.push_back(e.get_str());
        return out;
    };
    j["delta"] = int_strings(set.delta);
    j["g"] = int_strings(set.g);
    j["eta_prime"] = set.eta_prime.get_str();
    j["mult"] = set.mult.get_str();
    j["volume"] = quad_to_coeff_string(set.volume);
    std::vector<std::string> betas;
    for (const QuadReal& b : set.beta) betas.push_back(quad_to_coeff_string(b));
    j["beta"] = betas;
    j["zero_coords"] = set.zero_coords;
    json spans = json::array();
    for (size_t i = 0; i < set.dim; ++i) {
        json row;
        row["m"] = set.span_records[i].m.get_str();
        row["z"] = int_strings(set.span_records[i].z);
        std::vector<std::string> entries;
        for (const QuadReal& e : set.PB.spans()[i]) entries.push_back(quad_to_coeff_string(e));
        row["row"] = entries;
        spans.push_back(row);
    }
    j["spans"] = spans;
    return j;
}

BRSSet brs_from_json(const json& j) {
    auto int_of = [](const json& v) { return Int(v.get<std::string>()); };
    size_t dim = j.at("dim").get<size_t>();
    PrimeSet primes(j.at("primes").get<std::vector<long>>());

    IntVec delta, g;
    for (const auto& e : j.at("delta")) delta.push_back(int_of(e));
    for (const auto& e : j.at("g")) g.push_back(int_of(e));
    Int eta_prime = int_of(j.at("eta_prime"));
    Int mult = int_of(j.at("mult"));
    QuadReal volume = quad_from_coeff_string(j.at("volume").get<std::string>());
    std::vector<QuadReal> beta;
    for (const auto& e : j.at("beta")) beta.push_back(quad_from_coeff_string(e.get<std::string>()));
    std::vector<size_t> zero_coords = j.at("zero_coords").get<std::vector<size_t>>();

    std::vector<std::vector<QuadReal>> rows;
    std::vector<SpanRecord> recs;
    for (const auto& row : j.at("spans")) {
        SpanRecord rec{int_of(row.at("m")), {}};
        for (const auto& z : row.at("z")) rec.z.push_back(int_of(z));
        std::vector<QuadReal> r;
        for (const auto& e : row.at("row")) r.push_back(quad_from_coeff_string(e.get<std::string>()));
        // the row must equal m*beta + z; reject corrupted documents
        for (size_t c = 0; c < dim; ++c) {
            QuadReal expect = beta[c].mul_rat(Rat(rec.m)) + QuadReal(rec.z[c]);
            if (r[c] != expect) throw ConfigError("brs_from_json: span row fails m*beta+z check");
        }
        rows.push_back(std::move(r));
        recs.push_back(std::move(rec));
    }

    Parallelotope PB{rows};
    std::vector<std::vector<QuadReal>> pa_rows = rows;
    for (size_t i = 0; i < dim; ++i)
        for (size_t c = 0; c < dim; ++c) pa_rows[i][c] = pa_rows[i][c].mul_rat(Rat(delta[c]));
    Parallelotope PA{pa_rows};

    if (PB.det().mul_rat(Rat(mult)) != volume)
        throw ConfigError("brs_from_json: volume identity fails");

    return {dim,  primes, delta, g, beta, eta_prime, volume, mult, zero_coords,
            std::move(PB), std::move(PA), std::move(recs)};
}

std::string format_numeric(const QuadReal& v, long precision_bits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", quad_eval(v, precision_bits).mid_d());
    return buf;
}

void write_orbit_csv(const std::string& path, const OrbitSeries& s, long precision_bits) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "N,count,N_times_V,S_N\n";
    for (const OrbitSample& smp : s.samples) {
        QuadReal nv = s.volume.mul_rat(Rat(smp.N));
        out << smp.N << "," << smp.count.get_str() << "," << format_numeric(nv, precision_bits)
            << "," << format_numeric(smp.S, precision_bits) << "\n";
    }
}

void write_volumes_csv(const std::string& path, const VolumeList& v, long precision_bits) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "V_numeric";
    size_t d = v.entries.empty() ? 0 : v.entries.front().gamma.size();
    for (size_t j = 1; j <= d; ++j) out << ",gamma_" << j;
    out << ",eta,V_exact_expression\n";
    for (const VolumeEntry& e : v.entries) {
        out << format_numeric(e.V, precision_bits);
        for (const Rat& gj : e.gamma) out << "," << rat_to_string(gj);
        out << "," << e.eta.get_str() << "," << quad_to_coeff_string(e.V) << "\n";
    }
}

void write_orbit_svg(const std::string& path, const OrbitSeries& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);

    const double W = 800, H = 400, M = 40;
    double ymin = 0, ymax = 0;
    std::vector<std::pair<double, double>> pts;
    for (const OrbitSample& smp : s.samples) {
        double y = quad_eval(smp.S, 64).mid_d();
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
        pts.emplace_back(static_cast<double>(smp.N), y);
    }
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    double xmax = s.n_max > 0 ? static_cast<double>(s.n_max) : 1.0;

    auto sx = [&](double x) { return M + (W - 2 * M) * x / xmax; };
    auto sy = [&](double y) { return H - M - (H - 2 * M) * (y - ymin) / (ymax - ymin); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#888\"/>\n",
                  M, sy(0.0), W - M, sy(0.0));
    out << buf;
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (const auto& [x, y] : pts) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(x), sy(y));
        out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"20\" font-size=\"12\" font-family=\"monospace\">S_N vs N "
                  "(N_max=%ld)</text>\n",
                  M, s.n_max);
    out << buf;
    out << "</svg>\n";
}

}  // namespace adelic
