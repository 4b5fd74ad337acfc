#include "adelic/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "adelic/config.hpp"
#include "adelic/version.hpp"

namespace adelic {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

AdeleVector zero_adele(const PrimeSet& Q, size_t d) {
    std::vector<AdeleScalar> coords;
    std::vector<Rat> zeros(Q.size(), Rat(0));
    for (size_t j = 0; j < d; ++j) coords.emplace_back(QuadReal(), Q, zeros);
    return AdeleVector(std::move(coords));
}

json effective_config(const RunConfig& cfg) {
    json j = cfg.raw;
    json p = j.contains("params") ? j["params"] : json::object();
    p["n_max"] = cfg.params.n_max;
    p["stride"] = cfg.params.stride;
    p["precision_bits"] = cfg.params.precision_bits;
    p["height"] = cfg.params.height;
    p["eta_min"] = static_cast<long>(cfg.params.eta_min.get_si());
    p["eta_max"] = static_cast<long>(cfg.params.eta_max.get_si());
    p["v_cap"] = rat_to_string(cfg.params.v_cap);
    p["seed"] = static_cast<long>(cfg.params.seed);
    p["threads"] = cfg.params.threads;
    p["reduce_spans"] = cfg.params.reduce_spans;
    p["svg"] = cfg.params.emit_svg;
    p["output_dir"] = cfg.params.output_dir;
    j["params"] = p;
    return j;
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& artifacts, const json& summary) {
    json cfgj = effective_config(cfg);
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["config_hash"] = config_hash(cfgj);
    m["config"] = cfgj;
    m["artifacts"] = artifacts;
    m["summary"] = summary;
    std::ofstream out(fs::path(cfg.params.output_dir) / "manifest.json");
    out << m.dump(2) << "\n";
}

// randomized Lemma-4.5-style integrality suite: lambda - sum_p {lambda}_p in Z
long gamma_integrality_failures(const PrimeSet& Q, unsigned long seed, long trials) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-1000000000L, 1000000000L);
    std::uniform_int_distribution<int> expo(0, 6);
    long failures = 0;
    for (long t = 0; t < trials; ++t) {
        Int den = 1;
        for (size_t i = 0; i < Q.size(); ++i)
            for (int e = expo(rng); e > 0; --e) den *= Q[i];
        Rat lambda(Int(num(rng)), den);
        lambda.canonicalize();
        Rat s = lambda;
        for (size_t i = 0; i < Q.size(); ++i) s -= padic_frac(lambda, Int(Q[i]));
        if (!is_integer(s)) ++failures;
    }
    return failures;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
    RotationSpec rot = cfg.rotation();
    if (!rot.ergodicity.ergodic) {
        out << "rotation: " << rot.ergodicity.str() << "\n";
        return kExitInadmissible;
    }
    VolumeSpec spec = cfg.volume_spec();
    BRSSet set = construct_brs(spec, rot, {cfg.params.reduce_spans});

    fs::create_directories(cfg.params.output_dir);
    std::string set_path = (fs::path(cfg.params.output_dir) / "set.json").string();
    {
        std::ofstream f(set_path);
        f << brs_to_json(set).dump(2) << "\n";
    }

    out << "constructed BRS of exact volume V = " << set.volume.str() << "\n";
    out << "  V ~ " << format_numeric(set.volume, cfg.params.precision_bits) << "\n";
    out << "  delta = (";
    for (size_t j = 0; j < set.dim; ++j) out << (j ? ", " : "") << set.delta[j].get_str();
    out << "), eta' = " << set.eta_prime.get_str() << ", mult = " << set.mult.get_str() << "\n";
    out << "  set serialized to " << set_path << "\n";

    json summary;
    summary["V_exact"] = quad_to_coeff_string(set.volume);
    summary["V_numeric"] = format_numeric(set.volume, cfg.params.precision_bits);
    summary["eta_prime"] = set.eta_prime.get_str();
    summary["mult"] = set.mult.get_str();
    write_manifest(cfg, "construct", {set_path}, summary);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    RotationSpec rot = cfg.rotation();
    if (!rot.ergodicity.ergodic) {
        out << "rotation: " << rot.ergodicity.str() << "\n";
        return kExitInadmissible;
    }
    VolumeSpec spec = cfg.volume_spec();
    BRSSet set = construct_brs(spec, rot, {cfg.params.reduce_spans});
    out << "V = " << set.volume.str() << " (exact)\n";

    ChainReport rep = lemma_chain_check(spec, rot, cfg.params.n_max, {cfg.params.reduce_spans});
    out << rep.str() << "\n";

    long trials = 2000;
    long fails = gamma_integrality_failures(rot.primes(), cfg.params.seed, trials);
    out << "Gamma integrality suite: " << (trials - fails) << "/" << trials << " exact\n";

    fs::create_directories(cfg.params.output_dir);
    json summary;
    summary["chain_ok"] = rep.ok;
    summary["chain_n"] = rep.n_checked;
    summary["integrality_failures"] = fails;
    summary["V_exact"] = quad_to_coeff_string(set.volume);
    write_manifest(cfg, "verify", {}, summary);

    return (rep.ok && fails == 0) ? kExitOk : kExitVerifyFailed;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
    RotationSpec rot = cfg.rotation();
    if (!rot.ergodicity.ergodic) {
        out << "rotation: " << rot.ergodicity.str() << "\n";
        return kExitInadmissible;
    }
    VolumeSpec spec = cfg.volume_spec();
    BRSSet set = construct_brs(spec, rot, {cfg.params.reduce_spans});

    OrbitSeries series =
        birkhoff_series(set, rot, zero_adele(rot.primes(), rot.dim()), cfg.params.n_max,
                        cfg.params.stride, cfg.params.threads);

    fs::create_directories(cfg.params.output_dir);
    std::vector<std::string> artifacts;
    std::string csv = (fs::path(cfg.params.output_dir) / "orbit.csv").string();
    write_orbit_csv(csv, series, cfg.params.precision_bits);
    artifacts.push_back(csv);
    if (cfg.params.emit_svg) {
        std::string svg = (fs::path(cfg.params.output_dir) / "orbit.svg").string();
        write_orbit_svg(svg, series);
        artifacts.push_back(svg);
    }

    out << "orbit series: N_max = " << series.n_max << ", V = " << set.volume.str() << "\n";
    out << "  max |S_N| = " << format_numeric(series.max_abs, cfg.params.precision_bits)
        << " at N = " << series.argmax_N << "\n";
    out << "  written to " << csv << "\n";

    json summary;
    summary["max_abs_S"] = format_numeric(series.max_abs, cfg.params.precision_bits);
    summary["argmax_N"] = series.argmax_N;
    write_manifest(cfg, "orbit", artifacts, summary);
    return kExitOk;
}

int cmd_volumes(const RunConfig& cfg, std::ostream& out) {
    RotationSpec rot = cfg.rotation();
    if (!rot.ergodicity.ergodic) {
        out << "rotation: " << rot.ergodicity.str() << "\n";
        return kExitInadmissible;
    }
    VolumeList vl = enumerate_volumes(rot, cfg.params.height, cfg.params.eta_min,
                                      cfg.params.eta_max, cfg.params.v_cap);
    fs::create_directories(cfg.params.output_dir);
    std::string csv = (fs::path(cfg.params.output_dir) / "volumes.csv").string();
    write_volumes_csv(csv, vl, cfg.params.precision_bits);
    out << vl.entries.size() << " distinct volumes in [0, " << rat_to_string(cfg.params.v_cap)
        << "], written to " << csv << "\n";

    json summary;
    summary["count"] = vl.entries.size();
    write_manifest(cfg, "volumes", {csv}, summary);
    return kExitOk;
}

int cmd_weyl(const RunConfig& cfg, std::ostream& out) {
    RotationSpec rot = cfg.rotation();
    if (!rot.ergodicity.ergodic) {
        out << "rotation: " << rot.ergodicity.str() << "\n";
        return kExitInadmissible;
    }
    if (!cfg.gamma) throw ConfigError("config: missing field 'spec.gamma' (needed by weyl)");
    GammaVector gamma(*cfg.gamma, rot.primes());

    const long n_max = cfg.params.n_max;
    const long stride = cfg.params.stride;
    const mpfr_prec_t prec = cfg.params.precision_bits;

    QuadReal th = theta(gamma, rot.alpha);
    std::vector<QuadReal> phases = weyl_phases_direct(gamma, rot.alpha, n_max);

    fs::create_directories(cfg.params.output_dir);
    std::string csv_path = (fs::path(cfg.params.output_dir) / "weyl.csv").string();
    std::ofstream f(csv_path);
    f << "N,re,im,modulus,modulus_closed_form,enclosure_width\n";

    // |sin(pi t)| computed on t mod 2
    auto abs_sin_pi = [](const QuadReal& t, mpfr_prec_t p) {
        QuadReal r = t - QuadReal(quad_floor_frac(t.mul_rat(Rat(1, 2))).first * 2);
        Interval angle = quad_eval(r, p + 8) * Interval::pi(p + 8);
        return angle.sin().square().sqrt();
    };

    // reciprocal of |sin(pi theta)|; theta is irrational so refinement ends
    Interval inv_denom = Interval::from_long(1, prec);
    if (!gamma.is_zero()) {
        Interval denom = abs_sin_pi(th, prec);
        for (mpfr_prec_t p = prec * 2; sgn(denom.lo_q()) <= 0 && p < (mpfr_prec_t{1} << 20); p *= 2)
            denom = abs_sin_pi(th, p);
        inv_denom = Interval::from_endpoints(Rat(1) / denom.hi_q(), Rat(1) / denom.lo_q(), prec);
    }

    CInterval acc(prec);
    char buf[256];
    for (long n = 1; n <= n_max; ++n) {
        acc = acc + expi(quad_eval(phases[static_cast<size_t>(n - 1)], prec + 8));
        if (n % stride != 0 && n != n_max) continue;
        CInterval mean = acc.div_ui(static_cast<unsigned long>(n));
        Interval mod = mean.abs();
        // closed form |sin(pi N theta)| / (N |sin(pi theta)|)
        Interval closed = gamma.is_zero()
                              ? Interval::from_long(1, prec)
                              : (abs_sin_pi(th.mul_rat(Rat(n)), prec) * inv_denom)
                                    .div_ui(static_cast<unsigned long>(n));
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.3g\n", n, mean.re.mid_d(),
                      mean.im.mid_d(), mod.mid_d(), closed.mid_d(),
                      mod.width().get_d());
        f << buf;
    }
    out << "weyl table for theta = " << th.str() << " written to " << csv_path << "\n";

    json summary;
    summary["theta"] = quad_to_coeff_string(th);
    write_manifest(cfg, "weyl", {csv_path}, summary);
    return kExitOk;
}

int cmd_ergodic(const RunConfig& cfg, std::ostream& out) {
    RotationSpec rot = cfg.rotation();
    out << rot.ergodicity.str() << "\n";
    if (!rot.ergodicity.ergodic) {
        bool valid = verify_dependence(rot.alpha, rot.ergodicity.dependence,
                                       rot.ergodicity.constant);
        out << "certificate re-verified by exact substitution: " << (valid ? "valid" : "INVALID")
            << "\n";
    }
    fs::create_directories(cfg.params.output_dir);
    json summary;
    summary["ergodic"] = rot.ergodicity.ergodic;
    summary["rank"] = rot.ergodicity.rank;
    write_manifest(cfg, "ergodic", {}, summary);
    return rot.ergodicity.ergodic ? kExitOk : kExitInadmissible;
}

}  // namespace

int run_command(const std::string& command, const std::string& config_path,
                const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
    try {
        RunConfig cfg = load_config(config_path);
        if (overrides.output_dir) cfg.params.output_dir = *overrides.output_dir;
        if (overrides.n_max) cfg.params.n_max = *overrides.n_max;
        if (overrides.stride) cfg.params.stride = *overrides.stride;
        if (overrides.precision_bits) cfg.params.precision_bits = *overrides.precision_bits;
        if (overrides.seed) cfg.params.seed = *overrides.seed;
        if (overrides.threads) cfg.params.threads = *overrides.threads;
        if (overrides.emit_svg) cfg.params.emit_svg = true;

        if (command == "construct") return cmd_construct(cfg, out);
        if (command == "verify") return cmd_verify(cfg, out);
        if (command == "orbit") return cmd_orbit(cfg, out);
        if (command == "volumes") return cmd_volumes(cfg, out);
        if (command == "weyl") return cmd_weyl(cfg, out);
        if (command == "ergodic") return cmd_ergodic(cfg, out);
        err << "unknown command '" << command << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitConfig;
    } catch (const NotRepresentable& e) {
        err << e.what() << "\n";
        return kExitInadmissible;
    } catch (const NonErgodicRotation& e) {
        err << e.what() << "\n";
        return kExitInadmissible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

}  // namespace adelic
