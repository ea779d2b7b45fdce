#pragma once

// Command-line driver: JSON run configs in, CSV/JSON artifacts out.
//
// Exit codes: 0 ok, 1 config or usage error, 2 domain error, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>
#include <utility>
#include <vector>

#include "fockbridge/fockbridge.hpp"

namespace fockbridge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kConfigError = 1, kDomainError = 2, kIoError = 3 };

/// Bad or missing config field; path is a JSON-pointer-like location.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kOutputNames{"occupations", "entropy", "state", "fock_hamiltonian",
                                                   "hilbert_hamiltonian"};

struct InitialAmplitude {
    ModePair pair;
    Complex amplitude{1.0, 0.0};
};

struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    std::vector<double> points() const {
        std::vector<double> t(steps);
        for (int k = 0; k < steps; ++k) t[k] = steps == 1 ? start : start + (stop - start) * k / (steps - 1);
        return t;
    }
};

struct RunConfig {
    LatticeSpec lattice;
    Statistics stat = Statistics::boson();
    std::vector<InitialAmplitude> initial;
    bool already_symmetrized = false;
    TimeGrid times;
    std::vector<std::string> outputs{"occupations", "entropy"};
    std::optional<fs::path> output_dir;
};

namespace detail {

inline const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) throw ConfigError(path + "/" + key, "missing required field");
    return obj.at(key);
}

inline double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number, got " + std::string(v.type_name()));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
}

inline int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer, got " + v.dump());
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(path, "integer out of range");
    return static_cast<int>(x);
}

inline std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string, got " + std::string(v.type_name()));
    return v.get<std::string>();
}

inline void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const char* k : known) found = found || key == k;
        if (!found) throw ConfigError(path + "/" + key, "unknown field");
    }
}

inline Statistics parse_statistics(const std::string& name, const std::string& path) {
    if (name == "boson") return Statistics::boson();
    if (name == "fermion") return Statistics::fermion();
    throw ConfigError(path, "expected \"boson\" or \"fermion\", got \"" + name + "\"");
}

inline Complex parse_amplitude(const json& v, const std::string& path) {
    if (v.is_number()) return {number(v, path), 0.0};
    if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [re, im]");
    return {number(v[0], path + "/0"), number(v[1], path + "/1")};
}

}  // namespace detail

/// Parses and validates a run config. Throws ConfigError naming the field.
inline RunConfig parse_config(const json& root) {
    using namespace detail;
    if (!root.is_object()) throw ConfigError("", "config must be a JSON object");
    reject_unknown(root, "", {"K", "statistics", "bc", "J", "U", "initial", "already_symmetrized", "times", "outputs",
                              "output_dir"});
    RunConfig cfg;

    cfg.lattice.K = integer(field(root, "", "K"), "/K");
    if (cfg.lattice.K < 1 || cfg.lattice.K > kMaxModes)
        throw ConfigError("/K", "must be in 1.." + std::to_string(kMaxModes));
    cfg.stat = parse_statistics(text(field(root, "", "statistics"), "/statistics"), "/statistics");

    const std::string bc = root.contains("bc") ? text(root["bc"], "/bc") : "open";
    if (bc == "open")
        cfg.lattice.bc = Boundary::Open;
    else if (bc == "periodic")
        cfg.lattice.bc = Boundary::Periodic;
    else
        throw ConfigError("/bc", "expected \"open\" or \"periodic\", got \"" + bc + "\"");
    if (cfg.lattice.K < 2) throw ConfigError("/K", "a hopping chain needs at least 2 sites");
    if (cfg.lattice.bc == Boundary::Periodic && cfg.lattice.K < 3)
        throw ConfigError("/bc", "periodic chains need K >= 3");

    cfg.lattice.J = number(field(root, "", "J"), "/J");
    cfg.lattice.U = root.contains("U") ? number(root["U"], "/U") : 0.0;

    if (root.contains("already_symmetrized")) {
        if (!root["already_symmetrized"].is_boolean())
            throw ConfigError("/already_symmetrized", "expected true or false");
        cfg.already_symmetrized = root["already_symmetrized"].get<bool>();
    }

    const json& initial = field(root, "", "initial");
    if (!initial.is_array() || initial.empty()) throw ConfigError("/initial", "expected a non-empty array");
    for (std::size_t n = 0; n < initial.size(); ++n) {
        const std::string path = "/initial/" + std::to_string(n);
        const json& entry = initial[n];
        if (!entry.is_object()) throw ConfigError(path, "expected {\"pair\": [i, j], \"amplitude\": [re, im]}");
        reject_unknown(entry, path, {"pair", "amplitude"});
        const json& pair = field(entry, path, "pair");
        if (!pair.is_array() || pair.size() != 2) throw ConfigError(path + "/pair", "expected [i, j]");
        InitialAmplitude a;
        a.pair = {integer(pair[0], path + "/pair/0"), integer(pair[1], path + "/pair/1")};
        for (const int m : {a.pair.i, a.pair.j})
            if (m < 1 || m > cfg.lattice.K)
                throw ConfigError(path + "/pair", "mode " + std::to_string(m) + " outside 1.." +
                                                      std::to_string(cfg.lattice.K));
        if (cfg.already_symmetrized && a.pair.j < a.pair.i + cfg.stat.delta())
            throw ConfigError(path + "/pair", std::string("already_symmetrized pairs must satisfy ") +
                                                  (cfg.stat.is_boson() ? "i <= j" : "i < j"));
        if (entry.contains("amplitude")) a.amplitude = parse_amplitude(entry["amplitude"], path + "/amplitude");
        cfg.initial.push_back(a);
    }

    const json& times = field(root, "", "times");
    if (!times.is_object()) throw ConfigError("/times", "expected {\"start\", \"stop\", \"steps\"}");
    reject_unknown(times, "/times", {"start", "stop", "steps"});
    cfg.times.start = number(field(times, "/times", "start"), "/times/start");
    cfg.times.stop = number(field(times, "/times", "stop"), "/times/stop");
    cfg.times.steps = integer(field(times, "/times", "steps"), "/times/steps");
    if (cfg.times.start < 0.0) throw ConfigError("/times/start", "must be non-negative");
    if (cfg.times.steps < 1 || cfg.times.steps > 1000000) throw ConfigError("/times/steps", "must be in 1..1000000");
    if (cfg.times.steps == 1 && cfg.times.stop != cfg.times.start)
        throw ConfigError("/times/stop", "a single step requires stop == start");
    if (cfg.times.steps > 1 && !(cfg.times.stop > cfg.times.start))
        throw ConfigError("/times/stop", "must exceed start");

    if (root.contains("outputs")) {
        const json& outputs = root["outputs"];
        if (!outputs.is_array()) throw ConfigError("/outputs", "expected an array of names");
        cfg.outputs.clear();
        std::set<std::string> seen;
        for (std::size_t n = 0; n < outputs.size(); ++n) {
            const std::string path = "/outputs/" + std::to_string(n);
            const std::string name = text(outputs[n], path);
            if (std::find(kOutputNames.begin(), kOutputNames.end(), name) == kOutputNames.end())
                throw ConfigError(path, "unknown output \"" + name + "\"");
            if (seen.insert(name).second) cfg.outputs.push_back(name);
        }
    }
    if (root.contains("output_dir")) cfg.output_dir = fs::path(text(root["output_dir"], "/output_dir"));
    return cfg;
}

inline RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", "invalid JSON in " + path.string() + ": " + e.what());
    }
    return parse_config(root);
}

/// Shortest representation that parses back to the same double.
inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// Everything the evolution needs, validated.
struct PreparedRun {
    OperatorMatrix hamiltonian;
    StateVector initial;
    std::vector<double> times;
};

inline PreparedRun prepare(const RunConfig& cfg) {
    cfg.lattice.validate();
    const int K = cfg.lattice.K;
    StateVector initial = [&] {
        if (cfg.already_symmetrized) {
            const Space fock = Space::fock(K, cfg.stat);
            Vector v = Vector::Zero(fock.dim());
            for (const auto& a : cfg.initial) v(index_fock(K, cfg.stat, a.pair) - 1) += a.amplitude;
            return StateVector(fock, std::move(v));
        }
        Vector v = Vector::Zero(hilbert_dim(K));
        for (const auto& a : cfg.initial) v(index_hilbert(K, a.pair) - 1) += a.amplitude;
        return symmetrize_state(StateVector(Space::hilbert(K), std::move(v)), cfg.stat);
    }();
    PreparedRun run{hubbard_hamiltonian(cfg.lattice, cfg.stat), std::move(initial), cfg.times.points()};
    EvolutionPlan{run.hamiltonian, run.times, run.initial}.validate();
    return run;
}

/// Sparse triplet dump, 1-based indices in row-major order.
inline std::string hamiltonian_json(const OperatorMatrix& op) {
    const SparseMatrix s = op.sparse();
    json rows = json::array(), cols = json::array(), re = json::array(), im = json::array();
    for (int r = 0; r < s.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(s, r); it; ++it) {
            rows.push_back(r + 1);
            cols.push_back(it.col() + 1);
            re.push_back(it.value().real() + 0.0);
            im.push_back(it.value().imag() + 0.0);
        }
    json out{{"space", op.space().name()}, {"dim", op.dim()}, {"rows", rows}, {"cols", cols}, {"re", re}, {"im", im}};
    return out.dump(1) + "\n";
}

/// Named file contents produced by a run, in a fixed order.
using Artifacts = std::vector<std::pair<std::string, std::string>>;

inline Artifacts compute_artifacts(const RunConfig& cfg, const PreparedRun& run) {
    const auto wants = [&](const char* name) {
        return std::find(cfg.outputs.begin(), cfg.outputs.end(), name) != cfg.outputs.end();
    };
    Artifacts out;
    const bool need_states = wants("occupations") || wants("entropy") || wants("state");
    if (need_states) {
        const std::vector<StateVector> states = evolve({run.hamiltonian, run.times, run.initial});
        std::ostringstream occ, ent, st;
        const int K = cfg.lattice.K;
        occ << "time";
        for (int k = 1; k <= K; ++k) occ << ",n_" << k;
        occ << '\n';
        ent << "time,S_fock_normalized,S_unnormalized\n";
        st << "time";
        for (int m = 1; m <= run.initial.dim(); ++m) st << ",re_" << m << ",im_" << m;
        st << '\n';
        for (std::size_t k = 0; k < states.size(); ++k) {
            const std::string t = format_number(run.times[k]);
            if (wants("occupations") || wants("entropy")) {
                const DensityMatrix rho = density_from_state(states[k]);
                occ << t;
                for (const double n : occupation_numbers(rho)) occ << ',' << format_number(n);
                occ << '\n';
                ent << t << ',' << format_number(von_neumann_entropy(rho)) << ','
                    << format_number(von_neumann_entropy_nats(rho)) << '\n';
            }
            st << t;
            for (const Complex& a : states[k].amplitudes())
                st << ',' << format_number(a.real()) << ',' << format_number(a.imag());
            st << '\n';
        }
        if (wants("occupations")) out.emplace_back("occupations.csv", occ.str());
        if (wants("entropy")) out.emplace_back("entropy.csv", ent.str());
        if (wants("state")) out.emplace_back("state.csv", st.str());
    }
    if (wants("fock_hamiltonian")) out.emplace_back("fock_hamiltonian.json", hamiltonian_json(run.hamiltonian));
    if (wants("hilbert_hamiltonian"))
        out.emplace_back("hilbert_hamiltonian.json", hamiltonian_json(hubbard_hamiltonian_hilbert(cfg.lattice)));
    return out;
}

/// Writes via a sibling temp file and rename, so readers never see a partial file.
inline void write_atomic(const fs::path& target, const std::string& content) {
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) {
            fs::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + target.string());
    }
}

/// Columns m,i,j,m_hilbert, one row per Fock basis state.
inline void emit_index_table(int K, Statistics stat, std::ostream& out) {
    out << "m,i,j,m_hilbert\n";
    const BasisIndexer idx(K, stat);
    for (int m = 1; m <= idx.dim(); ++m) {
        const ModePair p = idx.pair(m);
        out << m << ',' << p.i << ',' << p.j << ',' << index_hilbert(K, p) << '\n';
    }
}

inline void apply_thread_env() {
    const char* env = std::getenv("FOCKBRIDGE_THREADS");
    if (!env || !*env) return;
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    const auto res = std::from_chars(env, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError("FOCKBRIDGE_THREADS", "expected a non-negative integer, got \"" + std::string(env) + "\"");
    set_thread_limit(value);
}

struct RunOptions {
    fs::path config;
    bool check = false;
    std::optional<fs::path> output_dir;
};

/// The `run` subcommand. Returns an exit code, diagnostics go to err.
inline int run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        apply_thread_env();
        RunConfig cfg = load_config(opts.config);
        if (opts.output_dir) cfg.output_dir = opts.output_dir;
        if (!cfg.output_dir && !opts.check)
            throw ConfigError("/output_dir", "missing required field (or pass --output-dir)");
        if (cfg.stat.is_fermion() && cfg.lattice.U.value_or(0.0) != 0.0)
            err << "warning: U has no effect for spinless fermions\n";
        const PreparedRun prepared = prepare(cfg);
        if (opts.check) {
            out << "config ok: K=" << cfg.lattice.K << " " << cfg.stat.name() << ", " << prepared.times.size()
                << " time points, Fock dimension " << prepared.initial.dim() << "\n";
            return kOk;
        }
        for (const auto& [name, content] : compute_artifacts(cfg, prepared))
            write_atomic(*cfg.output_dir / name, content);
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    }
}

/// Full command line: `run <config> [--check] [--output-dir p]` or
/// `index-table --K n --stat boson|fermion`.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-particle Fock/Hilbert quantum walk driver", "fockbridge"};
    app.require_subcommand(1);

    RunOptions run_opts;
    std::string output_dir;
    auto* run_cmd = app.add_subcommand("run", "evolve a configured two-particle state and write observables");
    run_cmd->add_option("config", run_opts.config, "JSON run config")->required();
    run_cmd->add_flag("--check", run_opts.check, "validate the config and initial state, write nothing");
    run_cmd->add_option("--output-dir", output_dir, "overrides output_dir from the config");

    int K = 0;
    std::string stat_name;
    auto* table_cmd = app.add_subcommand("index-table", "print the Fock basis index table as CSV");
    table_cmd->add_option("--K", K, "number of modes")->required()->check(CLI::Range(1, kMaxModes));
    table_cmd->add_option("--stat", stat_name, "boson or fermion")
        ->required()
        ->check(CLI::IsMember({"boson", "fermion"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kConfigError;
    }

    if (*run_cmd) {
        if (!output_dir.empty()) run_opts.output_dir = fs::path(output_dir);
        return run(run_opts, out, err);
    }
    emit_index_table(K, detail::parse_statistics(stat_name, "--stat"), out);
    return kOk;
}

}  // namespace fockbridge::cli
