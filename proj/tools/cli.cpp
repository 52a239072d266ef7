#include "cli.hpp"

#include "CLI11.hpp"
#include "dicke3/error.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <ostream>

namespace dicke3::cli {

ModelConfig RunConfig::model() const {
    ModelConfig m;
    m.cfg = parse_configuration(configuration);
    m.Omega = Omega;
    m.omega1 = omega1;
    m.omega2 = omega2;
    m.omega3 = omega3;
    m.mu12 = mu12;
    m.mu13 = mu13;
    m.mu23 = mu23;
    m.Na = Na;
    m.nmax = nmax < 0 ? 0 : nmax;
    return m;
}

void merge_json(const nlohmann::json& j, RunConfig& c) {
    if (!j.is_object()) throw InvalidConfig("run config must be a JSON object");
    nlohmann::json full = c;
    for (const auto& [key, value] : j.items()) {
        if (!full.contains(key)) throw InvalidConfig("unknown run-config key '" + key + "'");
        full[key] = value;
    }
    try {
        c = full.get<RunConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("run config: ") + e.what());
    }
}

void validate(const RunConfig& c) {
    c.model().validate();
    if (!(c.etol > 0.0) || !(c.ptol > 0.0)) throw InvalidConfig("etol and ptol must be positive");
    if (c.cutoff_cap < 2) throw InvalidConfig("cutoff_cap must be at least 2");
    if (!(c.step > 0.0) || !(c.dmu > 0.0) || !(c.dt > 0.0)) throw InvalidConfig("step, dmu and dt must be positive");
    if (c.a_min < 0.0 || c.b_min < 0.0 || c.a_max < c.a_min || c.b_max < c.b_min)
        throw InvalidConfig("grid ranges must satisfy 0 <= min <= max");
    if (c.rays < 2) throw InvalidConfig("rays must be at least 2");
    if (c.samples < 2) throw InvalidConfig("samples must be at least 2");
    if (!(c.s_max > 0.0) || c.t_max < 0.0) throw InvalidConfig("s_max must be positive and t_max non-negative");
    if (c.threads < 1) throw InvalidConfig("threads must be at least 1");
    for (int na : c.na_list)
        if (na < 1) throw InvalidConfig("every entry of na_list must be at least 1");
}

void write_metadata(std::ostream& os, const RunConfig& c) {
    const nlohmann::json j = c;
    os << "# config " << j.dump() << '\n';
}

namespace {

std::string strip_csv(std::string base) {
    if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0) base.resize(base.size() - 4);
    return base;
}

std::ofstream open_file(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InvalidConfig("cannot open output file '" + path + "'");
    return f;
}

// Runs `body` on the configured output: the given stream for "-", else a file.
void with_output(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (c.output == "-") {
        body(out);
        return;
    }
    auto f = open_file(c.output);
    body(f);
}

std::string require_base(const RunConfig& c) {
    if (c.output == "-") throw InvalidConfig(c.command + " writes several files; pass --output <path-prefix>");
    return strip_csv(c.output);
}

void dispatch(RunConfig c, std::ostream& out) {
    validate(c);
    const std::string& cmd = c.command;
    if (cmd == "spectrum") {
        with_output(c, out, [&](std::ostream& os) { cmd_spectrum(c, os); });
    } else if (cmd == "populations") {
        const std::string base = require_base(c);
        auto u = open_file(base + "_unrotated.csv");
        auto b1 = open_file(base + "_branch1.csv");
        auto b2 = open_file(base + "_branch2.csv");
        cmd_populations(c, u, b1, b2);
    } else if (cmd == "phase-diagram") {
        const std::string base = require_base(c);
        const std::vector<int> nas = c.na_list.empty() ? std::vector<int>{c.Na} : c.na_list;
        for (int na : nas) {
            RunConfig one = c;
            one.Na = na;
            auto f = open_file(base + "_na" + std::to_string(na) + ".csv");
            cmd_phase_diagram(one, f);
        }
        auto f = open_file(base + "_separatrix.csv");
        cmd_separatrix(c, f);
    } else if (cmd == "separatrix") {
        with_output(c, out, [&](std::ostream& os) { cmd_separatrix(c, os); });
    } else if (cmd == "store-retrieve") {
        with_output(c, out, [&](std::ostream& os) { cmd_store_retrieve(c, os); });
    } else if (cmd == "rotate-check") {
        with_output(c, out, [&](std::ostream& os) { cmd_rotate_check(c, os); });
    } else if (cmd == "evolve") {
        with_output(c, out, [&](std::ostream& os) { cmd_evolve(c, os); });
    } else {
        throw InvalidConfig("unknown command '" + cmd + "'");
    }
}

// The --config file is read before the flags are bound, so flags given on
// the command line overwrite values from the file.
std::string find_config_path(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

void add_model_options(CLI::App* app, RunConfig& c) {
    app->add_option("--config", "JSON run-config file; flags override its values");
    app->add_option("--cfg,--configuration", c.configuration, "xi, lambda or v");
    app->add_option("--Omega", c.Omega, "field frequency");
    app->add_option("--omega1", c.omega1, "level 1 frequency");
    app->add_option("--omega2", c.omega2, "level 2 frequency");
    app->add_option("--omega3", c.omega3, "level 3 frequency");
    app->add_option("--mu12", c.mu12, "dipolar coupling 1-2");
    app->add_option("--mu13", c.mu13, "dipolar coupling 1-3");
    app->add_option("--mu23", c.mu23, "dipolar coupling 2-3");
    app->add_option("--na", c.Na, "number of atoms");
    app->add_option("--nmax", c.nmax, "photon cutoff; negative converges it automatically");
    app->add_option("--etol", c.etol, "cutoff convergence: energy tolerance");
    app->add_option("--ptol", c.ptol, "cutoff convergence: photon-tail tolerance");
    app->add_option("--cutoff-cap", c.cutoff_cap, "largest cutoff tried while converging");
    app->add_option("-o,--output", c.output, "output file or prefix ('-' for stdout)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        const std::string path = find_config_path(argc, argv);
        if (!path.empty()) {
            std::ifstream f(path);
            if (!f) throw InvalidConfig("cannot read run config '" + path + "'");
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                throw InvalidConfig("run config '" + path + "' is not valid JSON: " + e.what());
            }
            merge_json(j, c);
        }

        CLI::App app{"Three-level Dicke model: spectra, rotated frames, phase diagrams and qubit exchange"};
        app.require_subcommand(1);

        auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, optionally with isolated-level bands");
        add_model_options(spectrum, c);
        spectrum->add_option("--frame", c.frame, "unrotated, branch1 or branch2");
        spectrum->add_flag("--bands", c.bands, "label eigenvalues by the isolated-level occupation");

        auto* pops = app.add_subcommand("populations", "ground-state populations on a coupling grid, three frames");
        add_model_options(pops, c);
        pops->add_option("--a-min", c.a_min);
        pops->add_option("--a-max", c.a_max);
        pops->add_option("--b-min", c.b_min);
        pops->add_option("--b-max", c.b_max);
        pops->add_option("--step", c.step);

        auto* pd = app.add_subcommand("phase-diagram", "fidelity-minimum loci along a pencil of rays");
        add_model_options(pd, c);
        pd->add_option("--na-list", c.na_list, "atom numbers, one locus file each");
        pd->add_option("--rays", c.rays, "rays over [0, pi/2]");
        pd->add_option("--s-max", c.s_max, "ray length");
        pd->add_option("--dmu", c.dmu, "step along each ray");
        pd->add_option("--frame", c.frame, "unrotated, branch1 or branch2");
        pd->add_option("--refine", c.refine, "parabolic refinement of minima (true/false)");
        pd->add_option("--samples", c.samples, "separatrix overlay samples");
        pd->add_option("--threads", c.threads, "worker threads");

        auto* sep = app.add_subcommand("separatrix", "variational phase boundary samples");
        add_model_options(sep, c);
        sep->add_option("--samples", c.samples);
        sep->add_option("--s-max", c.s_max, "largest mu23 (Xi, Lambda)");

        auto* sr = app.add_subcommand("store-retrieve", "qubit store and retrieve report");
        add_model_options(sr, c);

        auto* rc = app.add_subcommand("rotate-check", "closed-form rotated generators against the exponential");
        add_model_options(rc, c);
        rc->add_option("--samples", c.samples, "random angles per atom number");
        rc->add_option("--seed", c.seed);

        auto* ev = app.add_subcommand("evolve", "populations of the frame-switched Rabi demonstration");
        add_model_options(ev, c);
        ev->add_option("--nu0", c.nu0, "initial photon number");
        ev->add_option("--t-max", c.t_max);
        ev->add_option("--dt", c.dt);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? 0 : 2;
        }
        for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
        dispatch(c, out);
        return 0;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace dicke3::cli
