#pragma once

#include "dicke3/model.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dicke3::cli {

/// Every parameter any subcommand reads. JSON keys equal the field names.
struct RunConfig {
    std::string command;

    std::string configuration{"xi"};
    double Omega{1.0};
    double omega1{0.0};
    double omega2{1.0};
    double omega3{2.0};
    double mu12{0.0};
    double mu13{0.0};
    double mu23{0.0};
    int Na{1};
    int nmax{-1};  ///< negative: converge the cutoff per evaluation
    double etol{1e-8};
    double ptol{1e-10};
    int cutoff_cap{512};

    std::string frame{"unrotated"};
    bool bands{false};

    double a_min{0.0};
    double a_max{2.0};
    double b_min{0.0};
    double b_max{2.0};
    double step{0.1};

    std::vector<int> na_list;
    int rays{37};
    double s_max{2.0};
    double dmu{0.01};
    bool refine{true};
    int samples{101};

    int nu0{0};
    double t_max{50.0};
    double dt{0.5};

    std::uint64_t seed{1};
    std::string output{"-"};
    int threads{1};

    /// Model parameters with the cutoff field taken from `nmax` (possibly -1).
    ModelConfig model() const;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunConfig, command, configuration, Omega, omega1, omega2, omega3, mu12, mu13, mu23,
                                   Na, nmax, etol, ptol, cutoff_cap, frame, bands, a_min, a_max, b_min, b_max, step,
                                   na_list, rays, s_max, dmu, refine, samples, nu0, t_max, dt, seed, output, threads)

/// Keys absent from `j` keep the values already in `c`; unknown keys throw
/// InvalidConfig.
void merge_json(const nlohmann::json& j, RunConfig& c);

/// Range checks on the sweep and output parameters plus the model invariants.
void validate(const RunConfig& c);

/// Writes `#`-prefixed lines echoing the run configuration.
void write_metadata(std::ostream& os, const RunConfig& c);

/// Cutoff to use for `m`: the fixed one if non-negative, else converged.
int resolve_cutoff(const RunConfig& c, const ModelConfig& m);

void cmd_spectrum(const RunConfig& c, std::ostream& os);
/// One stream per frame: unrotated, branch 1, branch 2.
void cmd_populations(const RunConfig& c, std::ostream& unrotated, std::ostream& branch1, std::ostream& branch2);
/// Minima loci for one atom number (taken from c.Na).
void cmd_phase_diagram(const RunConfig& c, std::ostream& os);
void cmd_separatrix(const RunConfig& c, std::ostream& os);
void cmd_store_retrieve(const RunConfig& c, std::ostream& os);
void cmd_rotate_check(const RunConfig& c, std::ostream& os);
void cmd_evolve(const RunConfig& c, std::ostream& os);

/// Full command-line entry point. Exit codes: 0 success, 1 unexpected
/// failure, 2 invalid configuration or usage, 3 numerical non-convergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dicke3::cli
