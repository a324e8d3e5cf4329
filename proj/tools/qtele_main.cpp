// qtele_main.cpp
// Command-line front end for the noisy-teleportation toolkit.
//
// Angular flags (--alpha, --beta, --epsilon and sweep bounds over them) are
// given in units of pi: --alpha 0.1 means 0.1*pi radians.  Printed angles are
// radians.  Exit codes: 0 success, 1 numerical failure (bracketing or
// convergence), 2 bad arguments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qtele/cli.hpp"
#include "qtele/qtele.hpp"

namespace {

using namespace qtele;

double from_pi_units(double x) { return x * pi; }

DensityMatrix resource(double alpha, double beta, double q, bool prime) {
    return prime ? big_xi_prime(alpha, beta, q) : big_xi(alpha, beta, q);
}

struct CommonFlags {
    double alpha = 0.0;    // pi units
    double beta = 0.0;     // pi units
    double q = 0.1;
    double epsilon = 0.125;  // pi units
    bool prime = false;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtele: two-qubit teleportation through damped four-qubit resources"};
    app.require_subcommand(1);

    CommonFlags f;
    double tol_q = 1e-7;
    double tol_eps = 1e-6;
    std::uint64_t seed = 1;
    std::size_t samples = 100000;
    bool monte_carlo = false;
    bool numeric_discord = false;
    std::string out_path = "-";
    cli::SweepSpec sweep;
    std::string sweep_param = "q";
    double sweep_start = 0.001, sweep_stop = 0.2;
    int sweep_steps = 50;

    auto add_resource_flags = [&](CLI::App* cmd, bool with_eps) {
        cmd->add_option("--alpha", f.alpha, "resource angle theta12, units of pi");
        cmd->add_option("--beta", f.beta, "resource angle phi12, units of pi");
        cmd->add_option("--q", f.q, "damping parameter in [0, 1]");
        if (with_eps)
            cmd->add_option("--epsilon", f.epsilon, "input angle in [0, 0.25], units of pi");
        cmd->add_flag("--prime", f.prime, "use the doubly damped resource");
    };

    CLI::App* qcrit = app.add_subcommand("qcrit", "critical damping strength for a given alpha");
    qcrit->add_option("--alpha", f.alpha, "resource angle theta12, units of pi");
    qcrit->add_option("--beta", f.beta, "resource angle phi12, units of pi");
    qcrit->add_option("--tol", tol_q, "bisection tolerance in q");

    CLI::App* epsth =
        app.add_subcommand("eps-threshold", "input angle where the discord gap changes sign");
    epsth->add_option("--alpha", f.alpha, "resource angle theta12, units of pi");
    epsth->add_option("--beta", f.beta, "resource angle phi12, units of pi");
    epsth->add_option("--q", f.q, "damping parameter in [0, 1]");
    epsth->add_option("--tol", tol_eps, "bisection tolerance in epsilon (radians)");

    CLI::App* gsf = app.add_subcommand("gsf", "generalized singlet fraction of a resource");
    add_resource_flags(gsf, false);

    CLI::App* neg = app.add_subcommand("negativity", "output-state negativity");
    add_resource_flags(neg, true);

    CLI::App* disc = app.add_subcommand("discord", "output-state minimum discord");
    add_resource_flags(disc, true);
    disc->add_flag("--numeric", numeric_discord,
                   "minimize over measurement angles instead of the closed form");

    CLI::App* fid = app.add_subcommand("fidelity", "teleportation fidelity of a resource");
    add_resource_flags(fid, false);
    fid->add_flag("--mc", monte_carlo, "Monte Carlo average over Haar-random inputs");
    fid->add_option("--samples", samples, "Monte Carlo sample count");
    fid->add_option("--seed", seed, "Monte Carlo seed");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "write a CSV sweep of the figures of merit");
    sweep_cmd->add_option("--param", sweep_param, "swept parameter: q | alpha | epsilon")
        ->required();
    sweep_cmd->add_option("--start", sweep_start, "sweep start (angles in units of pi)")
        ->required();
    sweep_cmd->add_option("--stop", sweep_stop, "sweep stop (angles in units of pi)")->required();
    sweep_cmd->add_option("--steps", sweep_steps, "number of grid points (>= 2)")->required();
    sweep_cmd->add_option("--alpha", f.alpha, "fixed alpha, units of pi");
    sweep_cmd->add_option("--beta", f.beta, "fixed beta, units of pi");
    sweep_cmd->add_option("--q", f.q, "fixed q");
    sweep_cmd->add_option("--epsilon", f.epsilon, "fixed epsilon, units of pi");
    sweep_cmd->add_option("--out", out_path, "output path, '-' for stdout");

    app.add_subcommand("repro", "run the reference-value self-check table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const double alpha = from_pi_units(f.alpha);
        const double beta = from_pi_units(f.beta);
        const double epsilon = from_pi_units(f.epsilon);

        if (qcrit->parsed()) {
            const double qc = cli::cmd_qcrit(alpha, beta, tol_q);
            std::cout << "q_crit = " << cli::format_number(qc) << "\n";
            return 0;
        }
        if (epsth->parsed()) {
            const double eps = cli::cmd_epsilon_threshold(alpha, f.q, beta, tol_eps);
            std::cout << "epsilon_threshold_rad = " << cli::format_number(eps) << "  ("
                      << cli::format_number(eps / pi) << " pi)\n";
            return 0;
        }
        if (gsf->parsed()) {
            const AngleResult g = generalized_singlet_fraction(resource(alpha, beta, f.q, f.prime));
            std::cout << "G = " << cli::format_number(g.value)
                      << "\ntheta12 = " << cli::format_number(g.angles[0])
                      << "\nphi12 = " << cli::format_number(g.angles[1]) << "\n";
            return 0;
        }
        if (neg->parsed() || disc->parsed()) {
            const DensityMatrix Xi = resource(alpha, beta, f.q, f.prime);
            const AngleResult g = generalized_singlet_fraction(Xi);
            const DensityMatrix out =
                depolarizing_bichannel_E0(Xi, AnglePair(g.angles[0], g.angles[1]),
                                          DensityMatrix::from_pure(input_state(epsilon)));
            if (neg->parsed()) {
                std::cout << "negativity = " << cli::format_number(negativity(out)) << "\n";
            } else if (numeric_discord) {
                const AngleResult d = min_discord(out);
                std::cout << "discord_min = " << cli::format_number(d.value) << "\n";
            } else {
                std::cout << "discord_min = "
                          << cli::format_number(discord_tau_closed(tau_from_density(out))) << "\n";
            }
            return 0;
        }
        if (fid->parsed()) {
            const DensityMatrix Xi = resource(alpha, beta, f.q, f.prime);
            if (monte_carlo) {
                const AngleResult g = generalized_singlet_fraction(Xi);
                const MonteCarloEstimate est = avg_fidelity_mc(
                    Xi, AnglePair(g.angles[0], g.angles[1]), samples, seed);
                std::cout << "fidelity_mc = " << cli::format_number(est.mean) << " +- "
                          << cli::format_number(est.std_error) << "  (" << est.samples
                          << " samples)\n";
            } else {
                const AngleResult g = generalized_singlet_fraction(Xi);
                std::cout << "fidelity = " << cli::format_number(fidelity_from_G(g.value)) << "\n";
            }
            return 0;
        }
        if (sweep_cmd->parsed()) {
            sweep.parameter = sweep_param;
            const bool angular = sweep_param == "alpha" || sweep_param == "epsilon";
            sweep.start = angular ? from_pi_units(sweep_start) : sweep_start;
            sweep.stop = angular ? from_pi_units(sweep_stop) : sweep_stop;
            sweep.steps = sweep_steps;
            sweep.alpha = alpha;
            sweep.beta = beta;
            sweep.q = f.q;
            sweep.epsilon = epsilon;

            const std::vector<cli::ResultRow> rows = cli::compute_sweep(sweep);
            if (out_path == "-") {
                cli::write_csv(rows, std::cout);
            } else {
                std::ofstream os(out_path, std::ios::binary);
                if (!os) {
                    std::cerr << "error: cannot open " << out_path << " for writing\n";
                    return 2;
                }
                cli::write_csv(rows, os);
            }
            return 0;
        }
        // repro
        return cli::run_reference_checks(std::cout) ? 0 : 1;
    } catch (const cli::BracketError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
