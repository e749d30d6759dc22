// eavesim: information-vs-disturbance curves and Monte Carlo runs for
// eavesdropping on BB84.
//
//   eavesim analytic [--strategy S] [--phi LIST] [--alpha LIST] [--fraction LIST] [--grid N] [--out PATH]
//   eavesim simulate --strategy S [--phi LIST] [--alpha LIST] [--fraction LIST]
//                    [--rounds N] [--seed S] [--no-symmetrize] [--threads N] [--trace PATH] [--out PATH]
//   eavesim compare --d-bob D [--phi-steps N] [--out PATH]
//
// Exit status: 0 success, 2 usage or configuration error, 3 too few sifted rounds.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eavesim/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInsufficientSample = 3;

std::vector<double> parse_angles(const std::vector<std::string>& texts) {
    std::vector<double> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(eavesim::parse_angle(t));
    return out;
}

void write_to(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw eavesim::UsageError("cannot open '" + path + "' for writing");
    file << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eavesdropping on BB84: analytic information curves and Monte Carlo cross-checks"};
    app.require_subcommand(1);

    eavesim::SweepSpec spec;
    std::vector<std::string> phi_text, alpha_text;
    std::string out_path, trace_path;
    double d_bob = 0.0;
    std::size_t phi_steps = 16;
    bool no_symmetrize = false;

    const auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--phi", phi_text, "Eve's measurement angle(s) in [0, pi/4]; accepts 'pi/8' etc.")
            ->delimiter(',');
        cmd->add_option("--alpha", alpha_text, "ancilla coupling angle(s) in [0, pi/2]")->delimiter(',');
        cmd->add_option("--fraction", spec.fractions, "intercepted fraction(s) in [0, 1]")->delimiter(',');
        cmd->add_option("--out", out_path, "output CSV (default: standard output)");
    };

    auto* analytic = app.add_subcommand("analytic", "closed-form information curves as CSV");
    analytic->add_option("--strategy", spec.strategy,
                         "all | intercept_resend | ancilla_no_memory | ancilla_with_memory")
        ->capture_default_str();
    add_params(analytic);
    analytic->add_option("--grid", spec.grid, "points per default alpha/fraction grid")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo BB84 runs as CSV");
    simulate->add_option("--strategy", spec.strategy, "none | intercept_resend | ancilla_no_memory | ancilla_with_memory")
        ->required();
    add_params(simulate);
    simulate->add_option("--rounds", spec.rounds, "protocol rounds per job")->capture_default_str();
    simulate->add_option("--seed", spec.seed, "64-bit seed")->capture_default_str();
    simulate->add_flag("--no-symmetrize", no_symmetrize, "always measure in phi instead of a phi/phi' coin");
    simulate->add_option("--threads", spec.threads, "worker threads (0 = all cores)")->capture_default_str();
    simulate->add_option("--trace", trace_path, "write every round to this CSV");

    auto* compare = app.add_subcommand("compare", "Eve's information of every attack at one Bob disturbance");
    compare->add_option("--d-bob", d_bob, "target disturbance in (0, 0.5]")->required();
    compare->add_option("--phi-steps", phi_steps, "phi grid k*(pi/4)/N used for optima")->capture_default_str();
    compare->add_option("--out", out_path, "output CSV (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        spec.phis = parse_angles(phi_text);
        spec.alphas = parse_angles(alpha_text);
        spec.symmetrize = !no_symmetrize;

        if (analytic->parsed()) {
            write_to(out_path, eavesim::cmd_analytic_curves(spec));
        } else if (simulate->parsed()) {
            std::string trace;
            const std::string csv = eavesim::cmd_simulate(spec, trace_path.empty() ? nullptr : &trace);
            if (!trace_path.empty()) write_to(trace_path, trace);
            write_to(out_path, csv);
        } else if (compare->parsed()) {
            write_to(out_path, eavesim::cmd_compare(d_bob, phi_steps));
        }
    } catch (const eavesim::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const eavesim::InsufficientSample& e) {
        std::cerr << "insufficient sample: " << e.what() << '\n';
        return kExitInsufficientSample;
    }
    return 0;
}
