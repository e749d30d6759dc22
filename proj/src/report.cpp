#include "eavesim/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace eavesim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return fields;
        start = pos + 1;
    }
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

void append_row(std::string& out, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out += ',';
        out += f;
        first = false;
    }
    out += '\n';
}

const std::vector<double>& or_default(const std::vector<double>& given, const std::vector<double>& fallback) {
    return given.empty() ? fallback : given;
}

void reject_unused(const SweepSpec& spec, bool phi, bool alpha, bool fraction) {
    const auto bad = [&](bool allowed, const std::vector<double>& v, const char* flag) {
        if (!allowed && !v.empty()) {
            throw UsageError(std::string(flag) + " does not apply to strategy '" + spec.strategy + "'");
        }
    };
    bad(phi, spec.phis, "--phi");
    bad(alpha, spec.alphas, "--alpha");
    bad(fraction, spec.fractions, "--fraction");
}

// Rethrows range errors from the analytic layer as usage errors.
template <class F>
auto as_usage(F&& f) {
    try {
        return f();
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> phi_grid(std::size_t steps) { return linspace(0.0, std::numbers::pi / 4, steps + 1); }

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double parse_angle(std::string_view text) {
    const std::string_view s = trim(text);
    const auto pos = s.find("pi");
    if (pos == std::string_view::npos) {
        if (auto v = to_double(s)) return *v;
        throw UsageError("cannot parse angle '" + std::string(text) + "'");
    }
    double coefficient = 1.0;
    std::string_view prefix = trim(s.substr(0, pos));
    if (prefix == "-") {
        coefficient = -1.0;
    } else if (!prefix.empty()) {
        if (prefix.back() != '*') throw UsageError("cannot parse angle '" + std::string(text) + "'");
        prefix.remove_suffix(1);
        const auto c = to_double(prefix);
        if (!c) throw UsageError("cannot parse angle '" + std::string(text) + "'");
        coefficient = *c;
    }
    double denominator = 1.0;
    std::string_view suffix = trim(s.substr(pos + 2));
    if (!suffix.empty()) {
        if (suffix.front() != '/') throw UsageError("cannot parse angle '" + std::string(text) + "'");
        const auto d = to_double(suffix.substr(1));
        if (!d || *d == 0.0) throw UsageError("cannot parse angle '" + std::string(text) + "'");
        denominator = *d;
    }
    return coefficient * std::numbers::pi / denominator;
}

std::string write_curve_csv(std::span<const CurvePoint> points) {
    std::string out{kCurveHeader};
    out += '\n';
    for (const auto& p : points) {
        append_row(out, {std::string(to_label(p.strategy)), optional_number(p.phi), optional_number(p.alpha),
                         optional_number(p.fraction), format_number(p.d_bob), format_number(p.i_eve),
                         format_number(p.i_bob)});
    }
    return out;
}

std::vector<CurvePoint> parse_curve_csv(std::string_view document) {
    auto lines = split(document, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines.front() != kCurveHeader) throw std::invalid_argument("missing curve CSV header");

    std::vector<CurvePoint> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != 7) throw std::invalid_argument("curve CSV row " + std::to_string(i) + " has wrong width");
        const auto optional_field = [&](std::size_t k) -> std::optional<double> {
            if (fields[k].empty()) return std::nullopt;
            if (auto v = to_double(fields[k])) return v;
            throw std::invalid_argument("bad number '" + std::string(fields[k]) + "' in curve CSV");
        };
        const auto required_field = [&](std::size_t k) {
            if (auto v = optional_field(k)) return *v;
            throw std::invalid_argument("missing value in curve CSV row " + std::to_string(i));
        };
        points.push_back(CurvePoint{parse_strategy(fields[0]), optional_field(1), optional_field(2),
                                    optional_field(3), required_field(4), required_field(5), required_field(6)});
    }
    return points;
}

std::vector<CurvePoint> analytic_curves(const SweepSpec& spec) {
    if (spec.grid < 2) throw UsageError("--grid must be at least 2");
    const std::vector<double> default_phis{0.0, std::numbers::pi / 4};
    const auto default_alphas = linspace(0.0, std::numbers::pi / 2, spec.grid);
    const auto default_fractions = linspace(0.0, 1.0, spec.grid);

    const SweepGrid grid{or_default(spec.phis, default_phis), or_default(spec.alphas, default_alphas),
                         or_default(spec.fractions, default_fractions)};

    std::vector<Strategy> families;
    if (spec.strategy == "all") {
        families = {Strategy::InterceptResend, Strategy::AncillaNoMemory, Strategy::AncillaWithMemory};
    } else {
        const Strategy s = as_usage([&] { return parse_strategy(spec.strategy); });
        if (s == Strategy::None) throw UsageError("the 'none' strategy has no information curve");
        reject_unused(spec, s != Strategy::AncillaWithMemory, s != Strategy::InterceptResend,
                      s == Strategy::InterceptResend);
        families = {s};
    }

    std::vector<CurvePoint> points;
    for (Strategy s : families) {
        auto part = as_usage([&] { return curve_sweep(s, grid); });
        points.insert(points.end(), part.begin(), part.end());
    }
    std::stable_sort(points.begin(), points.end(), curve_order);
    return points;
}

std::string cmd_analytic_curves(const SweepSpec& spec) { return write_curve_csv(analytic_curves(spec)); }

std::vector<AttackConfig> simulation_jobs(const SweepSpec& spec) {
    const Strategy s = as_usage([&] { return parse_strategy(spec.strategy); });
    if (spec.rounds < 1) throw UsageError("--rounds must be at least 1");
    const auto require = [&](const std::vector<double>& v, const char* flag) {
        if (v.empty()) throw UsageError(std::string(flag) + " is required for strategy '" + spec.strategy + "'");
    };

    std::vector<AttackConfig> jobs;
    switch (s) {
        case Strategy::None:
            reject_unused(spec, false, false, false);
            jobs.emplace_back(NoAttack{});
            break;
        case Strategy::InterceptResend: {
            reject_unused(spec, true, false, true);
            require(spec.phis, "--phi");
            const std::vector<double> full{1.0};
            for (double phi : spec.phis)
                for (double f : or_default(spec.fractions, full))
                    jobs.emplace_back(InterceptResendAttack{phi, spec.symmetrize, f});
            break;
        }
        case Strategy::AncillaNoMemory:
            reject_unused(spec, true, true, false);
            require(spec.phis, "--phi");
            require(spec.alphas, "--alpha");
            for (double phi : spec.phis)
                for (double alpha : spec.alphas) jobs.emplace_back(AncillaNoMemoryAttack{alpha, phi, spec.symmetrize});
            break;
        case Strategy::AncillaWithMemory:
            reject_unused(spec, false, true, false);
            require(spec.alphas, "--alpha");
            for (double alpha : spec.alphas) jobs.emplace_back(AncillaWithMemoryAttack{alpha});
            break;
    }
    for (const auto& job : jobs) as_usage([&] { validate(job); return 0; });
    return jobs;
}

std::string cmd_simulate(const SweepSpec& spec, std::string* trace_csv) {
    const auto jobs = simulation_jobs(spec);

    std::string out{kSimulateHeader};
    out += '\n';
    if (trace_csv) {
        *trace_csv = kTraceHeader;
        *trace_csv += '\n';
    }

    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const AttackConfig& attack = jobs[j];
        const SimResult result =
            run_protocol(attack, SimOptions{spec.rounds, spec.seed, spec.threads, trace_csv != nullptr});
        const SimEstimate& e = result.estimate;

        std::optional<double> phi, alpha, fraction;
        if (const auto* a = std::get_if<InterceptResendAttack>(&attack)) {
            phi = a->phi;
            fraction = a->fraction;
        } else if (const auto* a = std::get_if<AncillaNoMemoryAttack>(&attack)) {
            phi = a->phi;
            alpha = a->alpha;
        } else if (const auto* a = std::get_if<AncillaWithMemoryAttack>(&attack)) {
            alpha = a->alpha;
        }
        const auto value = [](const std::optional<Estimate>& x) {
            return x ? format_number(x->value) : std::string{};
        };
        const auto error = [](const std::optional<Estimate>& x) {
            return x ? format_number(x->standard_error) : std::string{};
        };
        append_row(out, {std::string(to_label(strategy_of(attack))), optional_number(phi), optional_number(alpha),
                         optional_number(fraction), std::to_string(spec.rounds), std::to_string(spec.seed),
                         format_number(e.qber.value), format_number(e.qber.standard_error),
                         value(e.eve_mutual_info), error(e.eve_mutual_info), value(e.eve_fidelity[0]),
                         value(e.eve_fidelity[1]), std::to_string(e.n_sifted)});

        if (trace_csv) {
            for (std::size_t i = 0; i < result.trace.size(); ++i) {
                const TrialRecord& r = result.trace[i];
                std::string eve_basis, eve_outcome, eve_guess;
                if (r.eve_acted) {
                    eve_basis = r.eve_choice == EveBasisChoice::Revealed ? "revealed" : format_number(r.eve_phi);
                    eve_outcome = *r.eve_outcome == Outcome::Plus ? "+" : "-";
                    eve_guess = std::to_string(*r.eve_guess);
                }
                append_row(*trace_csv, {std::to_string(j), std::to_string(i), std::string(1, label(r.alice_basis)),
                                        std::to_string(r.alice_bit), r.eve_acted ? "1" : "0", eve_basis,
                                        eve_outcome, eve_guess, std::string(1, label(r.bob_basis)),
                                        std::to_string(r.bob_bit), r.sifted ? "1" : "0"});
            }
        }
    }
    return out;
}

std::vector<ComparisonEntry> compare_at(double d_bob, std::size_t phi_steps) {
    if (!(d_bob > 0.0 && d_bob <= 0.5)) throw UsageError("--d-bob must lie in (0, 0.5]");
    if (phi_steps < 1) throw UsageError("--phi-steps must be at least 1");
    const auto phis = phi_grid(phi_steps);
    const double alpha = alpha_for_disturbance(d_bob);
    const bool ir_in_domain = d_bob <= 0.25;
    const double fraction = 4.0 * d_bob;

    const auto ir_info = [](double phi) { return intercept_resend(phi).eve_avg_info; };
    const auto nm_info = [alpha](double phi) { return ancilla_no_memory(alpha, phi).eve_avg_info; };
    const auto best_phi = [&phis](auto info) {
        double arg = phis.front();
        double best = info(arg);
        for (double phi : phis) {
            const double v = info(phi);
            if (v > best) {
                best = v;
                arg = phi;
            }
        }
        return arg;
    };

    std::vector<ComparisonEntry> rows;
    const auto ir_row = [&](std::string variant, double phi) {
        ComparisonEntry e{Strategy::InterceptResend, std::move(variant), phi, std::nullopt, std::nullopt, d_bob,
                          std::nullopt, false};
        if (ir_in_domain) {
            e.fraction = fraction;
            e.i_eve = fraction * ir_info(phi);
        }
        rows.push_back(std::move(e));
    };
    const auto nm_row = [&](std::string variant, double phi) {
        rows.push_back(ComparisonEntry{Strategy::AncillaNoMemory, std::move(variant), phi, alpha, std::nullopt, d_bob,
                                       nm_info(phi), false});
    };

    ir_row("xy_bases", 0.0);
    ir_row("intermediate_basis", std::numbers::pi / 4);
    ir_row("best_phi", best_phi(ir_info));
    nm_row("xy_bases", 0.0);
    nm_row("intermediate_basis", std::numbers::pi / 4);
    nm_row("best_phi", best_phi(nm_info));
    rows.push_back(ComparisonEntry{Strategy::AncillaWithMemory, "revealed_basis", std::nullopt, alpha, std::nullopt,
                                   d_bob, ancilla_with_memory(alpha).eve_avg_info, false});

    ComparisonEntry& ir_best = rows[2];
    ComparisonEntry& nm_best = rows[5];
    if (ir_best.i_eve && *ir_best.i_eve >= *nm_best.i_eve) {
        ir_best.best_memoryless = true;
    } else {
        nm_best.best_memoryless = true;
    }
    return rows;
}

std::string cmd_compare(double d_bob, std::size_t phi_steps) {
    std::string out{kCompareHeader};
    out += '\n';
    for (const auto& e : compare_at(d_bob, phi_steps)) {
        append_row(out, {std::string(to_label(e.strategy)), e.variant, optional_number(e.phi),
                         optional_number(e.alpha), optional_number(e.fraction), format_number(e.d_bob),
                         optional_number(e.i_eve), e.i_eve ? "1" : "0", e.best_memoryless ? "1" : "0"});
    }
    return out;
}

}  // namespace eavesim
