// Command-line front end: field sweeps, parity-transition detection,
// side-limit probes, strong-field checks, collective-model sweeps,
// factorized-state construction and the randomized validation campaign.
// Results go to CSV (RFC-4180); a JSON summary is printed on stdout.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "dimerchain/analytic_limits.hpp"
#include "dimerchain/collective.hpp"
#include "dimerchain/csv.hpp"
#include "dimerchain/factorization.hpp"
#include "dimerchain/spec_io.hpp"
#include "dimerchain/sweep.hpp"
#include "dimerchain/validate.hpp"

using namespace dimerchain;
using nlohmann::json;

namespace {

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    if (text.empty()) return out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--pairs", "expected i:j[,i:j...]");
        out.push_back({std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string alignment_name(PairAlignment a) {
    switch (a) {
        case PairAlignment::parallel: return "parallel";
        case PairAlignment::antiparallel: return "antiparallel";
        case PairAlignment::separable: return "separable";
    }
    return "?";
}

void write_sweep_csv(const std::string& path, const SweepResult& res) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    CsvWriter csv(out);
    std::vector<std::string> head{"field_o", "field_e", "parity", "energy", "gap"};
    for (auto [i, j] : res.pairs) {
        head.push_back("C_" + std::to_string(i) + "_" + std::to_string(j));
        head.push_back("align_" + std::to_string(i) + "_" + std::to_string(j));
    }
    head.insert(head.end(), {"M_o", "M_e", "C_o", "C_e"});
    csv.header(head);
    for (const auto& row : res.rows) {
        csv.field(row.b_odd);
        csv.field(row.b_even);
        csv.field(std::string(row.parity > 0 ? "+" : "-"));
        csv.field(row.energy);
        csv.field(row.gap);
        for (size_t p = 0; p < res.pairs.size(); ++p) {
            csv.field(row.concurrence[p]);
            csv.field(alignment_name(row.alignment[p]));
        }
        csv.field(row.m_o);
        csv.field(row.m_e);
        csv.field(row.c_o);
        csv.field(row.c_e);
        csv.end_row();
    }
}

SolverKind parse_solver(const std::string& s) {
    if (s == "auto") return SolverKind::automatic;
    if (s == "jw") return SolverKind::jordan_wigner;
    if (s == "dense") return SolverKind::dense;
    if (s == "collective") return SolverKind::collective;
    throw CLI::ValidationError("--solver", "expected auto|jw|dense|collective");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"separable eigenstates and entanglement of dimer-type spin chains"};
    app.require_subcommand(1);

    std::string spec_path, ray_text = "uniform", csv_path, pairs_text, solver_text = "auto";
    double from = 0.0, to = 1.0, offset = 1e-6;
    int points = 600;
    unsigned long long seed = 1234;
    int n_max = 8;
    double given_field = 0.0;
    bool given_even = false;

    auto add_common = [&](CLI::App* cmd, bool needs_grid) {
        cmd->add_option("--spec", spec_path, "chain spec JSON file")->required();
        cmd->add_option("--ray", ray_text, "uniform | ratio:<eta> | fixed-even:<b^e>");
        if (needs_grid) {
            cmd->add_option("--from", from, "first ray parameter");
            cmd->add_option("--to", to, "last ray parameter");
            cmd->add_option("--points", points, "grid size");
        }
        cmd->add_option("--pairs", pairs_text, "pair list i:j,i:j,...");
        cmd->add_option("--csv", csv_path, "CSV output path");
    };

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "field sweep with observables");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--solver", solver_text, "auto | jw | dense | collective");

    CLI::App* trans_cmd = app.add_subcommand("transitions", "locate parity crossings");
    add_common(trans_cmd, true);

    CLI::App* side_cmd = app.add_subcommand("side-limits",
                                            "solver vs closed-form side limits");
    add_common(side_cmd, false);
    side_cmd->add_option("--offset", offset, "field offset delta");

    CLI::App* strong_cmd = app.add_subcommand("strong-field",
                                              "perturbative strong-field comparison");
    add_common(strong_cmd, true);

    CLI::App* coll_cmd = app.add_subcommand("collective",
                                            "full-range pair model sweep");
    add_common(coll_cmd, true);

    CLI::App* fact_cmd = app.add_subcommand("factorize", "exactly separable eigenstate");
    fact_cmd->add_option("--spec", spec_path, "chain spec JSON file")->required();
    fact_cmd->add_option("--field-odd", given_field,
                         "walk the alternating curve at this b^o");
    fact_cmd->add_flag("--field-even", given_even,
                       "interpret --field-odd as b^e instead");

    CLI::App* val_cmd = app.add_subcommand("validate", "randomized oracle campaign");
    val_cmd->add_option("--seed", seed, "RNG seed");
    val_cmd->add_option("--n-max", n_max, "largest chain size");

    CLI11_PARSE(app, argc, argv);

    json summary;
    try {
        if (app.got_subcommand(sweep_cmd) || app.got_subcommand(coll_cmd)) {
            ChainSpec spec = load_spec(spec_path);
            FieldRay ray = FieldRay::parse(ray_text);
            SolverKind solver = app.got_subcommand(coll_cmd) ? SolverKind::collective
                                                             : parse_solver(solver_text);
            SweepResult res =
                sweep(spec, ray, from, to, points, parse_pairs(pairs_text), solver);
            summary["command"] = app.got_subcommand(coll_cmd) ? "collective" : "sweep";
            summary["spec"] = spec_path;
            summary["ray"] = ray.describe();
            summary["points"] = points;
            summary["rows"] = res.rows.size();
            summary["transitions"] = res.transition_count();
            summary["solver"] = res.solver_used == SolverKind::jordan_wigner ? "jw"
                                : res.solver_used == SolverKind::dense       ? "dense"
                                                                             : "collective";
            if (!csv_path.empty()) {
                write_sweep_csv(csv_path, res);
                summary["csv"] = csv_path;
                summary["csv_schema"] = "v1";
            }
        } else if (app.got_subcommand(trans_cmd)) {
            ChainSpec spec = load_spec(spec_path);
            FieldRay ray = FieldRay::parse(ray_text);
            TransitionReport rep = find_transitions(spec, ray, from, to, points);
            summary["command"] = "transitions";
            summary["spec"] = spec_path;
            summary["ray"] = ray.describe();
            summary["crossings"] = rep.crossings;
            summary["count"] = rep.crossings.size();
            summary["expected"] = rep.expected;
            summary["bisection_tol"] = rep.bisection_tol;
            summary["grid_refined"] = rep.refined;
            if (static_cast<int>(rep.crossings.size()) < rep.expected)
                std::cerr << "warning: found " << rep.crossings.size() << " crossings, "
                          << rep.expected << " expected; grid was refined once\n";
            if (!csv_path.empty()) {
                std::ofstream out(csv_path, std::ios::binary);
                CsvWriter csv(out);
                csv.header({"index", "crossing"});
                for (size_t i = 0; i < rep.crossings.size(); ++i) {
                    csv.field(static_cast<long>(i));
                    csv.field(rep.crossings[i]);
                    csv.end_row();
                }
                summary["csv"] = csv_path;
            }
        } else if (app.got_subcommand(side_cmd)) {
            ChainSpec spec = load_spec(spec_path);
            FieldRay ray = FieldRay::parse(ray_text);
            SideLimitProbe probe = side_limit_probe(spec, ray, offset, parse_pairs(pairs_text));
            summary["command"] = "side-limits";
            summary["spec"] = spec_path;
            summary["ray"] = ray.describe();
            summary["factorizing_field"] = probe.factorizing_field;
            summary["offset"] = probe.offset;
            summary["analytic"] = {
                {"oo", {{"below", probe.analytic_below_oo}, {"above", probe.analytic_above_oo}}},
                {"ee", {{"below", probe.analytic_below_ee}, {"above", probe.analytic_above_ee}}},
                {"oe", {{"below", probe.analytic_below_oe}, {"above", probe.analytic_above_oe}}}};
            summary["mixture"] = {{"oo", probe.c0_oo}, {"ee", probe.c0_ee}, {"oe", probe.c0_oe}};
            summary["max_deviation"] = probe.max_deviation;
            summary["max_spread"] = probe.max_spread;
            json rows = json::array();
            for (size_t p = 0; p < probe.pairs.size(); ++p)
                rows.push_back({{"i", probe.pairs[p].first},
                                {"j", probe.pairs[p].second},
                                {"below", probe.below[p]},
                                {"above", probe.above[p]},
                                {"below_limit", probe.below_limit[p]},
                                {"above_limit", probe.above_limit[p]}});
            summary["pairs"] = rows;
            if (!csv_path.empty()) {
                std::ofstream out(csv_path, std::ios::binary);
                CsvWriter csv(out);
                csv.header({"i", "j", "below", "above", "below_limit", "above_limit"});
                for (size_t p = 0; p < probe.pairs.size(); ++p) {
                    csv.field(static_cast<long>(probe.pairs[p].first));
                    csv.field(static_cast<long>(probe.pairs[p].second));
                    csv.field(probe.below[p]);
                    csv.field(probe.above[p]);
                    csv.field(probe.below_limit[p]);
                    csv.field(probe.above_limit[p]);
                    csv.end_row();
                }
                summary["csv"] = csv_path;
            }
        } else if (app.got_subcommand(strong_cmd)) {
            ChainSpec spec = load_spec(spec_path);
            std::vector<double> fields;
            for (int p = 0; p < points; ++p)
                fields.push_back(from + (to - from) * (points > 1 ? p / double(points - 1) : 0));
            auto rows = strong_field_check(spec, fields);
            summary["command"] = "strong-field";
            summary["spec"] = spec_path;
            json jrows = json::array();
            for (const auto& r : rows)
                jrows.push_back({{"b", r.b},
                                 {"C12", r.c12},
                                 {"C12_pert", r.c12_pert},
                                 {"C23", r.c23},
                                 {"C23_pert", r.c23_pert},
                                 {"C13", r.c13},
                                 {"C13_pert", r.c13_pert},
                                 {"M_o", r.m_o},
                                 {"M_pert", r.m_pert},
                                 {"C_site_o", r.c_site_o},
                                 {"C_site_pert", r.c_site_pert},
                                 {"max_deviation", r.max_deviation}});
            summary["rows"] = jrows;
            if (!csv_path.empty()) {
                std::ofstream out(csv_path, std::ios::binary);
                CsvWriter csv(out);
                csv.header({"b", "C12", "C12_pert", "C23", "C23_pert", "C13", "C13_pert",
                            "M_o", "M_pert", "C_site_o", "C_site_pert", "max_deviation"});
                for (const auto& r : rows) {
                    csv.field(r.b);
                    csv.field(r.c12);
                    csv.field(r.c12_pert);
                    csv.field(r.c23);
                    csv.field(r.c23_pert);
                    csv.field(r.c13);
                    csv.field(r.c13_pert);
                    csv.field(r.m_o);
                    csv.field(r.m_pert);
                    csv.field(r.c_site_o);
                    csv.field(r.c_site_pert);
                    csv.field(r.max_deviation);
                    csv.end_row();
                }
                summary["csv"] = csv_path;
            }
        } else if (app.got_subcommand(fact_cmd)) {
            ChainSpec spec = load_spec(spec_path);
            FactorizedState fs;
            if (given_field != 0.0)
                fs = alternating_solution(spec, given_even ? GivenField::even : GivenField::odd,
                                          given_field);
            else
                fs = uniform_solution(spec);
            summary["command"] = "factorize";
            summary["spec"] = spec_path;
            summary["state"] = factorized_to_json(fs);
            SeparabilityResidual res = check_separable(fs.canonical_spec, fs.angles);
            summary["residual"] = {{"pair_condition", res.pair_condition},
                                   {"field_condition", res.field_condition}};
            summary["rpa_max_b_minus"] = rpa_certificate(fs.canonical_spec, fs.angles).max_b_minus;
        } else if (app.got_subcommand(val_cmd)) {
            ValidationReport rep = validate(seed, n_max);
            summary["command"] = "validate";
            summary["seed"] = seed;
            summary["n_max"] = n_max;
            json checks = json::array();
            for (const auto& c : rep.checks)
                checks.push_back({{"name", c.name},
                                  {"passed", c.passed},
                                  {"worst", c.worst},
                                  {"tolerance", c.tolerance}});
            summary["checks"] = checks;
            summary["all_passed"] = rep.all_passed();
            if (rep.reproducer) {
                summary["reproducer"] = json::parse(*rep.reproducer);
                std::ofstream repro("validate-reproducer.json");
                repro << *rep.reproducer << "\n";
                std::cerr << "reproducer spec written to validate-reproducer.json\n";
            }
            std::cout << summary.dump(2) << std::endl;
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }

    std::cout << summary.dump(2) << std::endl;
    return 0;
}
