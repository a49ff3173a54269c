#include "kosc/cli.hpp"

#include "kosc/as_oscillator.hpp"
#include "kosc/check.hpp"
#include "kosc/coherent.hpp"
#include "kosc/oscillator.hpp"
#include "kosc/polynomials.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <variant>

namespace kosc::cli
{

namespace
{

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string, bool>;

struct Table
{
    std::vector<std::string>       columns;
    std::vector<std::vector<Cell>> rows;
};

struct Document
{
    std::string              command;
    json                     params;
    Table                    table;
    std::optional<json>      report;
    std::vector<std::string> notes;
};

struct RunConfig
{
    double              p = 0.5;
    int                 N = 4;
    std::vector<double> z{0.0, 0.0};
    std::vector<double> xi{0.0, 0.0};
    double              theta0 = 0.0;
    std::string         family = "disp";
    std::string         format = "json";
    std::string         out_path;
    bool                sweep = false;

    OscillatorParams params() const { return OscillatorParams(p, N); }
    complex_t        z_value() const { return {z[0], z[1]}; }
    complex_t        xi_value() const { return {xi[0], xi[1]}; }
};

json cell_to_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return std::isfinite(v) ? json(v) : json(nullptr);
            else
                return json(v);
        },
        c);
}

std::string cell_to_csv(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
            {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                return buf;
            }
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else
            {
                if (v.find_first_of(",\"\n") == std::string::npos)
                    return v;
                std::string quoted = "\"";
                for (char ch : v)
                {
                    if (ch == '"')
                        quoted += '"';
                    quoted += ch;
                }
                return quoted + "\"";
            }
        },
        c);
}

void emit(const Document& doc, const std::string& format, std::ostream& out)
{
    if (format == "csv")
    {
        for (std::size_t i = 0; i < doc.table.columns.size(); ++i)
            out << (i ? "," : "") << doc.table.columns[i];
        out << '\n';
        for (const auto& row : doc.table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << cell_to_csv(row[i]);
            out << '\n';
        }
        return;
    }

    json root;
    root["params"]  = doc.params;
    root["command"] = doc.command;
    json rows       = json::array();
    for (const auto& row : doc.table.rows)
    {
        json record = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            record[doc.table.columns[i]] = cell_to_json(row[i]);
        rows.push_back(std::move(record));
    }
    root["rows"] = std::move(rows);
    if (doc.report)
        root["report"] = *doc.report;
    if (!doc.notes.empty())
        root["notes"] = doc.notes;
    out << root.dump(2) << '\n';
}

json params_json(const RunConfig& cfg)
{
    return json{{"p", cfg.p}, {"N", cfg.N}};
}

Document cmd_spectrum(const RunConfig& cfg)
{
    const auto params   = cfg.params();
    const auto spectrum = spectrum_check(params);
    const auto h_as     = eigvalsh(build_h_as(params).entries());

    Document doc{"spectrum", params_json(cfg), {{"n", "lambda_computed", "lambda_formula", "lambda_as"}, {}}, {}, {}};
    for (int n = 0; n < params.dim(); ++n)
        doc.table.rows.push_back({static_cast<long long>(n), spectrum.diagonal[n], spectrum.formula[n], h_as[n]});
    doc.notes.push_back("lambda_computed is <n|H~|n>; H~ is diagonal in the Fock basis (max off-diagonal " +
                        std::to_string(spectrum.off_diagonal) + ")");
    return doc;
}

CoherentState build_state(const std::string& family, const RunConfig& cfg, const OscillatorParams& params,
                          std::vector<std::string>& notes)
{
    if (family == "disp")
        return displacement_state(cfg.z_value(), params);
    if (family == "eq49")
    {
        const RootSumEvaluator evaluator(params);
        if (std::abs(cfg.z_value()) == 0.0)
            notes.push_back("z = 0: root-sum state defined by continuity as |0>");
        notes.push_back(std::string("root scaling calibrated at N=1: ") + std::string(to_string(evaluator.scaling())) +
                        "; weights " + std::string(to_string(evaluator.weights())));
        return evaluator.state(cfg.z_value());
    }
    if (family == "spin")
        return spin_state(cfg.xi_value(), params);
    if (family == "phase")
        return phase_coherent_state(cfg.z_value(), cfg.theta0, params);
    throw std::invalid_argument("unknown family '" + family + "'");
}

Document cmd_coherent(const RunConfig& cfg, int& status)
{
    const auto params = cfg.params();
    Document   doc{"coherent", params_json(cfg), {{"l", "re", "im", "prob"}, {}}, {}, {}};
    doc.params["family"] = cfg.family;
    doc.params["z"]      = {cfg.z[0], cfg.z[1]};
    doc.params["xi"]     = {cfg.xi[0], cfg.xi[1]};
    doc.params["theta0"] = cfg.theta0;

    const auto state = build_state(cfg.family, cfg, params, doc.notes);
    double     total = 0.0;
    for (int l = 0; l < params.dim(); ++l)
    {
        const complex_t c = state.vector[l];
        total += std::norm(c);
        doc.table.rows.push_back({static_cast<long long>(l), c.real(), c.imag(), std::norm(c)});
    }
    if (std::abs(total - 1.0) > 1e-10)
    {
        doc.notes.push_back("probabilities sum to " + std::to_string(total));
        status = check_failure;
    }
    return doc;
}

Document cmd_overlap(const RunConfig& cfg)
{
    const auto params = cfg.params();
    Document   doc{"overlap", params_json(cfg), {{"a", "b", "re", "im", "abs", "aligned_distance"}, {}}, {}, {}};
    doc.params["z"]      = {cfg.z[0], cfg.z[1]};
    doc.params["xi"]     = {cfg.xi[0], cfg.xi[1]};
    doc.params["theta0"] = cfg.theta0;

    const std::vector<std::string> families{"disp", "eq49", "spin", "phase"};
    std::vector<CoherentState>     states;
    for (const auto& f : families)
        states.push_back(build_state(f, cfg, params, doc.notes));
    for (std::size_t i = 0; i < states.size(); ++i)
    {
        for (std::size_t j = i + 1; j < states.size(); ++j)
        {
            const complex_t o = overlap(states[i], states[j]);
            doc.table.rows.push_back({families[i], families[j], o.real(), o.imag(), std::abs(o),
                                      aligned_distance(states[i].vector.amplitudes(), states[j].vector.amplitudes())});
        }
    }
    return doc;
}

Document cmd_roots(const RunConfig& cfg)
{
    const auto params = cfg.params();
    const auto psi    = psi_roots(params);
    const auto aux    = auxiliary_roots(params);
    const RootSumEvaluator christoffel(params);
    const RootSumEvaluator printed(params, christoffel.scaling(), RootWeights::printed);
    const double ladder = 1.0 / std::sqrt(2.0 * params.p() * params.q());

    Document doc{"roots",
                 params_json(cfg),
                 {{"k", "psi_root", "auxiliary_root", "ladder_root", "weight", "weight_inverse_square",
                   "eigenvector_first_squared"},
                  {}},
                 {},
                 {}};
    for (int k = 0; k < params.dim(); ++k)
    {
        const double v0 = psi.eigenvectors(0, k);
        doc.table.rows.push_back({static_cast<long long>(k), psi.eigenvalues[k], aux.eigenvalues[k],
                                  ladder * psi.eigenvalues[k], christoffel.root_weights()[k],
                                  printed.root_weights()[k], v0 * v0});
    }
    return doc;
}

Document cmd_as_compare(const RunConfig& cfg)
{
    const auto params = cfg.params();
    const auto rel    = relation_check(params);
    const auto grid   = ASGrid::make(params);
    const auto ht     = build_tilde_operators(params).h.entries();

    Document doc{"as-compare",
                 params_json(cfg),
                 {{"n", "node", "lambda_tilde", "h_tilde_diag", "lambda_as_tilde", "relation_rhs", "residual"}, {}},
                 {},
                 {}};
    for (int n = 0; n < params.dim(); ++n)
    {
        const double lambda_as = rel.as_spectrum[n];
        const double rhs       = -(lambda_as - 0.5) * (lambda_as - 0.5) + params.N() * lambda_as;
        const double diag      = ht(n, n).real();
        doc.table.rows.push_back({static_cast<long long>(n), grid.nodes[n], hamiltonian_eigenvalue(n, params), diag,
                                  lambda_as, rhs, diag - rhs});
    }
    doc.report = json{{"intertwiner_unitarity", rel.unitarity},
                      {"intertwiner_diagonal", rel.diagonal},
                      {"matrix_relation", rel.matrix_relation},
                      {"scalar_relation", rel.scalar_relation},
                      {"closed_form_match", rel.closed_form_match}};
    return doc;
}

json report_json(const CheckReport& r)
{
    json entries = json::array();
    for (const auto& e : r.entries)
    {
        entries.push_back(json{{"name", e.name},
                               {"residual", std::isfinite(e.residual) ? json(e.residual) : json(nullptr)},
                               {"tolerance", e.tolerance},
                               {"pass", e.pass},
                               {"note", e.note}});
    }
    return json{{"p", r.p}, {"N", r.N}, {"passed", r.passed()}, {"entries", std::move(entries)}};
}

Document cmd_check(const RunConfig& cfg, int& status)
{
    std::vector<CheckReport> reports;
    if (cfg.sweep)
        reports = run_sweep(default_sweep_p(), default_sweep_n());
    else
        reports.push_back(run_checks(cfg.params()));

    Document doc{"check", {}, {{"p", "N", "name", "residual", "tolerance", "pass", "note"}, {}}, {}, {}};
    if (cfg.sweep)
        doc.params = json{{"sweep", true}, {"p", default_sweep_p()}, {"N", default_sweep_n()}};
    else
        doc.params = params_json(cfg);

    bool passed = true;
    json points = json::array();
    for (const auto& r : reports)
    {
        passed = passed && r.passed();
        points.push_back(report_json(r));
        for (const auto& e : r.entries)
            doc.table.rows.push_back(
                {r.p, static_cast<long long>(r.N), e.name, e.residual, e.tolerance, e.pass, e.note});
    }
    doc.notes  = standing_notes();
    doc.report = json{{"passed", passed}, {"points", std::move(points)}};
    status     = passed ? success : check_failure;
    return doc;
}

void add_params(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--p", cfg.p, "success probability, 0 < p < 1");
    sub->add_option("--N", cfg.N, "polynomial degree; the state space has dimension N+1");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
}

void add_labels(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--z", cfg.z, "complex label as RE IM")->expected(2);
    sub->add_option("--xi", cfg.xi, "spin coherent label as RE IM")->expected(2);
    sub->add_option("--theta0", cfg.theta0, "reference phase of the phase basis");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Krawtchouk oscillator: spectra, coherent states and invariant checks", "kosc"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto*     spectrum = app.add_subcommand("spectrum", "spectra of H~ and H_AS");
    auto*     coherent = app.add_subcommand("coherent", "amplitudes of a coherent state");
    auto*     ov       = app.add_subcommand("overlap", "pairwise overlaps between the coherent families");
    auto*     roots    = app.add_subcommand("roots", "roots and weights of the zero-diagonal family");
    auto*     as_cmp   = app.add_subcommand("as-compare", "comparison with the difference-operator oscillator");
    auto*     check    = app.add_subcommand("check", "run every invariant suite");
    for (auto* sub : {spectrum, coherent, ov, roots, as_cmp, check})
        add_params(sub, cfg);
    add_labels(coherent, cfg);
    add_labels(ov, cfg);
    coherent->add_option("--family", cfg.family, "coherent family")
        ->check(CLI::IsMember({"disp", "eq49", "spin", "phase"}));
    check->add_flag("--sweep", cfg.sweep, "run the default (p, N) grid");

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("kosc");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return success;
    }
    catch (const CLI::ParseError& e)
    {
        err << e.what() << '\n';
        return usage_error;
    }

    int status = success;
    try
    {
        if (!check->parsed() || !cfg.sweep)
            (void)cfg.params();

        Document doc;
        if (spectrum->parsed())
            doc = cmd_spectrum(cfg);
        else if (coherent->parsed())
            doc = cmd_coherent(cfg, status);
        else if (ov->parsed())
            doc = cmd_overlap(cfg);
        else if (roots->parsed())
            doc = cmd_roots(cfg);
        else if (as_cmp->parsed())
            doc = cmd_as_compare(cfg);
        else
            doc = cmd_check(cfg, status);

        if (cfg.out_path.empty())
        {
            emit(doc, cfg.format, out);
        }
        else
        {
            std::ofstream file(cfg.out_path);
            if (!file)
            {
                err << "cannot open " << cfg.out_path << " for writing\n";
                return usage_error;
            }
            emit(doc, cfg.format, file);
        }
    }
    catch (const std::invalid_argument& e)
    {
        err << e.what() << '\n';
        return usage_error;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return check_failure;
    }
    return status;
}

} // namespace kosc::cli
