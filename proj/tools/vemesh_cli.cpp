#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "vemesh/correlation.hpp"
#include "vemesh/datasets.hpp"
#include "vemesh/indicator.hpp"
#include "vemesh/metrics.hpp"
#include "vemesh/performance.hpp"
#include "vemesh/report.hpp"
#include "vemesh/solver.hpp"

namespace fs = std::filesystem;
using namespace vemesh;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) parts.push_back(item);
    return parts;
}

std::pair<int, int> parse_levels(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        const int n = std::stoi(spec);
        return {n, n};
    }
    return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    for (const std::string& item : split(spec, ',')) out.push_back(std::stoi(item));
    return out;
}

struct CommonOptions {
    std::string datasets = "triangle";
    std::string levels = "0..3";
    std::string ks = "1";
    std::string stab = "d-recipe";
    std::string test = "test1";
    std::string solver = "auto";
    std::string out = ".";
    std::string format = "csv,svg";
    std::uint64_t seed = kDefaultSeed;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_solver_opts) {
    cmd->add_option("--dataset", opt.datasets, "comma-separated dataset ids");
    cmd->add_option("--levels", opt.levels, "level range A..B (or single level)");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--seed", opt.seed, "RNG seed for the sampled datasets");
    cmd->add_option("--format", opt.format, "outputs to produce: csv,svg");
    if (with_solver_opts) {
        cmd->add_option("--k", opt.ks, "comma-separated orders, each in {1,2,3}");
        cmd->add_option("--stab", opt.stab, "d-recipe | dofi-dofi | trace")
            ->check(CLI::IsMember({"d-recipe", "dofi-dofi", "trace"}));
        cmd->add_option("--test", opt.test, "test1 | test2")
            ->check(CLI::IsMember({"test1", "test2"}));
        cmd->add_option("--solver", opt.solver, "auto | direct | cg")
            ->check(CLI::IsMember({"auto", "direct", "cg"}));
    }
}

bool wants(const CommonOptions& opt, const std::string& kind) {
    for (const std::string& f : split(opt.format, ','))
        if (f == kind) return true;
    return false;
}

void ensure_out(const CommonOptions& opt) { fs::create_directories(opt.out); }

std::string mesh_path(const CommonOptions& opt, const std::string& id, int level) {
    std::string safe = id;
    for (char& c : safe)
        if (c == ':') c = '_';
    return (fs::path(opt.out) / (safe + "_" + std::to_string(level) + ".poly")).string();
}

int require_valid(const Mesh& mesh, const std::string& id, int level) {
    const auto violations = validate(mesh);
    if (violations.empty()) return 0;
    std::cerr << "validation failed for " << id << " level " << level << ":\n";
    for (const auto& v : violations) std::cerr << "  " << v.detail << "\n";
    return kExitValidation;
}

int cmd_generate(const CommonOptions& opt) {
    ensure_out(opt);
    for (const std::string& id : split(opt.datasets, ',')) {
        const auto [lo, hi] = parse_levels(opt.levels);
        for (int n = lo; n <= hi; ++n) {
            const Mesh mesh = generate(id, n, opt.seed);
            if (const int rc = require_valid(mesh, id, n)) return rc;
            save_mesh(mesh, mesh_path(opt, id, n));
            std::cout << mesh_path(opt, id, n) << ": " << mesh.num_elements()
                      << " elements, h = " << fmt(mesh_size(mesh)) << "\n";
        }
    }
    return 0;
}

int cmd_metrics(const CommonOptions& opt) {
    ensure_out(opt);
    for (const std::string& id : split(opt.datasets, ',')) {
        const auto [lo, hi] = parse_levels(opt.levels);
        for (int n = lo; n <= hi; ++n) {
            const Mesh mesh = generate(id, n, opt.seed);
            if (const int rc = require_valid(mesh, id, n)) return rc;
            const std::vector<PolygonMetrics> per_element = compute_mesh_metrics(mesh);

            std::vector<std::string> rows;
            std::string header = "element";
            for (MetricId m : kAllMetrics) header += "," + metric_name(m);
            rows.push_back(header);
            for (std::size_t e = 0; e < per_element.size(); ++e) {
                std::string row = std::to_string(e);
                for (MetricId m : kAllMetrics)
                    row += "," + fmt(metric_value(per_element[e], m));
                rows.push_back(row);
            }
            for (const MeshMetric& mm : aggregate_all(per_element)) {
                std::string row = metric_name(mm.metric) + "_" + aggregation_name(mm.aggregation);
                for (MetricId m : kAllMetrics)
                    row += m == mm.metric ? "," + fmt(mm.value) : ",";
                rows.push_back(row);
            }
            std::string safe = id;
            for (char& c : safe)
                if (c == ':') c = '_';
            write_csv((fs::path(opt.out) / ("metrics_" + safe + "_" + std::to_string(n) + ".csv"))
                          .string(),
                      rows);
        }
    }
    return 0;
}

int cmd_solve(const CommonOptions& opt, const std::string& config_path) {
    ensure_out(opt);
    SolverConfig base_config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read solver config '" << config_path << "'\n";
            return kExitValidation;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        base_config = parse_solver_config(ss.str());
    } else {
        base_config.scheme = parse_stabilization(opt.stab);
        base_config.solver = parse_solver_kind(opt.solver);
    }
    const TestCase test = parse_test_case(opt.test);

    std::vector<std::string> rows = {solve_report_csv_header()};
    for (const std::string& id : split(opt.datasets, ',')) {
        const auto [lo, hi] = parse_levels(opt.levels);
        for (int n = lo; n <= hi; ++n) {
            const Mesh mesh = generate(id, n, opt.seed);
            if (const int rc = require_valid(mesh, id, n)) return rc;
            for (int k : parse_int_list(opt.ks)) {
                SolverConfig config = base_config;
                config.k = k;
                try {
                    const SolveReport rep = analyze(mesh, config, test, id, n);
                    rows.push_back(solve_report_csv_row(rep));
                    std::cout << id << " n=" << n << " k=" << k << " dofs=" << rep.dof_count
                              << " P1=" << fmt(rep.rel_h1_energy) << " P3=" << fmt(rep.rel_l2)
                              << "\n";
                } catch (const SolverError& err) {
                    std::cerr << "solver failure on " << id << " level " << n << " k=" << k
                              << ": " << err.what() << "\n";
                    return kExitSolver;
                }
            }
        }
    }
    write_csv((fs::path(opt.out) / "solve.csv").string(), rows);
    std::ofstream cfg(fs::path(opt.out) / "solver_config.txt");
    cfg << solver_config_to_string(base_config);
    return 0;
}

int cmd_indicator(const CommonOptions& opt) {
    ensure_out(opt);
    std::vector<std::string> rows = {"dataset,level,rho1_mean,rho2_mean,rho3_mean,rho4_mean,rho"};
    std::map<std::string, PlotSeries> series;
    for (const std::string& id : split(opt.datasets, ',')) {
        const auto [lo, hi] = parse_levels(opt.levels);
        for (int n = lo; n <= hi; ++n) {
            const Mesh mesh = generate(id, n, opt.seed);
            if (const int rc = require_valid(mesh, id, n)) return rc;
            const QualityReport rep = quality_report(mesh);
            rows.push_back(id + "," + std::to_string(n) + "," + fmt(rep.rho1_mean) + "," +
                           fmt(rep.rho2_mean) + "," + fmt(rep.rho3_mean) + "," +
                           fmt(rep.rho4_mean) + "," + fmt(rep.rho));
            PlotSeries& s = series[id];
            s.label = id;
            s.x.push_back(n);
            s.y.push_back(rep.rho);
        }
    }
    if (wants(opt, "csv")) write_csv((fs::path(opt.out) / "indicator.csv").string(), rows);
    if (wants(opt, "svg")) {
        PlotSpec spec;
        spec.title = "Mesh quality indicator per refinement level";
        spec.x_label = "level";
        spec.y_label = "rho";
        for (auto& [id, s] : series) spec.series.push_back(s);
        write_svg_plot((fs::path(opt.out) / "indicator.svg").string(), spec);
    }
    return 0;
}

int cmd_correlate(const CommonOptions& opt) {
    ensure_out(opt);
    const TestCase test = parse_test_case(opt.test);
    const SolverConfig proto{1, parse_stabilization(opt.stab), parse_solver_kind(opt.solver),
                             1e-12};

    for (int k : parse_int_list(opt.ks)) {
        std::vector<StudyRun> runs;
        std::vector<std::string> run_rows = {"class,t," + solve_report_csv_header()};
        for (ParametricClass cls : kAllParametricClasses) {
            for (int j = 0; j <= 20; ++j) {
                const double t = j / 20.0;
                const Mesh mesh = gen_parametric(cls, t);
                if (const int rc =
                        require_valid(mesh, "parametric:" + parametric_class_name(cls), j))
                    return rc;
                SolverConfig config = proto;
                config.k = k;
                StudyRun run;
                try {
                    run.report = analyze(mesh, config, test, parametric_class_name(cls), j);
                } catch (const SolverError& err) {
                    std::cerr << "solver failure on parametric:" << parametric_class_name(cls)
                              << " t=" << t << ": " << err.what() << "\n";
                    return kExitSolver;
                }
                run.metrics = aggregate_all(compute_mesh_metrics(mesh));
                run_rows.push_back(parametric_class_name(cls) + "," + fmt(t) + "," +
                                   solve_report_csv_row(run.report));
                runs.push_back(std::move(run));
            }
        }
        const CorrelationMatrix matrix = correlation_study(runs);

        std::vector<std::string> rows;
        std::string header = "metric_aggregation";
        for (const std::string& idx : performance_index_names()) header += "," + idx;
        rows.push_back(header);
        for (MetricId m : kAllMetrics) {
            for (Aggregation a : kAllAggregations) {
                std::string row = metric_name(m) + "_" + aggregation_name(a);
                for (const auto& cell : matrix.cells) {
                    if (cell.metric == m && cell.aggregation == a)
                        row += "," + (cell.defined ? fmt(cell.value) : std::string("nan"));
                }
                rows.push_back(row);
            }
        }
        const std::string suffix = "_k" + std::to_string(k) + "_" + opt.test;
        if (wants(opt, "csv")) {
            write_csv((fs::path(opt.out) / ("correlation" + suffix + ".csv")).string(), rows);
            write_csv((fs::path(opt.out) / ("runs" + suffix + ".csv")).string(), run_rows);
        }
        if (wants(opt, "svg")) {
            // scatter of the headline pair: worst (max) edge count vs P6
            PlotSpec spec;
            spec.title = "max NS vs P6 (k=" + std::to_string(k) + ", " + opt.test + ")";
            spec.x_label = "max NS";
            spec.y_label = "P6";
            spec.log_y = true;
            PlotSeries s;
            s.label = "meshes";
            s.line = false;
            for (const StudyRun& run : runs) {
                for (const MeshMetric& mm : run.metrics)
                    if (mm.metric == MetricId::NS && mm.aggregation == Aggregation::Worst)
                        s.x.push_back(mm.value);
                s.y.push_back(run.report.err_const);
            }
            spec.series.push_back(s);
            write_svg_plot((fs::path(opt.out) / ("scatter_ns_p6" + suffix + ".svg")).string(),
                           spec);

            PlotSpec spec2;
            spec2.title = "min SR vs P1 (k=" + std::to_string(k) + ", " + opt.test + ")";
            spec2.x_label = "min SR";
            spec2.y_label = "P1";
            spec2.log_y = true;
            PlotSeries s2;
            s2.label = "meshes";
            s2.line = false;
            for (const StudyRun& run : runs) {
                for (const MeshMetric& mm : run.metrics)
                    if (mm.metric == MetricId::SR && mm.aggregation == Aggregation::Worst)
                        s2.x.push_back(mm.value);
                s2.y.push_back(run.report.rel_h1_energy);
            }
            spec2.series.push_back(s2);
            write_svg_plot((fs::path(opt.out) / ("scatter_sr_p1" + suffix + ".svg")).string(),
                           spec2);
        }
    }
    return 0;
}

struct SolveRow {
    std::string dataset;
    int level, k;
    double dofs, p1, p3, condG, condH, piN, pi0;
};

int cmd_report(const CommonOptions& opt) {
    const fs::path dir(opt.out);
    const fs::path solve_csv = dir / "solve.csv";
    if (!fs::exists(solve_csv)) {
        std::cerr << "missing " << solve_csv.string()
                  << "; run the 'solve' command first to produce it\n";
        return kExitValidation;
    }

    std::ifstream in(solve_csv);
    std::string line;
    std::getline(in, line);  // header
    std::vector<SolveRow> rows;
    while (std::getline(in, line)) {
        const auto parts = split(line, ',');
        if (parts.size() < 19) continue;
        SolveRow row;
        row.dataset = parts[0];
        row.level = std::stoi(parts[1]);
        row.k = std::stoi(parts[2]);
        row.dofs = std::stod(parts[4]);
        row.p1 = std::stod(parts[7]);
        row.p3 = std::stod(parts[9]);
        row.condG = std::stod(parts[15]);
        row.condH = std::stod(parts[16]);
        row.piN = std::stod(parts[17]);
        row.pi0 = std::stod(parts[18]);
        rows.push_back(row);
    }
    if (rows.empty()) {
        std::cerr << "no rows in " << solve_csv.string() << "; rerun the 'solve' command\n";
        return kExitValidation;
    }

    // convergence plots: one per error norm, series per (dataset, k)
    for (const auto& [norm_name, member] :
         std::vector<std::pair<std::string, double SolveRow::*>>{{"H1", &SolveRow::p1},
                                                                 {"L2", &SolveRow::p3}}) {
        PlotSpec spec;
        spec.title = norm_name + " error vs DOFs";
        spec.x_label = "DOFs";
        spec.y_label = "relative error";
        spec.log_x = true;
        spec.log_y = true;
        std::map<std::string, PlotSeries> series;
        int max_k = 1;
        for (const SolveRow& row : rows) {
            const std::string key = row.dataset + " k=" + std::to_string(row.k);
            PlotSeries& s = series[key];
            s.label = key;
            s.x.push_back(row.dofs);
            s.y.push_back(row.*member);
            max_k = std::max(max_k, row.k);
        }
        for (auto& [key, s] : series) spec.series.push_back(s);
        for (int k = 1; k <= max_k; ++k) {
            const double rate = (norm_name == "H1" ? k : k + 1) / 2.0;
            double x0 = 0.0, y0 = 0.0;
            for (const SolveRow& row : rows)
                if (row.k == k && row.dofs > x0) {
                    x0 = row.dofs;
                    y0 = norm_name == "H1" ? row.p1 : row.p3;
                }
            if (x0 > 0.0 && y0 > 0.0)
                spec.triangles.push_back(
                    {x0 / 4.0, y0 * 2.0, 4.0, -rate, std::to_string(k) + ":" +
                                                          (norm_name == "H1" ? "" : "+1")});
        }
        write_svg_plot((dir / ("convergence_" + norm_name + ".svg")).string(), spec);
    }

    // Table-2 style diagnostics summary
    std::ofstream md(dir / "summary.md");
    md << "# Run summary\n\n## Numerical diagnostics (log10, elementwise maxima)\n\n";
    md << "| dataset | k | cond(G) | cond(H) | PiNabla*D-I | Pi0*D-I |\n";
    md << "|---|---|---|---|---|---|\n";
    std::map<std::pair<std::string, int>, SolveRow> last;
    for (const SolveRow& row : rows) last[{row.dataset, row.k}] = row;
    for (const auto& [key, row] : last) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "| %s | %d | %.1f | %.1f | %.1f | %.1f |\n",
                      key.first.c_str(), key.second, row.condG, row.condH, row.piN, row.pi0);
        md << buf;
    }
    md << "\nPlots: convergence_H1.svg, convergence_L2.svg";
    if (fs::exists(dir / "indicator.svg")) md << ", indicator.svg";
    md << "\n";
    std::cout << "report written to " << (dir / "summary.md").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polygonal-mesh quality and VEM performance workbench"};
    app.require_subcommand(1);

    CommonOptions gen_opt, met_opt, sol_opt, ind_opt, cor_opt, rep_opt;
    std::string config_path;

    add_common(app.add_subcommand("generate", "write POLYMESH dataset files"), gen_opt, false);
    add_common(app.add_subcommand("metrics", "polygon quality metric tables"), met_opt, false);
    auto* solve_cmd = app.add_subcommand("solve", "run the VEM and collect performance indexes");
    add_common(solve_cmd, sol_opt, true);
    solve_cmd->add_option("--config", config_path, "solver config file (key=value)");
    add_common(app.add_subcommand("indicator", "geometry-only quality indicator"), ind_opt,
               false);
    auto* cor_cmd = app.add_subcommand("correlate", "metric/performance Spearman study");
    add_common(cor_cmd, cor_opt, true);
    add_common(app.add_subcommand("report", "assemble plots and summary from CSV outputs"),
               rep_opt, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("generate")) return cmd_generate(gen_opt);
        if (app.got_subcommand("metrics")) return cmd_metrics(met_opt);
        if (app.got_subcommand("solve")) return cmd_solve(sol_opt, config_path);
        if (app.got_subcommand("indicator")) return cmd_indicator(ind_opt);
        if (app.got_subcommand("correlate")) return cmd_correlate(cor_opt);
        if (app.got_subcommand("report")) return cmd_report(rep_opt);
    } catch (const SolverError& err) {
        std::cerr << "solver failure: " << err.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
