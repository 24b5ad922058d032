// Command-line front end: single runs, parameter sweeps and figure
// reproduction for quantum-walk search and state transfer on complete
// multipartite graphs with loops.
//
// Exit codes: 0 success, 2 invalid arguments, 3 spec infeasible for the
// requested backend.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "qwalk/io.hpp"
#include "qwalk/protocols.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/svg.hpp"
#include "qwalk/sweep.hpp"

namespace {

using namespace qwalk;

constexpr int exit_ok = 0, exit_bad_args = 2, exit_infeasible = 3;

struct RunOptions {
    int n = 0;  // vertices per partition
    int m = 0;  // partitions
    double loop_weight = 1.0;
    int steps = -1;
    std::string backend = "full";
    std::string config = "same";
    std::string init = "loop";
    std::string out = "-";
    std::string format = "csv";
    std::string svg_path;
    std::optional<unsigned> seed;
};

void add_spec_flags(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--n", opt.n, "vertices per partition (N)")->required();
    cmd->add_option("--m", opt.m, "number of partitions (M)")->required();
    cmd->add_option("--loop-weight", opt.loop_weight, "loop weight l (default 1)");
}

void add_output_flags(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--out", opt.out, "output path, '-' for stdout (default)");
    cmd->add_option("--format", opt.format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--svg", opt.svg_path, "also write an SVG plot here");
    cmd->add_option("--seed", opt.seed, "randomize vertex placement");
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

GraphSpec spec_of(const RunOptions& opt) {
    const GraphSpec spec{opt.m, opt.n, opt.loop_weight};
    validate(spec);
    return spec;
}

Vertex random_vertex(const GraphSpec& spec, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick_p(1, spec.partitions);
    std::uniform_int_distribution<int> pick_i(1, spec.partition_size);
    return {pick_p(rng), pick_i(rng)};
}

// marked vertex, or sender/receiver pair in the requested configuration
std::pair<Vertex, Vertex> place_vertices(const GraphSpec& spec, const RunOptions& opt,
                                         bool pair_needed) {
    if (pair_needed && opt.config == "same" && spec.partition_size < 2)
        throw CLI::ValidationError(
            "--config same needs at least two vertices per partition");
    if (!opt.seed) {
        if (!pair_needed) return {Vertex{1, 1}, Vertex{1, 1}};
        return {Vertex{1, 1}, opt.config == "same" ? Vertex{1, 2} : Vertex{2, 1}};
    }
    std::mt19937 rng(*opt.seed);
    const Vertex a = random_vertex(spec, rng);
    if (!pair_needed) return {a, a};
    Vertex b = a;
    while (b == a || (opt.config == "same") != (b.partition == a.partition))
        b = random_vertex(spec, rng);
    return {a, b};
}

std::vector<std::pair<double, double>> series_xy(const RunRecord& rec, int which = 0) {
    std::vector<std::pair<double, double>> xy;
    for (const SeriesPoint& p : rec.series)
        xy.emplace_back(p.t, which == 0   ? p.value
                             : which == 1 ? p.loop_component
                                          : p.arc_component);
    return xy;
}

std::vector<std::pair<double, double>> curve_xy(const std::function<double(double)>& f,
                                                double t_max, int samples = 400) {
    std::vector<std::pair<double, double>> xy;
    for (int k = 0; k <= samples; ++k) {
        const double t = t_max * k / samples;
        xy.emplace_back(t, f(t));
    }
    return xy;
}

void emit_record(const RunRecord& rec, const RunOptions& opt) {
    write_file(opt.out,
               opt.format == "csv" ? curve_csv(rec) : to_json(rec).dump(2) + "\n");
}

void emit_sweep(const SweepResult& res, const RunOptions& opt) {
    write_file(opt.out,
               opt.format == "csv" ? sweep_csv(res) : to_json(res).dump(2) + "\n");
}

PlotSeries reference_slope(const std::vector<SweepPoint>& pts, double exponent,
                           const std::string& label, const std::string& color) {
    double anchor_m = pts.front().M, anchor_y = pts.front().metric;
    for (const SweepPoint& p : pts)
        if (p.M == anchor_m) anchor_y = std::max(anchor_y, p.metric);
    double m_hi = anchor_m;
    for (const SweepPoint& p : pts) m_hi = std::max<double>(m_hi, p.M);
    PlotSeries ref{label, {}, color, true, true};
    ref.points = {{anchor_m, anchor_y},
                  {m_hi, anchor_y * std::pow(m_hi / anchor_m, exponent)}};
    return ref;
}

void plot_sweep(const SweepResult& res, const std::string& title, bool second_ref,
                const std::string& path) {
    PlotSpec plot;
    plot.title = title;
    plot.x_label = "M";
    plot.y_label = res.metric_name;
    plot.log_x = plot.log_y = true;
    const std::vector<std::string> palette = {"#555555", "#1f77b4", "#8c564b"};
    std::vector<int> ns;
    for (const SweepPoint& p : res.points)
        if (std::find(ns.begin(), ns.end(), p.N) == ns.end()) ns.push_back(p.N);
    for (std::size_t k = 0; k < ns.size(); ++k) {
        PlotSeries s{"N=" + std::to_string(ns[k]), {}, palette[k % palette.size()],
                     false};
        for (const SweepPoint& p : res.points)
            if (p.N == ns[k]) s.points.emplace_back(p.M, p.metric);
        plot.series.push_back(s);
    }
    plot.series.push_back(reference_slope(res.points, -1.0, "1/M", "#c00000"));
    if (second_ref)
        plot.series.push_back(reference_slope(res.points, -2.0, "1/M^2", "#e08000"));
    write_file(path, render_svg(plot));
}

int cmd_search(RunOptions& opt) {
    const GraphSpec spec = spec_of(opt);
    const Vertex m = place_vertices(spec, opt, false).first;
    const int steps = opt.steps >= 0
                          ? opt.steps
                          : static_cast<int>(std::llround(1.5 * search_T(spec)));
    const RunRecord rec = run_search(spec, m, steps, backend_from_name(opt.backend));
    emit_record(rec, opt);
    if (!opt.svg_path.empty()) {
        PlotSpec plot;
        plot.title = "search success probability";
        plot.x_label = "t";
        plot.y_label = "P";
        plot.series.push_back({"simulated", series_xy(rec), "#000000", false});
        plot.series.push_back({"loop part", series_xy(rec, 1), "#1f77b4", false});
        if (spec.loop_weight == 1.0 && spec.partition_size >= 2)
            plot.series.push_back(
                {"analytic",
                 curve_xy([&](double t) { return search_curve(spec, t).total; }, steps),
                 "#c00000", true});
        write_file(opt.svg_path, render_svg(plot));
    }
    return exit_ok;
}

int cmd_transfer(RunOptions& opt) {
    const GraphSpec spec = spec_of(opt);
    const auto [s, r] = place_vertices(spec, opt, true);
    const InitState init = opt.init == "loop" ? InitState::loop : InitState::local_uniform;
    const int steps =
        opt.steps >= 0 ? opt.steps
                       : static_cast<int>(std::llround(
                             opt.config == "same" ? 1.5 * sta_same_first_max(spec).t
                                                  : 1.2 * sta_diff_T(spec)));
    const RunRecord rec =
        run_state_transfer(spec, s, r, init, steps, backend_from_name(opt.backend));
    emit_record(rec, opt);
    if (!opt.svg_path.empty()) {
        PlotSpec plot;
        plot.title = "state transfer fidelity";
        plot.x_label = "t";
        plot.y_label = "F";
        plot.series.push_back({"simulated", series_xy(rec), "#000000", false});
        plot.series.push_back({"loop part", series_xy(rec, 1), "#1f77b4", false});
        if (spec.loop_weight == 1.0 && init == InitState::loop) {
            const auto curve = opt.config == "same"
                                   ? std::function<double(double)>([spec](double t) {
                                         return sta_same_curve(spec, t).total;
                                     })
                                   : std::function<double(double)>([spec](double t) {
                                         return sta_diff_curve(spec, t).total;
                                     });
            plot.series.push_back({"analytic", curve_xy(curve, steps), "#c00000", true});
        }
        write_file(opt.svg_path, render_svg(plot));
    }
    return exit_ok;
}

int cmd_switch(RunOptions& opt) {
    const GraphSpec spec = spec_of(opt);
    const auto [s, r] = place_vertices(spec, opt, true);
    const int T =
        opt.steps >= 0 ? opt.steps : static_cast<int>(std::llround(search_T(spec)));
    const SwitchRun run = run_switch_transfer(spec, s, r, T, backend_from_name(opt.backend));
    emit_record(run.record, opt);
    if (!opt.svg_path.empty()) {
        PlotSpec plot;
        plot.title = "active-switch transfer, hand-over at t=" + std::to_string(T);
        plot.x_label = "t";
        plot.y_label = "F";
        plot.series.push_back(
            {"receiver probability", series_xy(run.record), "#000000", false});
        write_file(opt.svg_path, render_svg(plot));
    }
    return exit_ok;
}

struct SweepOptions {
    std::string scenario;
    std::vector<int> n_list;
    std::vector<int> m_list;
};

int cmd_sweep(RunOptions& opt, SweepOptions& sopt) {
    const SweepKind kind = sweep_kind_from_name(sopt.scenario);
    if (sopt.n_list.empty()) sopt.n_list = default_sweep_n();
    if (sopt.m_list.empty()) sopt.m_list = default_sweep_m();
    const TransferConfig config = opt.config == "same" ? TransferConfig::same_partition
                                                       : TransferConfig::diff_partition;
    const SweepResult res = sweep(kind, sopt.n_list, sopt.m_list,
                                  backend_from_name(opt.backend), config, opt.loop_weight);
    emit_sweep(res, opt);
    std::cerr << "fitted log-log slope " << res.fit.slope << " (rms residual "
              << res.fit.rms_residual << ")\n";
    if (!opt.svg_path.empty())
        plot_sweep(res, sopt.scenario + " scaling", kind != SweepKind::search,
                   opt.svg_path);
    return exit_ok;
}

int cmd_figure(int number, RunOptions& opt) {
    const GraphSpec showcase{100, 40};  // N=40, M=100 runs through all curve figures
    if (opt.out == "-" && opt.svg_path.empty()) {
        opt.out = "fig" + std::to_string(number) + ".csv";
        opt.svg_path = "fig" + std::to_string(number) + ".svg";
        std::cerr << "writing " << opt.out << " and " << opt.svg_path << "\n";
    }
    const Backend backend = backend_from_name(opt.backend);
    PlotSpec plot;
    plot.x_label = "t";

    switch (number) {
        case 2:
        case 5:
        case 7:
        case 9: {
            const SweepKind kind = number == 2   ? SweepKind::search
                                   : number == 5 ? SweepKind::sta_same
                                   : number == 7 ? SweepKind::sta_diff
                                                 : SweepKind::active_switch;
            const SweepResult res =
                sweep(kind, default_sweep_n(), default_sweep_m(),
                      backend_from_name(opt.backend),
                      opt.config == "diff" ? TransferConfig::diff_partition
                                           : TransferConfig::same_partition);
            emit_sweep(res, opt);
            if (!opt.svg_path.empty())
                plot_sweep(res, sweep_kind_name(kind) + " scaling", number != 2,
                           opt.svg_path);
            return exit_ok;
        }
        case 1: {
            const RunRecord rec = run_search(showcase, {1, 1}, 150, backend);
            emit_record(rec, opt);
            plot.title = "search on N=40, M=100";
            plot.y_label = "P";
            plot.series.push_back({"P(t)", series_xy(rec), "#000000", false});
            plot.series.push_back({"loop part", series_xy(rec, 1), "#1f77b4", false});
            plot.series.push_back({"arc part", series_xy(rec, 2), "#2ca02c", false});
            plot.series.push_back(
                {"analytic",
                 curve_xy([&](double t) { return search_curve(showcase, t).total; }, 150),
                 "#c00000", true});
            plot.series.push_back(
                {"analytic loop",
                 curve_xy([&](double t) { return search_curve(showcase, t).loop; }, 150),
                 "#c00000", true, true});
            break;
        }
        case 3: {
            const RunRecord rec = run_state_transfer(showcase, {1, 1}, {1, 2},
                                                     InitState::local_uniform, 1000,
                                                     backend);
            emit_record(rec, opt);
            plot.title = "equal-weight start, sender and receiver in one partition";
            plot.y_label = "F";
            plot.series.push_back({"F(t)", series_xy(rec), "#000000", true});
            break;
        }
        case 4: {
            const RunRecord rec =
                run_state_transfer(showcase, {1, 1}, {1, 2}, InitState::loop, 260, backend);
            emit_record(rec, opt);
            plot.title = "loop start, sender and receiver in one partition";
            plot.y_label = "F";
            plot.series.push_back({"F(t)", series_xy(rec), "#000000", false});
            plot.series.push_back({"loop part", series_xy(rec, 1), "#1f77b4", false});
            plot.series.push_back({"arc part", series_xy(rec, 2), "#2ca02c", false});
            plot.series.push_back(
                {"analytic",
                 curve_xy([&](double t) { return sta_same_curve(showcase, t).total; }, 260),
                 "#c00000", true});
            plot.series.push_back(
                {"analytic loop",
                 curve_xy([&](double t) { return sta_same_curve(showcase, t).loop; }, 260),
                 "#c00000", true, true});
            break;
        }
        case 6: {
            const RunRecord rec =
                run_state_transfer(showcase, {1, 1}, {2, 1}, InitState::loop, 170, backend);
            emit_record(rec, opt);
            plot.title = "loop start, sender and receiver in different partitions";
            plot.y_label = "F";
            plot.series.push_back({"F(t)", series_xy(rec), "#000000", false});
            plot.series.push_back({"loop part", series_xy(rec, 1), "#1f77b4", false});
            plot.series.push_back({"arc part", series_xy(rec, 2), "#2ca02c", false});
            plot.series.push_back(
                {"analytic",
                 curve_xy([&](double t) { return sta_diff_curve(showcase, t).total; }, 170),
                 "#c00000", true});
            plot.series.push_back(
                {"analytic loop",
                 curve_xy([&](double t) { return sta_diff_curve(showcase, t).loop; }, 170),
                 "#c00000", true, true});
            break;
        }
        case 8: {
            const int T = static_cast<int>(std::llround(search_T(showcase)));
            const SwitchRun run = run_switch_transfer(showcase, {1, 1}, {1, 2}, T, backend);
            emit_record(run.record, opt);
            plot.title = "original transfer vs active switch (same partition)";
            plot.y_label = "F";
            plot.series.push_back(
                {"active switch", series_xy(run.record), "#000000", false});
            plot.series.push_back(
                {"original",
                 curve_xy([&](double t) { return sta_same_curve(showcase, t).total; },
                          2.0 * T),
                 "#c00000", true});
            break;
        }
        default:
            throw CLI::ValidationError("figure number must be 1..9");
    }
    if (!opt.svg_path.empty()) write_file(opt.svg_path, render_svg(plot));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coined quantum-walk search and state transfer on complete "
                 "M-partite graphs with loops"};
    app.require_subcommand(1);

    RunOptions opt;
    SweepOptions sopt;
    int figure_number = 0;

    CLI::App* search =
        app.add_subcommand("search", "one marked vertex, success probability");
    add_spec_flags(search, opt);
    search->add_option("--steps", opt.steps, "number of steps (default ~1.5 T)");
    search->add_option("--backend", opt.backend, "full or reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    add_output_flags(search, opt);

    CLI::App* transfer = app.add_subcommand("transfer", "two marked vertices, fidelity");
    add_spec_flags(transfer, opt);
    transfer->add_option("--steps", opt.steps, "number of steps");
    transfer->add_option("--backend", opt.backend, "full or reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    transfer->add_option("--config", opt.config, "same or diff partition (default same)")
        ->check(CLI::IsMember({"same", "diff"}));
    transfer->add_option("--init", opt.init, "loop or local-uniform (default loop)")
        ->check(CLI::IsMember({"loop", "local-uniform"}));
    add_output_flags(transfer, opt);

    CLI::App* switch_cmd =
        app.add_subcommand("switch", "active-switch transfer, marked coin hand-over");
    add_spec_flags(switch_cmd, opt);
    switch_cmd->add_option("--steps", opt.steps,
                           "steps per phase T (default: search optimum)");
    switch_cmd->add_option("--backend", opt.backend, "full or reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    switch_cmd->add_option("--config", opt.config, "same or diff partition")
        ->check(CLI::IsMember({"same", "diff"}));
    add_output_flags(switch_cmd, opt);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "scaling of the miss metric over (N, M)");
    sweep_cmd
        ->add_option("--scenario", sopt.scenario, "search, sta-same, sta-diff or switch")
        ->required()
        ->check(CLI::IsMember({"search", "sta-same", "sta-diff", "switch"}));
    sweep_cmd->add_option("--n-list", sopt.n_list, "N values (default 10,50,100)")
        ->delimiter(',');
    sweep_cmd->add_option("--m-list", sopt.m_list, "M values (default 25,...,400)")
        ->delimiter(',');
    sweep_cmd->add_option("--loop-weight", opt.loop_weight, "loop weight l");
    sweep_cmd->add_option("--backend", opt.backend, "reduced (default) or full")
        ->check(CLI::IsMember({"full", "reduced"}));
    sweep_cmd->add_option("--config", opt.config, "switch scenario placement")
        ->check(CLI::IsMember({"same", "diff"}));
    add_output_flags(sweep_cmd, opt);

    CLI::App* figure = app.add_subcommand("figure", "reproduce one of the nine figures");
    figure->add_option("number", figure_number, "figure number 1..9")
        ->required()
        ->check(CLI::Range(1, 9));
    figure->add_option("--backend", opt.backend, "override the default backend")
        ->check(CLI::IsMember({"full", "reduced"}));
    figure->add_option("--config", opt.config, "switch-figure placement")
        ->check(CLI::IsMember({"same", "diff"}));
    add_output_flags(figure, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_bad_args;
    }

    try {
        if (app.got_subcommand(sweep_cmd) && sweep_cmd->count("--backend") == 0)
            opt.backend = "reduced";
        if (app.got_subcommand(figure) && figure->count("--backend") == 0 &&
            (figure_number == 2 || figure_number == 5 || figure_number == 7 ||
             figure_number == 9))
            opt.backend = "reduced";
        if (app.got_subcommand(search)) return cmd_search(opt);
        if (app.got_subcommand(transfer)) return cmd_transfer(opt);
        if (app.got_subcommand(switch_cmd)) return cmd_switch(opt);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(opt, sopt);
        if (app.got_subcommand(figure)) return cmd_figure(figure_number, opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_args;
    } catch (const std::invalid_argument& e) {
        // spec shape errors are argument errors; what the model builders
        // reject beyond that is a backend-feasibility problem
        const std::string what = e.what();
        std::cerr << (what.find("GraphSpec") != std::string::npos ? "error: "
                                                                  : "infeasible: ")
                  << what << "\n";
        return what.find("GraphSpec") != std::string::npos ? exit_bad_args
                                                           : exit_infeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_infeasible;
    }
    return exit_bad_args;
}
