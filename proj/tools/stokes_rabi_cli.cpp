// stokes-rabi: classify, trace, render and sweep the Stokes graphs of the
// quadratic differential attached to the Rabi problem with real parameters.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stokes/report.hpp"
#include "stokes/svg_render.hpp"

namespace {

using namespace stokes;

struct ParamSource {
    std::optional<double> delta, energy, gsq;
    std::vector<double> coeffs;      // c3,c2,c1,c0
    std::vector<double> asymptotic;  // Ea, Da

    int kinds() const {
        int n = 0;
        if (delta || energy || gsq) ++n;
        if (!coeffs.empty()) ++n;
        if (!asymptotic.empty()) ++n;
        return n;
    }
};

void write_out(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
}

std::string dump_json(const json& j, bool pretty) {
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("STOKES_RABI_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

struct GridAxis {
    std::string name;
    double lo = 0.0, hi = 0.0;
    int count = 1;
    double at(int i) const {
        return (count <= 1) ? lo : lo + (hi - lo) * double(i) / double(count - 1);
    }
};

std::vector<GridAxis> parse_grid(const std::string& spec) {
    std::vector<GridAxis> axes;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        GridAxis ax;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--grid", "expected name=lo:hi:count");
        ax.name = item.substr(0, eq);
        std::string rest = item.substr(eq + 1);
        double lo, hi;
        int n;
        if (std::sscanf(rest.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
            throw CLI::ValidationError("--grid", "expected name=lo:hi:count with count >= 1");
        ax.lo = lo;
        ax.hi = hi;
        ax.count = n;
        axes.push_back(ax);
    }
    if (axes.empty() || axes.size() > 2)
        throw CLI::ValidationError("--grid", "need one or two axes");
    return axes;
}

json params_json(const RabiParams& p) {
    return json{{"delta_sq", jnum(p.delta_sq)}, {"energy", jnum(p.energy)},
                {"g_sq", jnum(p.g_sq)}};
}

int run_classify(const ParamSource& src, const std::string& out_path,
                 const std::string& svg_path, bool pretty, bool with_graph,
                 const Tolerances& tols) {
    try {
        ClassifyOutcome outcome;
        if (!src.asymptotic.empty()) {
            AsymptoticParams ap{src.asymptotic[0], src.asymptotic[1]};
            AsymptoticModel model = asymptotic_model(ap);
            Region region = asymptotic_region(ap);
            if (ap.Delta_a == 0.0 && ap.E_a == -1.0) {
                // Q reduces to -dz^2: the Stokes graph is empty.
                json rep{{"schema_version", 1},
                         {"asymptotic", json{{"E_a", jnum(ap.E_a)},
                                             {"Delta_a", jnum(ap.Delta_a)},
                                             {"region", to_string(region)}}},
                         {"note", "limit differential -dz^2: empty Stokes graph"},
                         {"faces", 1}};
                write_out(dump_json(rep, pretty), out_path);
                if (!svg_path.empty()) write_out(render_empty_svg(), svg_path);
                return 0;
            }
            outcome = classify_coeffs(model.coeffs(), {}, with_graph, tols);
            outcome.report["asymptotic"] = json{{"E_a", jnum(ap.E_a)},
                                                {"Delta_a", jnum(ap.Delta_a)},
                                                {"region", to_string(region)}};
        } else if (!src.coeffs.empty()) {
            QuarticCoeffs c{src.coeffs[0], src.coeffs[1], src.coeffs[2], src.coeffs[3]};
            outcome = classify_coeffs(c, {}, with_graph, tols);
        } else {
            RabiParams p;
            double d = src.delta.value_or(0.0);
            p.delta_sq = d * d;
            p.energy = src.energy.value_or(0.0);
            p.g_sq = src.gsq.value_or(1.0);
            outcome = classify_params(p, {}, with_graph, tols);
        }
        write_out(dump_json(outcome.report, pretty), out_path);
        if (!svg_path.empty() && outcome.traced)
            write_out(render_svg(outcome.graph, outcome.faces, outcome.qd), svg_path);
        return outcome.exit_code;
    } catch (const DepressedError& e) {
        json err{{"error", e.what()},
                 {"P0_at_minus1", jnum(e.p0_at_minus1)},
                 {"P0_at_plus1", jnum(e.p0_at_plus1)}};
        write_out(dump_json(err, pretty), out_path);
        return 3;
    } catch (const StokesError& e) {
        json err{{"error", e.what()}};
        write_out(dump_json(err, pretty), out_path);
        return 2;
    }
}

int run_sweep(const ParamSource& src, const std::string& grid_spec, const std::string& out_path,
              int threads, bool timings, const std::string& label_mode) {
    auto axes = parse_grid(grid_spec);
    const bool asym_grid = (axes[0].name == "Ea" || axes[0].name == "Da");
    const int n_outer = axes[0].count;
    const int n_inner = axes.size() > 1 ? axes[1].count : 1;
    const int total = n_outer * n_inner;
    threads = resolve_threads(threads);

    std::vector<std::string> rows(static_cast<size_t>(total));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= total) return;
            int i = idx / n_inner, j = idx % n_inner;
            json row;
            auto t0 = std::chrono::steady_clock::now();
            try {
                double v0 = axes[0].at(i);
                double v1 = axes.size() > 1 ? axes[1].at(j) : 0.0;
                if (asym_grid) {
                    AsymptoticParams ap;
                    for (size_t k = 0; k < axes.size(); ++k) {
                        double v = (k == 0) ? v0 : v1;
                        if (axes[k].name == "Ea") ap.E_a = v;
                        else if (axes[k].name == "Da") ap.Delta_a = v;
                        else throw StokesError("sweep: mixed asymptotic/physical grid");
                    }
                    row["E_a"] = jnum(ap.E_a);
                    row["Delta_a"] = jnum(ap.Delta_a);
                    row["region"] = to_string(asymptotic_region(ap));
                    AsymptoticModel model = asymptotic_model(ap);
                    row["coefficients"] = to_json(model.coeffs());
                    RootClass rc = classify_roots(model.coeffs());
                    row["root_class"] = to_string(rc.pattern);
                    row["invariants"] = to_json(lagrange_invariants(model.coeffs()));
                } else {
                    RabiParams p;
                    double d = src.delta.value_or(0.0);
                    p.delta_sq = d * d;
                    p.energy = src.energy.value_or(0.0);
                    p.g_sq = src.gsq.value_or(1.0);
                    for (size_t k = 0; k < axes.size(); ++k) {
                        double v = (k == 0) ? v0 : v1;
                        if (axes[k].name == "delta") p.delta_sq = v * v;
                        else if (axes[k].name == "energy") p.energy = v;
                        else if (axes[k].name == "gsq") p.g_sq = v;
                        else throw StokesError("sweep: unknown grid axis " + axes[k].name);
                    }
                    row["parameters"] = params_json(p);
                    QuarticCoeffs c = coeffs_from_params(p);
                    row["coefficients"] = to_json(c);
                    LagrangeInvariants inv = lagrange_invariants(c);
                    row["invariants"] = to_json(inv);
                    RootClass rc = classify_roots(inv, c);
                    row["root_class"] = to_string(rc.pattern);
                    row["near_degenerate"] = rc.near_degenerate;
                    row["pole_collision"] = rc.pole_collision_minus1 || rc.pole_collision_plus1;
                    if (label_mode != "none" && !rc.pole_collision_minus1
                        && !rc.pole_collision_plus1) {
                        QuadDiff qd = QuadDiff::make(c);
                        if (label_mode == "analytic") {
                            AnalyticResult ar = label_case_analytic(qd);
                            row["case"] = ar.status == AnalyticStatus::Label
                                              ? ar.label.str()
                                              : std::string("(")
                                                    + (ar.status == AnalyticStatus::Undetermined
                                                           ? "undetermined"
                                                           : "unavailable")
                                                    + ")";
                        } else if (label_mode == "geometric") {
                            auto trajectories = trace_all(qd);
                            StokesGraph g = build_graph(trajectories, qd);
                            auto faces = enumerate_faces(g);
                            DomainConfig dc = make_domain_config(g, faces);
                            row["case"] = label_case_geometric(dc, g, qd.roots).str();
                        }
                    }
                }
            } catch (const StokesError& e) {
                row["error"] = e.what();
            }
            if (timings) {
                auto t1 = std::chrono::steady_clock::now();
                row["time_us"] = int(std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                                         .count());
            }
            rows[size_t(idx)] = row.dump();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, total); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostringstream out;
    for (const auto& r : rows) out << r << "\n";
    write_out(out.str(), out_path);
    return 0;
}

int run_map(const ParamSource& src, const std::string& special_spec, bool mirror,
            const std::string& out_path, bool pretty) {
    json rep;
    try {
        if (!special_spec.empty()) {
            SpecialConfig sc;
            auto colon = special_spec.find(':');
            std::string mode = special_spec.substr(0, colon);
            if (mode == "vertical-line") sc.mode = SpecialMode::VerticalLine;
            else if (mode == "circle") sc.mode = SpecialMode::CircleCentered;
            else if (mode == "sym-real-pair") sc.mode = SpecialMode::SymRealPairComplexPair;
            else if (mode == "sym-real-quadruple") sc.mode = SpecialMode::SymRealQuadruple;
            else if (mode == "horizontal-lines") sc.mode = SpecialMode::HorizontalLines;
            else if (mode == "two-rays") sc.mode = SpecialMode::TwoRays;
            else throw StokesError("map: unknown special mode " + mode);
            if (colon != std::string::npos) {
                std::stringstream ss(special_spec.substr(colon + 1));
                std::string kv;
                while (std::getline(ss, kv, ',')) {
                    auto eq = kv.find('=');
                    if (eq == std::string::npos) continue;
                    std::string k = kv.substr(0, eq);
                    double v = std::atof(kv.substr(eq + 1).c_str());
                    if (k == "alpha") sc.alpha = v;
                    else if (k == "beta1") sc.beta1 = v;
                    else if (k == "r") sc.r = v;
                    else if (k == "theta1") sc.theta1 = v;
                    else if (k == "delta") sc.delta = v;
                }
            }
            SpecialConfigResult r = special_config_solve(sc);
            rep["mode"] = to_string(sc.mode);
            rep["feasible"] = r.feasible;
            if (!r.feasible) {
                rep["reason"] = r.reason;
                rep["witness"] = jnum(r.witness);
            } else {
                rep["parameters"] = params_json(r.params);
                rep["coefficients"] = to_json(r.coeffs);
                if (sc.mode == SpecialMode::VerticalLine) rep["beta2"] = jnum(r.beta2);
                if (sc.mode == SpecialMode::CircleCentered) rep["theta2"] = jnum(r.theta2);
                if (sc.mode == SpecialMode::SymRealPairComplexPair
                    || sc.mode == SpecialMode::SymRealQuadruple)
                    rep["beta_sq"] = jnum(r.beta_sq);
            }
        } else if (!src.coeffs.empty()) {
            QuarticCoeffs c{src.coeffs[0], src.coeffs[1], src.coeffs[2], src.coeffs[3]};
            rep["coefficients"] = to_json(c);
            rep["cylinder_residual"] = jnum(cylinder_residual(c));
            ParamsRecovery rec = params_from_coeffs(c);
            rep["feasible"] = rec.feasible;
            if (rec.feasible) rep["parameters"] = params_json(rec.params);
            else rep["reason"] = rec.reason;
        } else {
            RabiParams p;
            double d = src.delta.value_or(0.0);
            p.delta_sq = d * d;
            p.energy = src.energy.value_or(0.0);
            p.g_sq = src.gsq.value_or(1.0);
            if (mirror) p = mirror_params(p);
            rep["parameters"] = params_json(p);
            QuarticCoeffs c = coeffs_from_params(p);
            rep["coefficients"] = to_json(c);
            rep["invariants_coefficient_form"] = to_json(lagrange_invariants(c));
            rep["invariants_physical_form"] = to_json(invariants_from_params(p));
            rep["cylinder_residual"] = jnum(cylinder_residual(c));
            GarnierModel gm = garnier_coeffs(p);
            rep["garnier"] = json{{"t", jnum(gm.t)},     {"theta", jnum(gm.theta)},
                                  {"a3", jnum(gm.a3)},   {"a2", jnum(gm.a2)},
                                  {"a1", jnum(gm.a1)},   {"a0", jnum(gm.a0)}};
        }
        write_out(dump_json(rep, pretty), out_path);
        return 0;
    } catch (const StokesError& e) {
        rep["error"] = e.what();
        write_out(dump_json(rep, pretty), out_path);
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stokes graphs and domain configurations of the Rabi quadratic differential"};
    app.require_subcommand(1);

    ParamSource src;
    std::string out_path, svg_path, grid_spec, special_spec, label_mode = "none";
    bool pretty = false, with_graph = false, timings = false, mirror = false;
    int threads = 0;
    Tolerances tols;

    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--delta", src.delta, "level of separation Delta");
        cmd->add_option("--energy", src.energy, "Hamiltonian eigenvalue E");
        cmd->add_option("--gsq", src.gsq, "coupling squared g^2 (negative: imaginary g)");
        cmd->add_option("--coeffs", src.coeffs, "quartic coefficients c3,c2,c1,c0")
            ->delimiter(',')
            ->expected(4);
        cmd->add_option("--asymptotic", src.asymptotic, "asymptotic pair Ea,Da")
            ->delimiter(',')
            ->expected(2);
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_flag("--json-pretty", pretty, "indent JSON output");
        cmd->add_option("--tol-root", tols.root, "root solve/cluster tolerance");
        cmd->add_option("--tol-pole", tols.pole, "depressed-locus refusal tolerance");
        cmd->add_option("--tol-eq", tols.eq_band, "analytic equality band (relative)");
    };

    auto* cls = app.add_subcommand("classify", "full classification report");
    add_source(cls);
    cls->add_option("--svg", svg_path, "also write an SVG rendering");
    cls->add_flag("--with-graph", with_graph, "embed the graph JSON in the report");

    auto* rnd = app.add_subcommand("render", "trace and render an SVG");
    add_source(rnd);
    rnd->add_option("--svg", svg_path, "SVG output path")->required();

    auto* swp = app.add_subcommand("sweep", "JSON-lines sweep over a parameter grid");
    add_source(swp);
    swp->add_option("--grid", grid_spec, "grid spec name=lo:hi:count[,name=lo:hi:count]")
        ->required();
    swp->add_option("--threads", threads, "worker threads (default: STOKES_RABI_THREADS or hw)");
    swp->add_option("--label", label_mode, "per-point case label: none|analytic|geometric")
        ->check(CLI::IsMember({"none", "analytic", "geometric"}));
    swp->add_flag("--timings", timings, "include per-row wall time (breaks byte determinism)");

    auto* mp = app.add_subcommand("map", "parameter-space maps and special configurations");
    add_source(mp);
    mp->add_option("--special", special_spec,
                   "special configuration, e.g. vertical-line:alpha=1,beta1=3");
    mp->add_flag("--mirror", mirror, "apply the mirror transform to the parameters");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(cls)) {
        if (src.kinds() != 1) {
            std::cerr << "classify: exactly one parameter source required\n";
            return 1;
        }
        return run_classify(src, out_path, svg_path, pretty, with_graph, tols);
    }
    if (app.got_subcommand(rnd)) {
        if (src.kinds() != 1) {
            std::cerr << "render: exactly one parameter source required\n";
            return 1;
        }
        return run_classify(src, out_path.empty() ? "/dev/null" : out_path, svg_path, pretty,
                            false, tols);
    }
    if (app.got_subcommand(swp)) return run_sweep(src, grid_spec, out_path, threads, timings,
                                                  label_mode);
    if (app.got_subcommand(mp)) return run_map(src, special_spec, mirror, out_path, pretty);
    return 1;
}
