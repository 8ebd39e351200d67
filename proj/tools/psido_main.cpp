// psido: batch front end for the symbol-calculus library.
//
// Subcommands: symbol-compose, parametrix, geometry-check, qed-sweep,
// hawking.  Each run writes machine-readable artifacts (CSV/JSON) into the
// output directory and prints a run report to stdout; the exit code is zero
// iff every check passed.  Identical invocations (including --seed) produce
// byte-identical artifacts.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "psido/diff_operator.hpp"
#include "psido/fiber_symbol.hpp"
#include "psido/greens.hpp"
#include "psido/hawking.hpp"
#include "psido/l_jet.hpp"
#include "psido/parametrix.hpp"
#include "psido/qed.hpp"
#include "psido/run_report.hpp"
#include "psido/tensor_field.hpp"

using namespace psido;
using std::numbers::pi;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("file not found: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// JSON mirror of the command-line flags; explicit flags win.
struct ConfigFile {
    nlohmann::json data = nlohmann::json::object();

    void load(const std::string& path) { data = nlohmann::json::parse(read_file(path)); }

    template <typename T>
    void fallback(const CLI::Option* opt, const std::string& key, T& value) const {
        if (opt->count() == 0 && data.contains(key)) value = data.at(key).get<T>();
    }
};

std::string output_dir(const std::string& flag_value) {
    if (const char* env = std::getenv("PSIDO_OUT"); env && *env) return env;
    return flag_value;
}

std::string csv_line(const std::vector<double>& vals) {
    std::string s;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ",";
        s += format_sci(vals[i]);
    }
    return s + "\n";
}

// Manifest entries are paths relative to the output directory, so the
// persisted report is independent of where the run landed.
int finish(RunReport& report, const std::string& outdir,
           std::chrono::steady_clock::time_point t0) {
    for (auto& a : report.artifacts) {
        const std::string prefix = outdir + "/";
        if (a.rfind(prefix, 0) == 0) a = a.substr(prefix.size());
    }
    report.artifacts.push_back("report.json");
    write_file(outdir + "/report.json", report.to_json() + "\n");
    for (auto& a : report.artifacts) a = outdir + "/" + a;
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << report.to_console_json() << "\n";
    return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_symbol_compose(const std::string& a_path, const std::string& b_path, int order,
                       const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    PolySymbol a = PolySymbol::from_json(read_file(a_path));
    PolySymbol b = PolySymbol::from_json(read_file(b_path));
    ComposeResult r = compose_symbols(a, b, order);

    RunReport report;
    report.command = "symbol-compose";
    std::cout << "composed: " << r.symbol.str() << "\n";
    std::cout << "exact: " << (r.exact ? "true" : "false") << "\n";

    if (r.exact) {
        // finite-sum composition must reproduce the operator product
        DiffOperator prod = diff_op_compose(symbol_to_op(a), symbol_to_op(b));
        report.checks.push_back({"operator-product-match",
                                 r.symbol == op_to_symbol(prod) ? 0.0 : 1.0, 0.5});
    }
    report.checks.push_back(
        {"order-additivity",
         r.symbol.is_zero() || r.symbol.xi_degree() <= a.xi_degree() + b.xi_degree() ? 0.0 : 1.0,
         0.5});

    write_file(outdir + "/composed.json", r.symbol.to_json() + "\n");
    report.artifacts.push_back(outdir + "/composed.json");
    return finish(report, outdir, t0);
}

int run_parametrix(const std::string& symbol_path, double r0, double r1, int grid,
                   unsigned long seed, const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    PolySymbol p = PolySymbol::from_json(read_file(symbol_path));
    CutoffSpec spec{r0, r1, 5};
    auto q = cutoff_amplitude(p, spec);

    const int n = p.dim();
    std::vector<int> shape(static_cast<std::size_t>(n), grid);
    std::vector<double> ext(static_cast<std::size_t>(n), 2.0 * pi);

    // deterministic mixed-band input: a few seeded modes below, inside and
    // above the cutoff annulus
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::vector<std::pair<std::vector<int>, cplx>> modes;
    const int top = grid / 2 - 1;
    for (int m = 0; m < 8; ++m) {
        std::vector<int> k(static_cast<std::size_t>(n), 0);
        const int mag = 1 + (m * top) / 8;
        k[0] = (m % 2 == 0) ? mag : -mag;
        if (n > 1) k[1] = m % 3;
        modes.emplace_back(k, cplx(amp(rng), amp(rng)));
    }
    GridFunction f = GridFunction::from_function(shape, ext, [&](std::span<const double> x) {
        cplx acc = 0.0;
        for (const auto& [k, a] : modes) {
            double phase = 0.0;
            for (int i = 0; i < n; ++i)
                phase += k[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            acc += a * std::exp(cplx(0.0, phase));
        }
        return acc;
    });

    auto rep = remainder_report(p, q, f);
    RunReport report;
    report.command = "parametrix";
    report.checks.push_back({"highband-residual", rep.max_highband_residual, 1e-10});
    report.checks.push_back({"tail-norm", rep.tail_norm, 1e-10});

    write_file(outdir + "/remainder.json", rep.to_json() + "\n");
    report.artifacts.push_back(outdir + "/remainder.json");
    return finish(report, outdir, t0);
}

int run_geometry_check(const std::string& geom_path, int order, unsigned long seed,
                       const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    ChartConnection chart = ChartConnection::from_json_file(geom_path);
    const int n = chart.dim();
    const int K = std::min(std::max(order, 2), 4);

    std::mt19937_64 rng(seed);
    std::vector<Vec> points;
    {
        Vec mid(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            mid[static_cast<std::size_t>(a)] =
                0.5 * (chart.box()[static_cast<std::size_t>(a)][0] +
                       chart.box()[static_cast<std::size_t>(a)][1]);
        points.push_back(mid);
        std::uniform_real_distribution<double> uni(0.15, 0.85);
        for (int t = 0; t < 4; ++t) {
            Vec x(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a) {
                const auto& b = chart.box()[static_cast<std::size_t>(a)];
                x[static_cast<std::size_t>(a)] = b[0] + (b[1] - b[0]) * uni(rng);
            }
            points.push_back(x);
        }
    }
    std::uniform_real_distribution<double> vdist(-2.0, 2.0);

    RunReport report;
    report.command = "geometry-check";

    double curv_antisym = 0.0, ricci = 0.0, metric_comp = 0.0;
    double perm = 0.0, tors2 = 0.0, eq_curv3 = 0.0, taylor = 0.0, norm2 = 0.0, mixed2 = 0.0;
    bool torsion_free = true;
    for (const Vec& x : points)
        for (double t : chart.torsion(x))
            if (t != 0.0) torsion_free = false;

    TensorField cov = TensorField::covector(n, [n](const Vec& x, std::vector<double>& c) {
        for (int a = 0; a < n; ++a)
            c[static_cast<std::size_t>(a)] =
                std::sin(x[static_cast<std::size_t>(a)]) + (a == 0 ? x[0] : 0.5);
    });

    for (const Vec& x : points) {
        curv_antisym = std::max(curv_antisym, curvature_tensor(chart, x).antisymmetry_defect());
        ricci = std::max(ricci, ricci_identity_residual(cov, chart, x));
        if (chart.has_metric()) {
            metric_comp = std::max(metric_comp, metric_compatibility_residual(chart, x));
            ricci = std::max(ricci,
                             ricci_identity_residual(TensorField::metric_of(chart), chart, x));
        }

        Vec v(static_cast<std::size_t>(n));
        for (auto& c : v) c = vdist(rng);
        CotangentPoint vp{x, v};
        LJet jet = build_l_jet(vp, chart, K);
        for (int k = 2; k <= K; ++k)
            perm = std::max(perm, nabla_l_permutation_sum(nabla_l(jet, chart, k)));
        if (torsion_free) {
            tors2 = std::max(tors2, nabla_l(jet, chart, 2).max_abs());
            if (K >= 3) {
                auto d3 = nabla_l(jet, chart, 3);
                auto R = curvature_tensor(chart, x);
                std::vector<int> idx(3, 0);
                for (idx[0] = 0; idx[0] < n; ++idx[0])
                    for (idx[1] = 0; idx[1] < n; ++idx[1])
                        for (idx[2] = 0; idx[2] < n; ++idx[2]) {
                            double expect = 0.0;
                            for (int p = 0; p < n; ++p)
                                expect += v[static_cast<std::size_t>(p)] *
                                          (R.at(p, idx[0], idx[1], idx[2]) +
                                           R.at(p, idx[1], idx[0], idx[2])) /
                                          3.0;
                            eq_curv3 = std::max(eq_curv3, std::abs(d3.at(idx) - expect));
                        }
            }
        }

        // covariant Taylor jet matching on a polynomial probe
        {
            Polynomial probe;
            for (int a = 0; a < n; ++a) {
                std::vector<int> e(static_cast<std::size_t>(n), 0);
                e[static_cast<std::size_t>(a)] = 1;
                probe.push_back({1.0 + 0.3 * a, e});
                e[static_cast<std::size_t>(a)] = 2;
                probe.push_back({0.2 - 0.1 * a, e});
            }
            const int N = std::min(K - 1, 3);
            Jet fj = poly_jet(probe, x, K);
            Jet tn = covariant_taylor(fj, x, chart, N);
            for (int k = 0; k <= N; ++k) {
                auto sf = symmetrized_cov_derivative(fj, chart, x, k);
                auto st = symmetrized_cov_derivative(tn, chart, x, k);
                for (std::size_t i = 0; i < sf.comp.size(); ++i)
                    taylor = std::max(taylor, std::abs(sf.comp[i] - st.comp[i]));
            }
        }

        if (chart.has_metric() && torsion_free) {
            FiberSymbol sigma = metric_norm_symbol(chart);
            auto n2 = symbol_covariant_derivative(sigma, vp, chart, 2, 0);
            auto n2d = symbol_covariant_derivative(sigma, vp, chart, 2, 1);
            auto R = curvature_tensor(chart, x);
            Vec u(static_cast<std::size_t>(n), 0.0);
            for (int a = 0; a < n; ++a)
                for (int q2 = 0; q2 < n; ++q2)
                    u[static_cast<std::size_t>(a)] +=
                        chart.inverse_metric(a, q2, x) * v[static_cast<std::size_t>(q2)];
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double expect = 0.0;
                    for (int p = 0; p < n; ++p)
                        for (int a = 0; a < n; ++a)
                            expect += (2.0 / 3.0) * v[static_cast<std::size_t>(p)] *
                                      u[static_cast<std::size_t>(a)] *
                                      (R.at(p, a, k, l) + R.at(p, k, a, l));
                    norm2 = std::max(
                        norm2,
                        std::abs(n2.comp[static_cast<std::size_t>(k * n + l)] - expect));
                    double contracted = 0.0;
                    for (int p = 0; p < n; ++p)
                        contracted += v[static_cast<std::size_t>(p)] *
                                      n2d.comp[static_cast<std::size_t>((p * n + k) * n + l)];
                    mixed2 = std::max(mixed2, std::abs(contracted - 2.0 * expect));
                }
        }
    }

    report.checks.push_back({"curvature-antisymmetry", curv_antisym, 1e-10});
    report.checks.push_back({"ricci-identity", ricci, 1e-6});
    if (chart.has_metric())
        report.checks.push_back({"metric-compatibility", metric_comp, 1e-8});
    report.checks.push_back({"jet-permutation-sums", perm, 1e-8});
    if (torsion_free) {
        report.checks.push_back({"second-derivative-torsion-free", tors2, 1e-8});
        if (K >= 3) report.checks.push_back({"third-derivative-curvature", eq_curv3, 1e-6});
    }
    report.checks.push_back({"covariant-taylor-jet-match", taylor, 1e-6});
    if (chart.has_metric() && torsion_free) {
        report.checks.push_back({"norm-symbol-second-derivative", norm2, 1e-6});
        report.checks.push_back({"norm-symbol-mixed-contraction", mixed2, 1e-6});
    }

    std::string csv = "check,residual,tolerance,status\n";
    for (const auto& c : report.checks)
        csv += c.name + "," + format_sci(c.residual) + "," + format_sci(c.tolerance) + "," +
               (c.pass() ? "pass" : "fail") + "\n";
    write_file(outdir + "/geometry_checks.csv", csv);
    report.artifacts.push_back(outdir + "/geometry_checks.csv");
    return finish(report, outdir, t0);
}

int run_qed_sweep(double alpha, double kmax, int samples, unsigned long seed,
                  const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> comp(-1.0, 1.0);
    std::uniform_real_distribution<double> mag(0.01, 1.0);

    std::string csv = "k0,k1,k2,k3,alpha,A,B,max_identity_residual\n";
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Momentum4 k;
        double norm = 0.0;
        for (auto& v : k.k) {
            v = comp(rng);
            norm += v * v;
        }
        const double scale = kmax * mag(rng) / std::sqrt(norm);
        for (auto& v : k.k) v *= scale;

        GaugeSymbol sym = gauge_symbol(k, alpha);
        auto coeff = invert_gauge_symbol(sym, k, alpha);
        const double res = identity_residual(sym, assemble_inverse(coeff, k));
        worst = std::max(worst, res);
        csv += csv_line({k.k[0], k.k[1], k.k[2], k.k[3], alpha, coeff.a, coeff.b, res});
    }

    RunReport report;
    report.command = "qed-sweep";
    report.checks.push_back({"inverse-identity", worst, 1e-12});
    write_file(outdir + "/qed_sweep.csv", csv);
    report.artifacts.push_back(outdir + "/qed_sweep.csv");
    return finish(report, outdir, t0);
}

int run_hawking(double mass, double s, double omega_min, double omega_max, int points,
                double radius, int modes, const std::string& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(mass > 0.0)) throw std::invalid_argument("hawking: --mass must be positive");
    if (omega_min > omega_max)
        throw std::runtime_error(
            "conflicting flags: --omega-min exceeds --omega-max (" +
            std::to_string(omega_min) + " > " + std::to_string(omega_max) + ")");
    if (radius <= 2.0 * mass)
        throw std::runtime_error("conflicting flags: --radius must exceed 2*--mass");

    RunReport report;
    report.command = "hawking";
    const double kappa = 1.0 / (4.0 * mass);

    // numeric radial spectrum
    RadialEigenproblem prob;
    prob.mass = mass;
    prob.radius = radius;
    prob.count = modes;
    auto spec = solve_radial_eigenvalues(prob);
    std::string scsv = "n,lambda\n";
    for (int i = 0; i < modes; ++i)
        scsv += std::to_string(i + 1) + "," +
                format_sci(spec.eigenvalues[static_cast<std::size_t>(i)]) + "\n";
    write_file(outdir + "/spectrum.csv", scsv);
    report.artifacts.push_back(outdir + "/spectrum.csv");
    std::cout << "numeric eigenvalue spacing (fit): " << format_sci(spec.mean_spacing)
              << " (reported, not asserted against the asymptotic form)\n";

    double increasing = 0.0;
    for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i)
        increasing = std::max(increasing, spec.eigenvalues[i - 1] - spec.eigenvalues[i]);
    report.checks.push_back({"spectrum-strictly-increasing", increasing, 1e-12});

    // spectral density against the closed Planck form
    std::string dcsv = "omega,rho,planck_reference,rel_err\n";
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double omega =
            points == 1 ? omega_min
                        : omega_min + (omega_max - omega_min) * i / (points - 1);
        const double rho = kappa * spectral_density(s, omega, kappa);
        const double planck = hawking_density(mass, omega);
        const double rel = std::abs(rho - planck) / planck;
        if (s == 1.0) worst = std::max(worst, rel);
        dcsv += csv_line({omega, rho, planck, rel});
    }
    write_file(outdir + "/density.csv", dcsv);
    report.artifacts.push_back(outdir + "/density.csv");
    if (s == 1.0) report.checks.push_back({"planck-factor", worst, 1e-10});
    return finish(report, outdir, t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudodifferential symbol calculus toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_flag = "psido_out";
    app.add_option("--config", config_path, "JSON file mirroring the flags");
    app.add_option("--out", out_flag, "output directory (PSIDO_OUT overrides)");
    unsigned long seed = 0;

    auto* sc = app.add_subcommand("symbol-compose", "compose two polynomial symbols");
    std::string a_path, b_path;
    int order = 2;
    auto* sc_a = sc->add_option("--a", a_path, "left symbol JSON");
    auto* sc_b = sc->add_option("--b", b_path, "right symbol JSON");
    auto* sc_n = sc->add_option("--order", order, "truncation order N");

    auto* pm = app.add_subcommand("parametrix", "cutoff parametrix remainder report");
    std::string symbol_path;
    double r0 = 1.0, r1 = 2.0;
    int grid = 64;
    auto* pm_s = pm->add_option("--symbol", symbol_path, "symbol JSON (xi-only)");
    auto* pm_r0 = pm->add_option("--r0", r0, "inner cutoff radius");
    auto* pm_r1 = pm->add_option("--r1", r1, "outer cutoff radius");
    auto* pm_g = pm->add_option("--grid", grid, "points per axis (power of two)");
    auto* pm_seed = pm->add_option("--seed", seed, "seed for the test band mix");

    auto* gc = app.add_subcommand("geometry-check", "connection/curvature identity battery");
    std::string geom_path;
    int jet_order = 3;
    auto* gc_g = gc->add_option("--geometry", geom_path, "geometry JSON file");
    auto* gc_k = gc->add_option("--order", jet_order, "jet order K (2..4)");
    auto* gc_seed = gc->add_option("--seed", seed, "seed for sample covectors");

    auto* qs = app.add_subcommand("qed-sweep", "gauge-symbol inversion sweep");
    double alpha = 1.0, kmax = 10.0;
    int samples = 100;
    auto* qs_a = qs->add_option("--alpha", alpha, "gauge parameter (nonzero)");
    auto* qs_k = qs->add_option("--kmax", kmax, "largest momentum magnitude");
    auto* qs_m = qs->add_option("--samples", samples, "number of sweep samples");
    auto* qs_seed = qs->add_option("--seed", seed, "seed for momentum samples");

    auto* hw = app.add_subcommand("hawking", "radial spectrum and spectral density");
    double mass = 1.0, s_param = 1.0, omega_min = 0.1, omega_max = 2.0, radius = 0.0;
    int points = 50, modes = 8;
    auto* hw_m = hw->add_option("--mass", mass, "Schwarzschild mass (geometric units)");
    auto* hw_s = hw->add_option("--s", s_param, "zeta argument s");
    auto* hw_lo = hw->add_option("--omega-min", omega_min, "lowest frequency");
    auto* hw_hi = hw->add_option("--omega-max", omega_max, "highest frequency");
    auto* hw_p = hw->add_option("--points", points, "density samples");
    auto* hw_r = hw->add_option("--radius", radius, "outer Dirichlet radius (default 20*mass)");
    auto* hw_n = hw->add_option("--modes", modes, "eigenvalues to solve");

    CLI11_PARSE(app, argc, argv);

    try {
        ConfigFile cfg;
        if (!config_path.empty()) cfg.load(config_path);
        const std::string outdir = output_dir(out_flag);

        if (sc->parsed()) {
            cfg.fallback(sc_a, "a", a_path);
            cfg.fallback(sc_b, "b", b_path);
            cfg.fallback(sc_n, "order", order);
            if (a_path.empty() || b_path.empty())
                throw std::runtime_error("symbol-compose requires --a and --b");
            return run_symbol_compose(a_path, b_path, order, outdir);
        }
        if (pm->parsed()) {
            cfg.fallback(pm_s, "symbol", symbol_path);
            cfg.fallback(pm_r0, "r0", r0);
            cfg.fallback(pm_r1, "r1", r1);
            cfg.fallback(pm_g, "grid", grid);
            cfg.fallback(pm_seed, "seed", seed);
            if (symbol_path.empty()) throw std::runtime_error("parametrix requires --symbol");
            return run_parametrix(symbol_path, r0, r1, grid, seed, outdir);
        }
        if (gc->parsed()) {
            cfg.fallback(gc_g, "geometry", geom_path);
            cfg.fallback(gc_k, "order", jet_order);
            cfg.fallback(gc_seed, "seed", seed);
            if (geom_path.empty()) throw std::runtime_error("geometry-check requires --geometry");
            return run_geometry_check(geom_path, jet_order, seed, outdir);
        }
        if (qs->parsed()) {
            cfg.fallback(qs_a, "alpha", alpha);
            cfg.fallback(qs_k, "kmax", kmax);
            cfg.fallback(qs_m, "samples", samples);
            cfg.fallback(qs_seed, "seed", seed);
            return run_qed_sweep(alpha, kmax, samples, seed, outdir);
        }
        if (hw->parsed()) {
            cfg.fallback(hw_m, "mass", mass);
            cfg.fallback(hw_s, "s", s_param);
            cfg.fallback(hw_lo, "omega-min", omega_min);
            cfg.fallback(hw_hi, "omega-max", omega_max);
            cfg.fallback(hw_p, "points", points);
            cfg.fallback(hw_r, "radius", radius);
            cfg.fallback(hw_n, "modes", modes);
            if (radius == 0.0) radius = 20.0 * mass;
            return run_hawking(mass, s_param, omega_min, omega_max, points, radius, modes,
                               outdir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
