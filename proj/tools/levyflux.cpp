#include "levyflux/density.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/fluctuation.hpp"
#include "levyflux/model_io.hpp"
#include "levyflux/moments.hpp"
#include "levyflux/montecarlo.hpp"
#include "levyflux/rng.hpp"
#include "levyflux/selftest.hpp"
#include "levyflux/stats.hpp"
#include "levyflux/subordinator.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;
using namespace levyflux;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::ostringstream buf;
    explicit Csv(const std::string& header) { buf << header << "\n"; }
    template <typename... Ts>
    void row(Ts... vs) {
        bool first = true;
        ((buf << (first ? "" : ","), first = false, buf << num(static_cast<double>(vs))), ...);
        buf << "\n";
    }
};

// CSV to --out (with a .meta.json sidecar) or stdout.
void finish(const Csv& csv, const std::string& out, json meta) {
    if (out.empty()) {
        std::cout << csv.buf.str();
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw validation_error("cannot open output file: " + out);
    f << csv.buf.str();
    meta["clamp_warnings"] = clamp_warning_count();
    meta["quad_abs_tol"] = 1e-8;
    std::ofstream mf(out + ".meta.json", std::ios::binary);
    mf << meta.dump(2) << "\n";
}

struct ModelArg {
    std::string path;
    SpectrallyPositiveModel model;
    std::uint64_t hash = 0;
    void load() {
        const std::string text = read_file(path);
        model = model_from_json(text);
        hash = fnv1a64(text);
    }
    json meta(const std::string& command, std::uint64_t seed) const {
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
        return json{{"command", command}, {"model_path", path}, {"model_hash", hex}, {"seed", seed}};
    }
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    if (n == 1) { v.push_back(lo); return v; }
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fluctuation identities of spectrally positive Levy processes: "
                 "analytic quadrature and exact-path Monte Carlo"};
    app.require_subcommand(1);
    app.fallthrough(); // --out/--seed may follow the subcommand

    ModelArg marg;
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--out", out, "write CSV here (plus a .meta.json sidecar); default stdout");
    app.add_option("--seed", seed, "RNG seed (default fixed for reproducibility)");

    double t = 1.0, x = 1.0, z = -1.0, c = 1.0;
    double xmin = 0.1, xmax = 2.5, zmin = -3.0, zmax = -0.01;
    int n = 2048, grid = 0, nmax = 2, jumps = 5, cells = 5;
    double tmax = 2.5, ymax = 8.0;
    long long samples = 100000;
    std::vector<double> lams{1.0};
    std::vector<double> zs;

    auto* dens = app.add_subcommand("density", "tabulate p_t(x) on a uniform grid");
    dens->add_option("--model", marg.path)->required();
    dens->add_option("--t", t);
    dens->add_option("--xmin", xmin);
    dens->add_option("--xmax", xmax);
    dens->add_option("--n", n);

    auto* fpt = app.add_subcommand("fpt", "first passage time density (x/t) p_t(-x)");
    fpt->add_option("--model", marg.path)->required();
    fpt->add_option("--x", x);
    fpt->add_option("--t", t);
    fpt->add_option("--grid", grid, "sweep x over [xmin,xmax] with this many rows");
    fpt->add_option("--xmin", xmin);
    fpt->add_option("--xmax", xmax);

    auto* sup = app.add_subcommand("sup", "P(sup X <= t > x)");
    sup->add_option("--model", marg.path)->required();
    sup->add_option("--x", x);
    sup->add_option("--t", t);
    sup->add_option("--grid", grid);
    sup->add_option("--xmin", xmin);
    sup->add_option("--xmax", xmax);

    auto* inf = app.add_subcommand("inf", "P(inf X <= t < -x), both quadrature routes");
    inf->add_option("--model", marg.path)->required();
    inf->add_option("--x", x);
    inf->add_option("--t", t);
    inf->add_option("--grid", grid);
    inf->add_option("--xmin", xmin);
    inf->add_option("--xmax", xmax);

    auto* atoms = app.add_subcommand("atoms", "supremum atom density and total mass");
    atoms->add_option("--model", marg.path)->required();
    atoms->add_option("--t", t);
    atoms->add_option("--zmin", zmin);
    atoms->add_option("--zmax", zmax);
    atoms->add_option("--n", n);

    auto* lap = app.add_subcommand("laplace", "Laplace transforms of sup and inf");
    lap->add_option("--model", marg.path)->required();
    lap->add_option("--t", t);
    lap->add_option("--lam", lams, "one or more lambda values");

    auto* mom = app.add_subcommand("moments", "moments of sup and -inf up to order nmax");
    mom->add_option("--model", marg.path)->required();
    mom->add_option("--t", t);
    mom->add_option("--nmax", nmax);

    auto* phi = app.add_subcommand("phi-identity", "Phi(lam), phi(lam,z) and identity residuals");
    phi->add_option("--model", marg.path)->required();
    phi->add_option("--lam", lams, "lambda values (> 0)");
    phi->add_option("--z", zs, "z values (< 0); default -1");

    auto* bal = app.add_subcommand("ballot-mc", "uniform-shift ballot estimate vs x/(ct)");
    bal->add_option("--jumps", jumps);
    bal->add_option("--c", c);
    bal->add_option("--x", x);
    bal->add_option("--t", t);
    bal->add_option("--samples", samples);

    auto* ken = app.add_subcommand("kendall-mc", "first-passage cloud vs (x/t) p_t(-x) cells");
    ken->add_option("--model", marg.path)->required();
    ken->add_option("--xmax", xmax);
    ken->add_option("--tmax", tmax);
    ken->add_option("--cells", cells);
    ken->add_option("--samples", samples);

    double sub_shape = 1.0, sub_scale = 1.0, sub_r = 0.5;
    std::string density_out;
    int bins = 0;
    auto* sub = app.add_subcommand("subord", "time-changed subordinator: phi_Y and MC check (d=1)");
    sub->add_option("--shape-rate", sub_shape);
    sub->add_option("--scale", sub_scale);
    sub->add_option("--r", sub_r);
    sub->add_option("--z", zs, "z values; default {0.5,1,2}");
    sub->add_option("--t", t);
    sub->add_option("--samples", samples);
    sub->add_option("--density-out", density_out, "also tabulate p^Y_t on [0,ymax]");
    sub->add_option("--ymax", ymax);
    sub->add_option("--bins", bins, "rows in the density table (default 200)");

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        reset_clamp_warnings();
        if (dens->parsed()) {
            marg.load();
            Csv csv("x,p");
            for (double xx : linspace(xmin, xmax, n)) csv.row(xx, density(marg.model, t, xx));
            finish(csv, out, marg.meta("density", seed));
        } else if (fpt->parsed()) {
            marg.load();
            Csv csv("x,t,density");
            for (double xx : grid > 0 ? linspace(xmin, xmax, grid) : std::vector<double>{x})
                csv.row(xx, t, fpt_density(marg.model, xx, t));
            finish(csv, out, marg.meta("fpt", seed));
        } else if (sup->parsed()) {
            marg.load();
            Csv csv("x,t,tail");
            for (double xx : grid > 0 ? linspace(xmin, xmax, grid) : std::vector<double>{x})
                csv.row(xx, t, sup_tail(marg.model, xx, t));
            finish(csv, out, marg.meta("sup", seed));
        } else if (inf->parsed()) {
            marg.load();
            Csv csv("x,t,tail,tail_alt");
            for (double xx : grid > 0 ? linspace(xmin, xmax, grid) : std::vector<double>{x})
                csv.row(xx, t, inf_tail(marg.model, xx, t), inf_tail_alt(marg.model, xx, t));
            finish(csv, out, marg.meta("inf", seed));
        } else if (atoms->parsed()) {
            marg.load();
            const double total = sup_atom_total(marg.model, t);
            Csv csv("z,atom_density,atom_total");
            if (marg.model.is_pure_drift()) {
                csv.row(-(-marg.model.drift) * t, 0.0, total); // point mass, no density
            } else {
                for (double zz : linspace(zmin, zmax, n > 512 ? 256 : n))
                    csv.row(zz, sup_atom_density(marg.model, t, zz), total);
            }
            finish(csv, out, marg.meta("atoms", seed));
        } else if (lap->parsed()) {
            marg.load();
            Csv csv("lam,t,sup_laplace,inf_laplace");
            for (double l : lams)
                csv.row(l, t, sup_laplace(marg.model, l, t), inf_laplace(marg.model, l, t));
            finish(csv, out, marg.meta("laplace", seed));
        } else if (mom->parsed()) {
            marg.load();
            Csv csv("n,t,sup_moment,inf_moment");
            for (int k = 1; k <= nmax; ++k)
                csv.row(static_cast<double>(k), t, sup_moment(marg.model, k, t),
                        inf_moment(marg.model, k, t));
            finish(csv, out, marg.meta("moments", seed));
        } else if (phi->parsed()) {
            marg.load();
            if (zs.empty()) zs.push_back(-1.0);
            Csv csv("lam,z,big_phi,phi_lambda_z,identity_residual,ode_residual");
            for (double l : lams)
                for (double zz : zs)
                    csv.row(l, zz, big_phi(marg.model, l), phi_lambda_z(marg.model, l, zz),
                            phi_identity_residual(marg.model, l, zz),
                            phi_ode_residual(marg.model, l, zz));
            finish(csv, out, marg.meta("phi-identity", seed));
        } else if (bal->parsed()) {
            const auto est = ballot_mc(jumps, ExponentialSizes{1.0}, c, t, x, samples, seed);
            Csv csv("x,c,t,jumps,samples,empirical,analytic,stderr,mean_lebesgue_over_t");
            csv.row(x, c, t, static_cast<double>(jumps), static_cast<double>(est.n_samples),
                    est.empirical, est.analytic, est.std_error, est.mean_lebesgue_over_t);
            finish(csv, out, json{{"command", "ballot-mc"}, {"seed", seed}});
        } else if (ken->parsed()) {
            marg.load();
            const auto cmp = kendall_mc(marg.model, linspace(0.0, xmax, cells + 1), tmax, cells,
                                        samples, seed);
            Csv csv("cell_t,cell_x,empirical,analytic,stderr");
            for (const auto& cell : cmp.cells)
                csv.row(cell.t_hi, cell.x_hi, cell.empirical, cell.analytic, cell.std_error);
            json meta = marg.meta("kendall-mc", seed);
            meta["no_cross_freq"] = cmp.no_cross_freq;
            meta["truncation_bias_rate"] = cmp.truncation_bias_rate;
            finish(csv, out, meta);
        } else if (sub->parsed()) {
            TimeChangeSpec spec{SubordinatorModel{{GammaCoord{sub_shape, sub_scale, 0.0}}}, {sub_r}};
            if (zs.empty()) zs = {0.5, 1.0, 2.0};
            const auto run = simulate_time_change(spec, t, samples, seed);
            Csv csv("z,phi_y,phi_y_mc,stderr");
            for (double zz : zs) {
                RunningStat st;
                for (const auto& s : run.samples) st.add(std::exp(-zz * s.y[0]));
                const double mc = -std::log(st.mean) / t;
                const double se = st.stderr_mean() / (st.mean * t); // delta method
                csv.row(zz, solve_phi_Y(spec, {zz}), mc, se);
            }
            json meta{{"command", "subord"}, {"seed", seed},
                      {"exceeded_horizon", run.exceeded_horizon},
                      {"truncation_bias_rate", run.truncation_bias_rate}};
            finish(csv, out, meta);
            if (!density_out.empty()) {
                Csv dcsv("y,p_y");
                for (double y : linspace(1e-6, ymax, bins > 0 ? bins : 200))
                    dcsv.row(y, time_changed_density(spec, t, {y}));
                finish(dcsv, density_out, meta);
            }
        } else if (self->parsed()) {
            const int failures = run_acceptance(std::cout);
            return failures == 0 ? 0 : 2;
        }
    } catch (const numerical_error& e) {
        std::cerr << "numerical accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "model validation failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
