// Experiment runner: every pipeline of the library behind a subcommand,
// with deterministic CSV output and a JSON manifest next to it.

#include <qrho/fp/stationary.hpp>
#include <qrho/io.hpp>
#include <qrho/parallel.hpp>
#include <qrho/sde/trajectory.hpp>
#include <qrho/special/airy.hpp>
#include <qrho/special/hermite.hpp>
#include <qrho/special/quadrature.hpp>
#include <qrho/thermo/thermo.hpp>
#include <qrho/transitions/transitions.hpp>
#include <qrho/version.hpp>
#include <qrho/wavefunc/gauss_hermite.hpp>
#include <qrho/wavefunc/psi.hpp>
#include <qrho/wavefunc/smatrix.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

// Grid argument: comma list ("0.5,5,50") or start:stop:count range.
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double a, b;
        int n;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
            throw qrho::DomainError("bad range '" + s + "', expected start:stop:count");
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
        return out;
    }
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw qrho::DomainError("empty grid '" + s + "'");
    return out;
}

std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void write_manifest(const std::string& csv_like_path, const std::string& subcommand,
                    const json& params, std::uint64_t seed, const json& tolerances,
                    const std::vector<std::string>& outputs,
                    const std::vector<std::string>& argv_tail) {
    json m;
    m["subcommand"] = subcommand;
    m["parameters"] = params;
    m["parameters"]["argv"] = argv_tail;
    m["seed"] = seed;
    m["tolerances"] = tolerances;
    m["version"] = qrho::kVersion;
    m["outputs"] = outputs;
    const std::string path = csv_like_path + ".manifest.json";
    std::ofstream f(path);
    if (!f) throw qrho::Error("cannot open manifest " + path);
    f << m.dump(2) << "\n";
}

struct CommonArgs {
    std::vector<std::string> argv_tail;  // for manifest round-trips
    std::string format = "csv";          // csv | json
};

// Table sink honoring the output format; identical inputs give identical
// bytes in either mode.
class TableWriter {
  public:
    TableWriter(const std::string& path, const std::vector<std::string>& columns,
                const std::string& format)
        : path_(path), columns_(columns), json_mode_(format == "json") {
        if (!json_mode_) csv_.emplace(path, columns);
    }
    void row(const std::vector<double>& values) {
        if (json_mode_) {
            std::vector<std::string> r;
            r.reserve(values.size());
            for (double v : values) r.push_back(qrho::io::format_value(v));
            rows_.push_back(std::move(r));
        } else {
            csv_->row(values);
        }
    }
    ~TableWriter() {
        if (!json_mode_) return;
        json j;
        j["columns"] = columns_;
        j["rows"] = rows_;
        std::ofstream f(path_);
        f << j.dump(1) << "\n";
    }

  private:
    std::string path_;
    std::vector<std::string> columns_;
    bool json_mode_ = false;
    std::optional<qrho::io::CsvWriter> csv_;
    std::vector<std::vector<std::string>> rows_;
};

// ---------------------------------------------------------------------------
// stationary-dist: per-(lambda, gamma) CSV of the scaled stationary density.

int run_stationary_dist(const std::string& lambda_s, const std::string& gamma_s,
                        double tb_min, double tb_max, int points,
                        const std::string& out_dir, const CommonArgs& common) {
    const auto lambdas = parse_grid(lambda_s);
    const auto gammas = parse_grid(gamma_s);
    if (!(tb_min < tb_max)) throw qrho::DomainError("need theta-min < theta-max");
    if (points < 2) throw qrho::DomainError("need at least 2 grid points");
    for (double l : lambdas)
        if (!(l > 0.0)) throw qrho::DomainError("stationary-dist: lambda must be > 0");

    std::filesystem::create_directories(out_dir);
    Eigen::ArrayXd grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = tb_min + (tb_max - tb_min) * i / (points - 1);

    struct Job {
        double lambda, gamma;
        qrho::fp::StationaryDist dist;
    };
    std::vector<Job> jobs;
    for (double l : lambdas)
        for (double g : gammas) jobs.push_back({l, g, {}});
    qrho::parallel_for((long)jobs.size(), [&](long i) {
        jobs[(size_t)i].dist =
            qrho::fp::make_stationary_dist(jobs[(size_t)i].lambda, jobs[(size_t)i].gamma, grid);
    });

    std::vector<std::string> outputs;
    for (const Job& j : jobs) {
        const std::string path = out_dir + "/stationary_lambda" + format_param(j.lambda) +
                                 "_gamma" + format_param(j.gamma) +
                                 (common.format == "json" ? ".json" : ".csv");
        {
            TableWriter table(path, {"theta_bar", "q_s"}, common.format);
            for (Eigen::Index i = 0; i < j.dist.theta_bar.size(); ++i)
                table.row({j.dist.theta_bar[i], j.dist.q_s[i]});
        }
        outputs.push_back(path);
        std::cout << path << ": J0f = " << j.dist.j0f_scaled << "\n";
    }
    json params{{"lambda", lambda_s}, {"gamma", gamma_s},    {"theta_min", tb_min},
                {"theta_max", tb_max}, {"points", points},   {"out_dir", out_dir}};
    write_manifest(out_dir + "/stationary", "stationary-dist", params, 0,
                   json{{"quadrature_rel", 1e-10}}, outputs, common.argv_tail);
    return 0;
}

// ---------------------------------------------------------------------------
// vacuum-transition: CSV rho,lambda,delta over the (lambda, rho) grid.

int run_vacuum_transition(const std::string& lambda_s, const std::string& rho_s,
                          const std::string& lambda_plus_s, double tolerance,
                          const std::string& out, const CommonArgs& common) {
    const auto lambdas = parse_grid(lambda_s);
    const auto rhos = parse_grid(rho_s);
    const bool two_sided = !lambda_plus_s.empty();
    const auto lambda_plus = two_sided ? parse_grid(lambda_plus_s) : std::vector<double>{};
    if (two_sided && lambda_plus.size() != 1)
        throw qrho::DomainError("vacuum-transition: exactly one lambda-plus per run");
    for (double r : rhos)
        if (!(r >= 0.0) || r >= 1.0)
            throw qrho::DomainError("vacuum-transition: rho must lie in [0,1)");
    for (double l : lambdas)
        if (!(l > 0.0)) throw qrho::DomainError("vacuum-transition: lambda must be > 0");

    struct Row {
        double rho, lambda, delta;
    };
    std::vector<Row> rows;
    for (double l : lambdas)
        for (double r : rhos) rows.push_back({r, l, 0.0});
    qrho::parallel_for((long)rows.size(), [&](long i) {
        Row& row = rows[(size_t)i];
        if (two_sided) {
            row.delta = qrho::transitions::delta_00(row.lambda, lambda_plus[0], row.rho,
                                                    tolerance)
                            .delta;
        } else {
            row.delta =
                qrho::transitions::delta_00_simplified(row.lambda, row.rho, tolerance).delta;
        }
    });

    {
        TableWriter table(out, {"rho", "lambda", "delta"}, common.format);
        for (const Row& r : rows) table.row({r.rho, r.lambda, r.delta});
    }
    json params{{"lambda", lambda_s},
                {"rho", rho_s},
                {"lambda_plus", lambda_plus_s},
                {"tolerance", tolerance},
                {"out", out}};
    write_manifest(out, "vacuum-transition", params, 0, json{{"delta_tol", tolerance}},
                   {out}, common.argv_tail);
    std::cout << "wrote " << rows.size() << " grid points to " << out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// thermo: CSV lambda_plus,e_osc,width,entropy.

int run_thermo(const std::string& lambda_plus_s, double omega_as, double k,
               const std::string& out, const CommonArgs& common) {
    const auto lps = parse_grid(lambda_plus_s);
    for (double lp : lps)
        if (!(lp > 0.0)) throw qrho::DomainError("thermo: lambda_plus must be > 0");
    if (!(omega_as > 0.0)) throw qrho::DomainError("thermo: omega_as must be > 0");

    std::vector<qrho::thermo::ThermoPoint> pts(lps.size());
    qrho::parallel_for((long)lps.size(), [&](long i) {
        pts[(size_t)i] = qrho::thermo::thermo_point(lps[(size_t)i], omega_as, k);
    });
    {
        TableWriter table(out, {"lambda_plus", "e_osc", "width", "entropy"}, common.format);
        for (const auto& p : pts)
            table.row({p.lambda_plus, p.e_osc, p.level_width, p.entropy});
    }
    json params{{"lambda_plus", lambda_plus_s}, {"omega_as", omega_as}, {"k", k}, {"out", out}};
    write_manifest(out, "thermo", params, 0, json{{"quadrature_rel", 1e-10}}, {out},
                   common.argv_tail);
    std::cout << "wrote " << pts.size() << " points to " << out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sde-ensemble: long-time theta histogram against the stationary density.

int run_sde_ensemble(double omega_in, double omega_out, const std::string& profile_kind,
                     double epsilon, double f0, double t_c, double t0, double t1,
                     double dt, int n_traj, double theta_max, std::uint64_t seed,
                     int bins, double hist_range, const std::string& out,
                     const std::string& dump_traj, const CommonArgs& common) {
    qrho::sde::FrequencyProfile profile;
    if (profile_kind == "constant")
        profile = qrho::sde::FrequencyProfile::constant(omega_in, f0, t_c);
    else if (profile_kind == "step")
        profile = qrho::sde::FrequencyProfile::step(omega_in, omega_out, t_c, f0);
    else if (profile_kind == "smooth-tanh")
        profile = qrho::sde::FrequencyProfile::smooth_tanh(omega_in, omega_out, t_c,
                                                           1.0, f0);
    else
        throw qrho::DomainError("sde-ensemble: unknown profile '" + profile_kind + "'");

    qrho::sde::IntegrationParams params;
    params.profile = profile;
    params.noise.epsilon = epsilon;
    params.noise.seed = seed;
    params.t0 = t0;
    params.t1 = t1;
    params.dt = dt;
    params.theta_max = theta_max;
    params.validate();
    if (bins < 2) throw qrho::DomainError("sde-ensemble: need at least 2 bins");
    if (!(hist_range > 0.0)) throw qrho::DomainError("sde-ensemble: hist_range must be > 0");

    if (!dump_traj.empty()) {
        qrho::sde::Trajectory tr = qrho::sde::integrate_phase(params);
        qrho::sde::write_trajectory_csv(tr, dump_traj);
    }

    const Eigen::ArrayXd thetas = qrho::sde::ensemble_final_theta(params, n_traj);
    const double e13 = std::cbrt(epsilon > 0 ? epsilon : 1.0);
    const double lambda = std::pow(omega_in / e13, 2.0);
    const double u_plus = omega_out * omega_out + f0;
    const double gamma = u_plus / (omega_in * omega_in);

    // Scaled histogram with under/overflow rows at the ends.
    const double lo = -hist_range, hi = hist_range;
    const double h = (hi - lo) / bins;
    std::vector<long> counts(bins + 2, 0);
    for (Eigen::Index i = 0; i < thetas.size(); ++i) {
        const double tb = thetas[i] / e13;
        if (tb < lo)
            ++counts[0];
        else if (tb >= hi)
            ++counts[bins + 1];
        else
            ++counts[1 + (int)((tb - lo) / h)];
    }

    TableWriter csv(out, {"theta_bar_left", "theta_bar_right", "count",
                          "empirical_density", "stationary_density"},
                    common.format);
    double l1 = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    for (int b = 0; b < bins + 2; ++b) {
        const double left = b == 0 ? -inf : lo + (b - 1) * h;
        const double right = b == bins + 1 ? inf : lo + b * h;
        const double p_emp = (double)counts[b] / (double)n_traj;
        double p_ref;
        if (b == 0 || b == bins + 1) {
            // Tail mass by the theta^{-2} law with the exact flux constant.
            const double edge = b == 0 ? lo : hi;
            p_ref = qrho::fp::flux_scaled(lambda * gamma) / std::fabs(edge);
        } else {
            qrho::special::QuadratureSpec qs;
            qs.relative_tolerance = 1e-8;
            p_ref = qrho::special::integrate(
                        [&](double tb) {
                            return qrho::fp::stationary_density(lambda, gamma, tb);
                        },
                        qrho::special::Domain::finite(left, right), qs)
                        .value;
        }
        l1 += std::fabs(p_emp - p_ref);
        csv.row({left, right, (double)counts[b], p_emp / (b == 0 || b == bins + 1 ? 1.0 : h),
                 p_ref / (b == 0 || b == bins + 1 ? 1.0 : h)});
    }

    json params_j{{"omega_in", omega_in},   {"omega_out", omega_out},
                  {"profile", profile_kind}, {"epsilon", epsilon},
                  {"f0", f0},                {"t_c", t_c},
                  {"t0", t0},                {"t1", t1},
                  {"dt", dt},                {"n_traj", n_traj},
                  {"theta_max", theta_max},  {"bins", bins},
                  {"hist_range", hist_range}, {"out", out},
                  {"dump_traj", dump_traj}};
    std::vector<std::string> outputs{out};
    if (!dump_traj.empty()) outputs.push_back(dump_traj);
    write_manifest(out, "sde-ensemble", params_j, seed, json{{"hist_ref_rel", 1e-8}},
                   outputs, common.argv_tail);
    std::cout << "lambda = " << lambda << ", gamma = " << gamma
              << ", mean theta_bar = " << (thetas / e13).mean()
              << ", L1 vs stationary = " << l1 << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// smatrix: local transition matrix for deterministic channel frames.

int run_smatrix(double omega_in, double omega_out, int n_max, double t, double t_plus,
                const std::string& out, const CommonArgs& common) {
    using qrho::wavefunc::OscFrame;
    const OscFrame in = OscFrame::deterministic(omega_in, t);
    const OscFrame outf = OscFrame::deterministic(omega_out, t_plus);
    const auto s = qrho::wavefunc::s_local(n_max, in, outf);

    {
        TableWriter table(out, {"n", "m", "re", "im", "abs2"}, common.format);
        for (int n = 0; n <= n_max; ++n)
            for (int m = 0; m <= n_max; ++m) {
                const std::complex<double> v = s.entries(n, m);
                table.row({(double)n, (double)m, v.real(), v.imag(), std::norm(v)});
            }
    }
    double worst = 0.0;
    for (int n = 0; n <= std::min(4, n_max); ++n)
        for (int m = 0; m <= std::min(4, n_max); ++m)
            worst = std::max(worst, s.unitarity_defect(n_max, n, m));
    json params{{"omega_in", omega_in}, {"omega_out", omega_out}, {"n_max", n_max},
                {"t", t},               {"t_plus", t_plus},       {"out", out}};
    write_manifest(out, "smatrix", params, 0, json{{"unitarity_probe", worst}}, {out},
                   common.argv_tail);
    std::cout << "unitarity defect (n,m <= 4, K = " << n_max << "): " << worst << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// selftest: compiled-in invariant battery.  Deterministic output.

int run_selftest();

// ---------------------------------------------------------------------------

int dispatch(std::vector<std::string> args);

int run_from_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qrho::Error("cannot open manifest " + path);
    json m = json::parse(f);
    std::vector<std::string> args = m["parameters"]["argv"].get<std::vector<std::string>>();
    return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"stochastic quantum oscillator toolkit"};
    app.require_subcommand(0, 1);

    std::string from_manifest;
    app.add_option("--from-manifest", from_manifest,
                   "re-run a previous invocation from its manifest");
    std::string format = "csv";
    app.add_option("--format", format, "data file format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // stationary-dist
    auto* sd = app.add_subcommand("stationary-dist",
                                  "scaled stationary density Q_s over theta_bar");
    std::string sd_lambda = "1", sd_gamma = "1", sd_out = "out";
    double sd_min = -10.0, sd_max = 10.0;
    int sd_points = 801;
    sd->add_option("--lambda", sd_lambda, "lambda grid (list or start:stop:count)");
    sd->add_option("--gamma", sd_gamma, "gamma grid");
    sd->add_option("--theta-min", sd_min);
    sd->add_option("--theta-max", sd_max);
    sd->add_option("--points", sd_points);
    sd->add_option("--out-dir", sd_out, "output directory");

    // vacuum-transition
    auto* vt = app.add_subcommand("vacuum-transition",
                                  "vacuum-vacuum transition probability grid");
    std::string vt_lambda = "1", vt_rho = "0:0.9:10", vt_lp = "", vt_out = "delta.csv";
    double vt_tol = 1e-6;
    vt->add_option("--lambda", vt_lambda);
    vt->add_option("--rho", vt_rho);
    vt->add_option("--lambda-plus", vt_lp,
                   "out-channel coupling; empty selects the eps_plus -> 0 form");
    vt->add_option("--tolerance", vt_tol);
    vt->add_option("--out", vt_out);

    // thermo
    auto* th = app.add_subcommand("thermo", "vacuum thermodynamics sweep");
    std::string th_lp = "1:100:25", th_out = "thermo.csv";
    double th_omega = 1.0, th_k = 1.0;
    th->add_option("--lambda-plus", th_lp);
    th->add_option("--omega-as", th_omega);
    th->add_option("--k", th_k);
    th->add_option("--out", th_out);

    // sde-ensemble
    auto* se = app.add_subcommand("sde-ensemble", "phase-SDE ensemble histogram");
    double se_win = 1.0, se_wout = 1.0, se_eps = 1.0, se_f0 = 0.0, se_tc = 0.0;
    double se_t0 = -2.0, se_t1 = 15.0, se_dt = 1e-3, se_tmax = 0.0, se_range = 10.0;
    int se_ntraj = 10000, se_bins = 64;
    std::uint64_t se_seed = 12345;
    std::string se_profile = "constant", se_out = "hist.csv", se_dump = "";
    se->add_option("--omega-in", se_win);
    se->add_option("--omega-out", se_wout);
    se->add_option("--profile", se_profile, "constant | step | smooth-tanh");
    se->add_option("--epsilon", se_eps);
    se->add_option("--f0", se_f0);
    se->add_option("--tc", se_tc);
    se->add_option("--t0", se_t0);
    se->add_option("--t1", se_t1);
    se->add_option("--dt", se_dt);
    se->add_option("--n-traj", se_ntraj);
    se->add_option("--theta-max", se_tmax, "0 selects the default cap");
    se->add_option("--seed", se_seed);
    se->add_option("--bins", se_bins);
    se->add_option("--hist-range", se_range);
    se->add_option("--out", se_out);
    se->add_option("--dump-trajectory", se_dump, "CSV dump of stream 0");

    // smatrix
    auto* sm = app.add_subcommand("smatrix", "local transition matrix");
    double sm_win = 1.0, sm_wout = 4.0, sm_t = 0.0, sm_tp = 0.0;
    int sm_nmax = 8;
    std::string sm_out = "smatrix.csv";
    sm->add_option("--omega-in", sm_win);
    sm->add_option("--omega-out", sm_wout);
    sm->add_option("--n-max", sm_nmax);
    sm->add_option("--t", sm_t);
    sm->add_option("--t-plus", sm_tp);
    sm->add_option("--out", sm_out);

    auto* st = app.add_subcommand("selftest", "run the invariant battery");

    std::vector<const char*> argv;
    argv.push_back("qrho");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    CommonArgs common{args, format};
    if (!from_manifest.empty()) return run_from_manifest(from_manifest);
    if (sd->parsed())
        return run_stationary_dist(sd_lambda, sd_gamma, sd_min, sd_max, sd_points, sd_out,
                                   common);
    if (vt->parsed())
        return run_vacuum_transition(vt_lambda, vt_rho, vt_lp, vt_tol, vt_out, common);
    if (th->parsed()) return run_thermo(th_lp, th_omega, th_k, th_out, common);
    if (se->parsed())
        return run_sde_ensemble(se_win, se_wout, se_profile, se_eps, se_f0, se_tc, se_t0,
                                se_t1, se_dt, se_ntraj, se_tmax, se_seed, se_bins,
                                se_range, se_out, se_dump, common);
    if (sm->parsed())
        return run_smatrix(sm_win, sm_wout, sm_nmax, sm_t, sm_tp, sm_out, common);
    if (st->parsed()) return run_selftest();
    std::cout << app.help();
    return 0;
}

// ---------------------------------------------------------------------------

struct SelfTest {
    int failures = 0;
    void check(bool ok, const std::string& name) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    }
};

int run_selftest() {
    using namespace qrho;
    SelfTest t;
    constexpr double kPi = 3.14159265358979323846;

    {
        const auto v = special::airy(0.0);
        t.check(std::fabs(v.ai - 0.3550280538878172) < 1e-15 &&
                    std::fabs(v.bi - 0.6149266274460007) < 1e-15,
                "airy values at 0");
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = -20.0 + 40.0 * i / 2000.0;
            const auto a = special::airy(x);
            worst = std::max(worst,
                             std::fabs(a.ai * a.bi_prime - a.ai_prime * a.bi - 1.0 / kPi) *
                                 kPi);
        }
        t.check(worst < 1e-10, "airy Wronskian sweep on [-20, 20]");
    }
    t.check(std::fabs(special::hermite(3, 2.0) - 40.0) < 1e-12 &&
                std::fabs(special::hermite(4, 1.0) + 20.0) < 1e-12,
            "hermite recurrence vs closed forms");
    {
        const double g16 = std::exp(std::lgamma(1.0 / 6.0));
        const double ref = std::pow(12.0, 1.0 / 6.0) / 3.0 * g16;
        const double got = special::a_p_integral(-0.5, 1, 0.0);
        t.check(std::fabs(got - ref) < 1e-9 * ref, "quadrature vs Gamma oracle");
    }
    {
        double worst = 0.0;
        for (double x : {-10.0, -3.0, 0.0, 3.0, 10.0}) {
            const double qf = fp::flux_scaled_quadrature(x);
            const double af = fp::flux_scaled(x);
            worst = std::max(worst, std::fabs(qf - af) / af);
        }
        t.check(worst < 1e-8, "flux two-route agreement");
    }
    {
        special::QuadratureSpec qs;
        qs.relative_tolerance = 1e-9;
        double worst = 0.0;
        for (double lg : {0.5, 5.0}) {
            const double total =
                special::integrate([&](double u) {
                    const double y = std::tan(u);
                    return fp::stationary_density(lg, 1.0, y) * (1.0 + y * y);
                }, special::Domain::finite(-kPi / 2 + 1e-12, kPi / 2 - 1e-12), qs).value;
            worst = std::max(worst, std::fabs(total - 1.0));
        }
        t.check(worst < 1e-6, "stationary density normalization");
    }
    {
        sde::IntegrationParams p;
        p.profile = sde::FrequencyProfile::constant(1.0);
        p.noise.epsilon = 0.0;
        p.t0 = 0.0;
        p.t1 = 5.0;
        p.dt = 1e-3;
        const auto tr = sde::integrate_phase(p);
        t.check(tr.theta.abs().maxCoeff() == 0.0 &&
                    (tr.phi - 1.0).abs().maxCoeff() == 0.0,
                "SDE fixed point is exact at epsilon = 0");
    }
    {
        using wavefunc::OscFrame;
        const auto in = OscFrame::deterministic(1.0, 0.0);
        const auto out = OscFrame::deterministic(4.0, 0.0);
        const auto s = wavefunc::s_local(16, in, out);
        const double s00sq = std::norm(s.entries(0, 0));
        t.check(std::fabs(s00sq - 0.8) < 1e-12, "sudden-step |S00|^2 = 0.8");
        t.check(std::abs(s.entries(1, 1) - std::pow(s.entries(0, 0), 3)) < 1e-12,
                "S11 = S00^3");
        double worstp = 0.0;
        for (int n = 0; n <= 16; ++n)
            for (int m = 0; m <= 16; ++m)
                if ((n + m) % 2) worstp = std::max(worstp, std::abs(s.entries(n, m)));
        t.check(worstp < 1e-12, "parity selection rule");
        t.check(s.unitarity_defect(16, 0, 0) < 2e-4, "unitarity partial sum trend");
    }
    {
        const auto r = transitions::delta_00_simplified(1e6, 0.36);
        t.check(std::fabs(r.delta - 0.8) < 1e-3, "sudden-limit vacuum transition");
    }
    {
        const auto md = special::detail::modulus_derivs(0.0);
        const double fd = (special::ln_airy_modulus_sq(1e-6) -
                           special::ln_airy_modulus_sq(-1e-6)) / 2e-6;
        t.check(std::fabs(md.dln - fd) < 1e-8, "d ln A analytic vs finite difference");
        const double eps = thermo::epsilon_plus_of(100.0, 1.0);
        const double s16 = thermo::potentials(0.4, eps, 1.0).entropy;
        const double s21 = thermo::entropy_direct(0.4, eps, 1.0);
        t.check(std::fabs(s16 - s21) <= 1e-4 * std::max(1.0, std::fabs(s21)),
                "entropy composition vs direct route");
        const auto g = thermo::ground_energy(1000.0, 1.0);
        t.check(std::fabs(g.e_osc - 0.5) < 0.01 * 0.5, "ground energy asymptote");
    }

    std::cout << (t.failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return t.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(std::move(args));
    } catch (const qrho::ConvergenceError& e) {
        std::cerr << "numerical non-convergence: " << e.what()
                  << " (best = " << e.best_estimate << ", residual = " << e.residual
                  << ")\n";
        return 2;
    } catch (const qrho::StabilityError& e) {
        std::cerr << "numerical instability: " << e.what() << "\n";
        return 2;
    } catch (const qrho::Error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
