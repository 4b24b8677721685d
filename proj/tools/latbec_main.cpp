#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "latticebec/asymptotics.hpp"
#include "latticebec/dnls.hpp"
#include "latticebec/errors.hpp"
#include "latticebec/gp1d.hpp"
#include "latticebec/gp2d.hpp"
#include "latticebec/io.hpp"
#include "latticebec/potential.hpp"
#include "latticebec/regimes.hpp"
#include "latticebec/spectral.hpp"
#include "latticebec/wannier.hpp"

namespace {

using latbec::Settings;
using latbec::fmt15;
using ordered = nlohmann::ordered_json;

struct RunOut {
    ordered summary;
    std::vector<std::string> files;
    std::string message;
};

using Runner = RunOut (*)(const Settings&, bool);

latbec::PeriodicPotential make_potential(const Settings& s) {
    const std::string kind = s.str("potential", "sin2");
    const double T = s.num("T", 1.0);
    if (kind == "sin2") return latbec::PeriodicPotential::sinusoidal(T);
    if (kind == "fourier")
        return latbec::PeriodicPotential::fourier(T, s.numlist("coeffs"));
    throw latbec::UnsupportedPotential("unknown potential '" + kind +
                                       "' (expected sin2 or fourier)");
}

std::string out_path(const Settings& s, const std::string& name) {
    return (std::filesystem::path(s.str("out", ".")) / name).string();
}

void emit(const Settings& s, RunOut& out, const std::string& name,
          const std::string& content) {
    const std::string path = out_path(s, name);
    latbec::write_text_file(path, content);
    out.files.push_back(path);
}

std::vector<double> fit_eps_list(const Settings& s) {
    if (s.has("fit-eps")) return s.numlist("fit-eps");
    return {0.05, 0.04, 0.03, 0.025, 0.02};
}

double fitted_action(const latbec::PeriodicPotential& w,
                     const std::vector<double>& eps_list, int n_k, int M) {
    std::vector<double> taus;
    taus.reserve(eps_list.size());
    for (double e : eps_list)
        taus.push_back(latbec::hopping_from_band(w, e, n_k, M).tau);
    return latbec::agmon_fit_from_hopping(eps_list, taus);
}

RunOut run_bands(const Settings& s, bool files) {
    auto w = make_potential(s);
    const double eps = s.num("epsilon");
    const int n_k = int(s.integer("kpoints", 64));
    const int n_bands = int(s.integer("nbands", 3));
    const int M = int(s.integer("M", 128));

    latbec::BandStructure bs = latbec::band_structure(w, eps, n_k, n_bands, M);

    RunOut out;
    if (files) {
        std::vector<std::string> header{"k"};
        for (int j = 1; j <= n_bands; ++j)
            header.push_back("lambda" + std::to_string(j));
        std::vector<std::vector<double>> rows;
        rows.reserve(bs.k.size());
        for (std::size_t m = 0; m < bs.k.size(); ++m) {
            std::vector<double> row{bs.k[m]};
            for (int j = 0; j < n_bands; ++j) row.push_back(bs.bands[j][m]);
            rows.push_back(std::move(row));
        }
        emit(s, out, "bands.csv", latbec::csv15(header, rows));
    }

    double lo = bs.bands[0][0], hi = bs.bands[0][0];
    for (double v : bs.bands[0]) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.summary = {{"epsilon", eps},
                   {"T", w.period()},
                   {"kpoints", n_k},
                   {"nbands", n_bands},
                   {"lambda1_k0", bs.bands[0][0]},
                   {"lambda1_min", lo},
                   {"lambda1_max", hi},
                   {"bandwidth1", hi - lo}};
    return out;
}

RunOut run_wannier(const Settings& s, bool files) {
    auto w = make_potential(s);
    const double eps = s.num("epsilon");
    const int N = int(s.integer("N", 8));
    const int M = int(s.integer("M", 128));
    const int P = int(s.integer("P", 256));
    const int n_k = int(s.integer("kpoints", 64));

    latbec::WannierBasis basis = latbec::build_wannier(w, eps, N, M, P);
    latbec::Overlaps ov = latbec::overlaps(basis);
    const double tau_matrix = latbec::hopping_matrix_element(basis, w, eps);
    const double tau_band = latbec::hopping_from_band(w, eps, n_k, M).tau;
    const double s_fit = fitted_action(w, fit_eps_list(s), n_k, M);

    RunOut out;
    ordered hop = {{"tau_band", tau_band}, {"tau_matrix", tau_matrix},
                   {"q4", ov.q4},          {"q31", ov.q31},
                   {"q22", ov.q22},        {"S_fit", s_fit}};
    if (files) {
        std::vector<std::string> header{"z"};
        for (int j = 0; j < N; ++j)
            header.push_back("psi" + std::to_string(j));
        std::vector<std::vector<double>> rows;
        rows.reserve(basis.z.size());
        for (std::size_t i = 0; i < basis.z.size(); ++i) {
            std::vector<double> row{basis.z[i]};
            for (int j = 0; j < N; ++j) row.push_back(basis.psi[j][i]);
            rows.push_back(std::move(row));
        }
        emit(s, out, "wannier.csv", latbec::csv15(header, rows));
        emit(s, out, "hopping.json", latbec::dump15(hop));
    }

    out.summary = hop;
    out.summary["epsilon"] = eps;
    out.summary["N"] = N;
    out.summary["band_gap"] = basis.gap;
    out.message = "tau_band = " + fmt15(tau_band) +
                  ", tau_matrix = " + fmt15(tau_matrix);
    return out;
}

RunOut run_tunneling(const Settings& s, bool files) {
    auto w = make_potential(s);
    const double eps = s.num("epsilon", 0.02);
    const int M = int(s.integer("M", 128));
    const int n_k = int(s.integer("kpoints", 64));

    const double S = latbec::agmon_action(w);
    latbec::TunnelingPrefactor pf = latbec::tunneling_prefactor(w);
    const double tau_band = latbec::hopping_from_band(w, eps, n_k, M).tau;
    const double tau_pred = latbec::tau_asymptotic(w, eps);
    const double s_fit = fitted_action(w, fit_eps_list(s), n_k, M);
    latbec::HarmonicPrediction harm = latbec::harmonic_levels(w, eps, 3);
    latbec::TF2D tf2 = latbec::tf2d(1.0, 1.0, 0.0);
    const double gamma = w.curvature();
    const double tf_pref =
        std::pow(3.0, 5.0 / 3.0) / 10.0 * std::cbrt(gamma);
    const double tf_pref_var = std::pow(2.0, -4.0 / 3.0) *
                               std::pow(3.0, 5.0 / 3.0) / 5.0 *
                               std::pow(gamma, 2.0 / 3.0);

    RunOut out;
    out.summary = {
        {"epsilon", eps},
        {"T", w.period()},
        {"S_agmon", S},
        {"S_fit", s_fit},
        {"A_regularized", pf.A},
        {"c_tau", pf.c_tau},
        {"c_tau_formula", "w''(0)^(3/4) pi^(-1/2) exp(sqrt(w''(0)/2) A)"},
        {"c_tau_variant", pf.c_tau_variant},
        {"c_tau_variant_formula", "2^(3/4) pi^(-1/2) exp(A)"},
        {"tau_band", tau_band},
        {"tau_asymptotic", tau_pred},
        {"tau_ratio", tau_band / tau_pred},
        {"harmonic_gap", harm.gap},
        {"harmonic_lambda1", harm.levels[0]},
        {"harmonic_l4", harm.l4},
        {"harmonic_l4_variant", harm.l4_variant},
        {"tf1d_prefactor", tf_pref},
        {"tf1d_prefactor_formula",
         "(3^(5/3)/10) w''(0)^(1/3) ghat^(2/3) eps^(-2/3)"},
        {"tf1d_prefactor_variant", tf_pref_var},
        {"tf1d_prefactor_variant_formula",
         "2^(-4/3) (3^(5/3)/5) w''(0)^(2/3) ghat^(2/3) eps^(-2/3)"},
        {"c_tf_2d", tf2.c_tf}};
    if (files) emit(s, out, "asymptotics.json", latbec::dump15(out.summary));
    out.message = "S_fit = " + fmt15(s_fit) + " (Agmon S = " + fmt15(S) + ")";
    return out;
}

double ghat_from(const Settings& s) {
    if (s.has("ghat")) return s.num("ghat");
    if (s.has("g")) return latbec::hatg(s.num("g"), s.num("omega-perp"));
    throw latbec::InvalidParameter(
        "missing required option --ghat (or --g with --omega-perp)");
}

RunOut run_minimize_a(const Settings& s, bool files) {
    auto w = make_potential(s);
    const double eps = s.num("epsilon");
    const double gh = ghat_from(s);
    const int N = int(s.integer("N", 1));
    const int P = int(s.integer("P", 256));
    const double tol = s.num("tol", 1e-9);
    const int max_iter = int(s.integer("max-iter", 50000));

    latbec::GPState1D st = latbec::minimize_a(w, eps, gh, N, {}, tol, P,
                                              max_iter);

    RunOut out;
    ordered summary = {{"m_A", st.energy},
                       {"mu", st.mu},
                       {"iterations", st.iterations},
                       {"residual", st.residual}};
    if (files) {
        std::vector<std::vector<double>> rows;
        rows.reserve(st.z.size());
        for (std::size_t i = 0; i < st.z.size(); ++i)
            rows.push_back({st.z[i], st.phi[i]});
        emit(s, out, "gp1d_profile.csv", latbec::csv15({"z", "phi"}, rows));
        emit(s, out, "gp1d.json", latbec::dump15(summary));
    }
    out.summary = summary;
    out.summary["epsilon"] = eps;
    out.summary["g_hat"] = gh;
    out.summary["N"] = N;
    out.message = "m_A = " + fmt15(st.energy);
    return out;
}

RunOut run_minimize_b(const Settings& s, bool files) {
    const double om = s.num("omega-perp", 1.0);
    const double Om = s.num("Omega", 0.0);
    const double tol = s.num("tol", 1e-9);
    const int P = int(s.integer("P", 4096));
    const int max_iter = int(s.integer("max-iter", 20000));

    double gt;
    if (s.has("gtilde")) {
        gt = s.num("gtilde");
    } else {
        const double l4 = s.has("phi1-l4")
                              ? s.num("phi1-l4")
                              : latbec::quartic_phi1(make_potential(s),
                                                     s.num("epsilon"));
        gt = latbec::tildeg(s.num("g"), l4);
    }

    latbec::TransverseBounds tb = latbec::minimize_b(om, gt, Om, tol, P,
                                                     max_iter);

    RunOut out;
    ordered summary = {{"m_B", tb.m_b},
                       {"lower_bound_rot", tb.lower_rot},
                       {"g_tilde", gt}};
    if (files) {
        std::vector<std::vector<double>> rows;
        rows.reserve(tb.state.r.size());
        for (std::size_t i = 0; i < tb.state.r.size(); ++i)
            rows.push_back({tb.state.r[i], tb.state.psi[i]});
        emit(s, out, "gp2d_profile.csv", latbec::csv15({"r", "psi"}, rows));
        emit(s, out, "gp2d.json", latbec::dump15(summary));
    }
    out.summary = summary;
    out.summary["omega_perp"] = om;
    out.summary["Omega"] = Om;
    out.summary["lower_universal"] = tb.lower_universal;
    out.summary["residual"] = tb.state.residual;
    out.summary["iterations"] = tb.state.iterations;
    out.message = "m_B = " + fmt15(tb.m_b);
    return out;
}

RunOut run_tf(const Settings& s, bool files) {
    auto w = make_potential(s);
    const double eps = s.num("epsilon");
    const double gh = ghat_from(s);
    const int grid = int(s.integer("grid", 2048));

    latbec::TFProfile1D tf = latbec::tf1d_energy(w, eps, gh, grid);

    RunOut out;
    ordered summary = {{"epsilon", eps},
                       {"g_hat", gh},
                       {"mu", tf.mu},
                       {"energy", tf.energy},
                       {"support_overflow", tf.support_overflow},
                       {"harmonic_energy", tf.harmonic_energy},
                       {"harmonic_energy_variant", tf.harmonic_energy_variant}};
    if (files) {
        std::vector<std::vector<double>> rows;
        rows.reserve(tf.z.size());
        for (std::size_t i = 0; i < tf.z.size(); ++i)
            rows.push_back({tf.z[i], tf.phi[i]});
        emit(s, out, "tf1d_profile.csv", latbec::csv15({"z", "phi"}, rows));
        emit(s, out, "tf1d.json", latbec::dump15(summary));
    }
    out.summary = summary;
    out.message = "E_TF = " + fmt15(tf.energy);
    return out;
}

RunOut run_dnls(const Settings& s, bool files) {
    latbec::DNLSProblem p;
    p.tau = s.num("tau", 1.0);
    p.I = s.num("I", 1.0);
    p.nu = s.num("nu", 1.0);
    p.N = int(s.integer("N", 1));
    p.k = s.num("k", 0.0);
    const int restarts = int(s.integer("restarts", 16));
    const double tol = s.num("tol", 1e-12);
    const unsigned seed = unsigned(s.integer("seed", 12345));

    latbec::DNLSState st = latbec::minimize_dnls(p, restarts, tol, seed);

    ordered summary = {{"tau", p.tau},
                       {"I", p.I},
                       {"nu", p.nu},
                       {"N", p.N},
                       {"k", p.k},
                       {"E", st.E},
                       {"energy", st.energy},
                       {"mu", st.mu},
                       {"residual", st.residual},
                       {"iterations", st.iterations},
                       {"degenerate", st.degenerate}};
    if (p.N <= 2) {
        ordered arr = ordered::array();
        for (const auto& b : latbec::closed_branches(p))
            arr.push_back(ordered{{"label", b.label},
                                  {"E", b.E},
                                  {"mu", b.mu},
                                  {"degenerate", b.degenerate}});
        summary["branches"] = arr;
    }

    RunOut out;
    if (files) emit(s, out, "dnls.json", latbec::dump15(summary));
    out.summary = std::move(summary);
    out.message = "E = " + fmt15(st.E);
    return out;
}

latbec::PhysicalParams params_from(const Settings& s) {
    latbec::PhysicalParams p;
    p.g = s.num("g");
    p.omega_perp = s.num("omega-perp", 1.0);
    p.Omega = s.num("Omega", 0.0);
    p.epsilon = s.num("epsilon");
    p.T = s.num("T", 1.0);
    p.N = int(s.integer("N", 1));
    return p;
}

// Spectral inputs of the universal bounds: one-period ground eigenvalue at
// k = 0 and the quartic norm of its eigenfunction.
void spectral_inputs(const Settings& s, const latbec::PhysicalParams& p,
                     double& lambda1z, double& phi1_l4) {
    auto w = make_potential(s);
    const int M = int(s.integer("M", 128));
    const int P = int(s.integer("P", 1024));
    lambda1z =
        latbec::lowest_eigs(latbec::assemble(w, p.epsilon, 0.0, M), 1)
            .values[0];
    phi1_l4 = latbec::quartic_phi1(w, p.epsilon, M, P);
}

RunOut run_classify(const Settings& s, bool files) {
    latbec::PhysicalParams p = params_from(s);
    const double rho = s.num("rho", 0.1);
    const double c = s.num("c", 0.0);
    const double m_a = s.has("m-a")
                           ? s.num("m-a")
                           : std::numeric_limits<double>::quiet_NaN();

    latbec::RegimeReport rep = latbec::classify(p, rho, c, m_a);
    double lam = 0.0, l4 = 0.0;
    spectral_inputs(s, p, lam, l4);
    rep.bounds = latbec::universal_bounds(p, lam, l4);

    ordered rows = ordered::array();
    for (const auto& r : rep.conditions)
        rows.push_back(ordered{{"name", r.name},
                               {"lhs", r.lhs},
                               {"rhs", r.rhs},
                               {"ratio", r.ratio},
                               {"kind", r.much_less ? "much-less" : "at-most"},
                               {"satisfied", r.satisfied}});
    ordered summary = {
        {"g", p.g},
        {"omega_perp", p.omega_perp},
        {"Omega", p.Omega},
        {"epsilon", p.epsilon},
        {"T", p.T},
        {"N", p.N},
        {"rho", rep.rho},
        {"c", rep.c},
        {"regime", rep.regime},
        {"route", std::string(1, rep.route)},
        {"order_formula", rep.order_formula},
        {"order_value", rep.order_value},
        {"m_a_source", rep.m_a_source},
        {"lambda_1z", lam},
        {"phi1_l4", l4},
        {"bounds", ordered{{"lower", rep.bounds.lower},
                           {"upper", rep.bounds.upper},
                           {"i_n", rep.bounds.i_n}}},
        {"conditions", rows}};

    RunOut out;
    if (files) emit(s, out, "regime_report.json", latbec::dump15(summary));
    out.summary = std::move(summary);
    out.message = "regime = " + rep.regime;
    return out;
}

RunOut run_bounds(const Settings& s, bool files) {
    latbec::PhysicalParams p = params_from(s);
    double lam = 0.0, l4 = 0.0;
    spectral_inputs(s, p, lam, l4);
    latbec::UniversalBounds b = latbec::universal_bounds(p, lam, l4);

    ordered summary = {{"lambda_1z", lam},
                       {"phi1_l4", l4},
                       {"i_n", b.i_n},
                       {"lower", b.lower},
                       {"upper", b.upper}};
    std::string msg = "E in [" + fmt15(b.lower) + ", " + fmt15(b.upper) + "]";
    if (s.has("route") || s.has("m")) {
        const std::string route = s.str("route");
        if (route.size() != 1)
            throw latbec::InvalidParameter("option --route: expected A or B");
        const double e = latbec::compose(p, route[0], s.num("m"), lam, l4);
        summary["route"] = route;
        summary["m"] = s.num("m");
        summary["composed_E"] = e;
        msg = "E = " + fmt15(e) + " " + msg;
    }

    RunOut out;
    if (files) emit(s, out, "bounds.json", latbec::dump15(summary));
    out.summary = std::move(summary);
    out.message = std::move(msg);
    return out;
}

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table = {
        {"bands", run_bands},         {"wannier", run_wannier},
        {"tunneling", run_tunneling}, {"minimize-a", run_minimize_a},
        {"minimize-b", run_minimize_b}, {"tf", run_tf},
        {"dnls", run_dnls},           {"classify", run_classify},
        {"bounds", run_bounds}};
    return table;
}

int worker_count(std::size_t points) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("LATTICE_BEC_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 1)
            throw latbec::InvalidParameter(
                "LATTICE_BEC_THREADS must be a positive integer");
        n = std::min<unsigned>(n, unsigned(cap));
    }
    return int(std::min<std::size_t>(n, points));
}

RunOut run_sweep(const Settings& s, bool files) {
    const std::string command = s.str("command");
    auto it = runners().find(command);
    if (it == runners().end())
        throw latbec::InvalidParameter("option --command: unknown command '" +
                                       command + "'");
    const Runner inner = it->second;

    std::vector<std::string> names;
    if (s.raw().contains("param") && s.raw().at("param").is_array())
        for (const auto& v : s.raw().at("param"))
            names.push_back(v.get<std::string>());
    else
        names.push_back(s.str("param"));

    std::vector<std::vector<double>> lists;
    {
        const auto& v = s.raw().contains("values")
                            ? s.raw().at("values")
                            : nlohmann::json();
        if (v.is_null())
            throw latbec::InvalidParameter("missing required option --values");
        if (v.is_array() && !v.empty() && v.front().is_string()) {
            for (const auto& e : v) {
                Settings one(nlohmann::json{{"values", e}});
                lists.push_back(one.numlist("values"));
            }
        } else {
            lists.push_back(s.numlist("values"));
        }
    }
    if (names.size() != lists.size())
        throw latbec::InvalidParameter(
            "each --param needs a matching --values list");
    for (auto& l : lists) std::sort(l.begin(), l.end());

    std::size_t total = 1;
    for (const auto& l : lists) {
        if (l.empty()) throw latbec::InvalidParameter("empty --values list");
        total *= l.size();
    }

    Settings base = s;
    base.erase("command");
    base.erase("param");
    base.erase("values");

    // Cross product in lexicographic order of the sorted value lists, so
    // the output order is the sorted parameter tuple regardless of the
    // completion order of the workers.
    std::vector<std::vector<double>> tuples(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::vector<double> t(names.size());
        for (std::size_t d = names.size(); d-- > 0;) {
            t[d] = lists[d][rem % lists[d].size()];
            rem /= lists[d].size();
        }
        tuples[idx] = std::move(t);
    }

    std::vector<ordered> rows(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                Settings point = base;
                for (std::size_t d = 0; d < names.size(); ++d)
                    point.set(names[d], tuples[i][d]);
                ordered row;
                for (std::size_t d = 0; d < names.size(); ++d)
                    row[names[d]] = tuples[i][d];
                RunOut r = inner(point, false);
                for (auto& el : r.summary.items())
                    if (!row.contains(el.key())) row[el.key()] = el.value();
                rows[i] = std::move(row);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int workers = worker_count(total);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ordered arr = ordered::array();
    for (auto& r : rows) arr.push_back(std::move(r));

    RunOut out;
    if (files) emit(s, out, "sweep.json", latbec::dump15(arr));
    out.summary = ordered{{"command", command}, {"rows", total}};
    out.message = std::to_string(total) + " rows (" + command + ")";
    return out;
}

struct SubOptions {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::vector<std::string> params;
    std::vector<std::string> value_lists;
};

const std::vector<std::pair<std::string, std::string>> kOptionHelp = {
    {"potential", "lattice potential kind: sin2 | fourier"},
    {"T", "lattice period"},
    {"coeffs", "cosine coefficients a0,a1,... (fourier potential)"},
    {"epsilon", "semi-classical lattice depth parameter"},
    {"kpoints", "k grid size"},
    {"nbands", "number of bands"},
    {"M", "plane-wave cutoff (basis size 2M+1)"},
    {"N", "number of wells / lattice sites"},
    {"P", "grid points per period (or radial points)"},
    {"tol", "convergence tolerance"},
    {"max-iter", "iteration cap"},
    {"grid", "Thomas-Fermi quadrature grid"},
    {"fit-eps", "epsilon list for the tunneling-action fit"},
    {"ghat", "effective 1d coupling"},
    {"g", "scattering strength"},
    {"omega-perp", "transverse frequency"},
    {"Omega", "rotation speed"},
    {"gtilde", "effective transverse coupling"},
    {"phi1-l4", "quartic norm of the longitudinal ground state"},
    {"tau", "hopping amplitude"},
    {"I", "on-site interaction"},
    {"nu", "particles per site"},
    {"k", "Floquet quasi-momentum"},
    {"restarts", "multistart count"},
    {"seed", "random multistart seed"},
    {"rho", "threshold for 'much smaller than'"},
    {"c", "bound for 'bounded by a constant' (default 1/rho)"},
    {"m-a", "measured reduced minimum for the rotation conditions"},
    {"route", "composition route: A | B"},
    {"m", "reduced minimum to compose"},
};

void add_opts(SubOptions& so, const std::vector<std::string>& names) {
    for (const auto& n : names) {
        std::string help = "value";
        for (const auto& [key, h] : kOptionHelp)
            if (key == n) help = h;
        so.app->add_option("--" + n, so.values[n], help);
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Spectral, tunneling and reduced Gross-Pitaevskii solvers "
                 "for rotating condensates in deep optical lattices"};
    app.require_subcommand(1);

    std::string config_path, out_dir, seed_str;
    app.add_option("--config", config_path,
                   "flat key-value JSON config (flags override)");
    app.add_option("--out", out_dir, "output directory (default .)");
    app.add_option("--seed", seed_str, "random multistart seed");

    const std::vector<std::string> potential_opts{"potential", "T", "coeffs"};
    auto with_potential = [&](std::vector<std::string> extra) {
        std::vector<std::string> all = potential_opts;
        all.insert(all.end(), extra.begin(), extra.end());
        return all;
    };

    std::map<std::string, SubOptions> subs;
    auto make_sub = [&](const std::string& name, const std::string& desc,
                        const std::vector<std::string>& opts) {
        SubOptions& so = subs[name];
        so.app = app.add_subcommand(name, desc);
        so.app->fallthrough();
        add_opts(so, opts);
    };

    make_sub("bands", "Floquet band structure to bands.csv",
             with_potential({"epsilon", "kpoints", "nbands", "M"}));
    make_sub("wannier",
             "Wannier basis, overlaps and hopping to wannier.csv/hopping.json",
             with_potential({"epsilon", "N", "M", "P", "kpoints", "fit-eps"}));
    make_sub("tunneling",
             "tunneling asymptotics and constants to asymptotics.json",
             with_potential({"epsilon", "M", "kpoints", "fit-eps"}));
    make_sub("minimize-a",
             "longitudinal reduced minimization to gp1d_profile.csv/gp1d.json",
             with_potential({"epsilon", "ghat", "g", "omega-perp", "N", "P",
                             "tol", "max-iter"}));
    make_sub("minimize-b",
             "transverse radial minimization to gp2d_profile.csv/gp2d.json",
             with_potential({"epsilon", "gtilde", "g", "phi1-l4", "omega-perp",
                             "Omega", "P", "tol", "max-iter", "M"}));
    make_sub("tf", "1d Thomas-Fermi profile to tf1d_profile.csv/tf1d.json",
             with_potential({"epsilon", "ghat", "g", "omega-perp", "grid"}));
    make_sub("dnls", "discrete NLS ground state to dnls.json",
             {"tau", "I", "nu", "N", "k", "restarts", "tol", "seed"});
    make_sub("classify", "asymptotic regime report to regime_report.json",
             with_potential({"g", "omega-perp", "Omega", "epsilon", "N",
                             "rho", "c", "m-a", "M", "P"}));
    make_sub("bounds", "universal energy bounds to bounds.json",
             with_potential({"g", "omega-perp", "Omega", "epsilon", "N", "M",
                             "P", "route", "m"}));
    {
        std::vector<std::string> all;
        for (const auto& [key, h] : kOptionHelp) all.push_back(key);
        make_sub("sweep",
                 "run a command over a sorted parameter grid to sweep.json",
                 all);
        SubOptions& so = subs["sweep"];
        so.app->add_option("--command", so.values["command"],
                           "command to sweep");
        so.app->add_option("--param", so.params, "swept option (repeatable)");
        so.app->add_option("--values", so.value_lists,
                           "comma-separated values, one list per --param");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        nlohmann::json kv = config_path.empty()
                                ? nlohmann::json::object()
                                : latbec::load_flat_config(config_path);
        if (app.count("--out") > 0) kv["out"] = out_dir;
        if (app.count("--seed") > 0) kv["seed"] = seed_str;

        CLI::App* picked = app.get_subcommands().front();
        const std::string name = picked->get_name();
        SubOptions& so = subs.at(name);
        for (const auto& [opt, val] : so.values)
            if (so.app->count("--" + opt) > 0) kv[opt] = val;
        if (!so.params.empty()) kv["param"] = so.params;
        if (!so.value_lists.empty()) kv["values"] = so.value_lists;

        Settings s(kv);
        RunOut out = (name == "sweep") ? run_sweep(s, true)
                                       : runners().at(name)(s, true);
        for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
        if (!out.message.empty()) std::cout << out.message << "\n";
        return 0;
    } catch (const latbec::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const latbec::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
