// cmarith: calculators and verification suites for the arithmetic of
// hermitian lattices, induced vector-valued forms, quadratic Hecke
// L-derivatives, and CM height identities.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "cmarith/report.hpp"

using namespace cmarith;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_out(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

NewformData load_newform(const std::string& src, const RunConfig& cfg) {
    if (src.empty() || src == "builtin")
        return cm_newform(ImagQuadField(cfg.D, cfg.pi_trace), cfg.weight,
                          cfg.D * (cfg.conv_prec + 1));
    auto ing = ingest_newform_csv(slurp(src), cfg.weight, cfg.D);
    if (ing.normalized) std::cerr << "warning: coefficients rescaled to c(1) = 1\n";
    if (!ing.holes.empty())
        std::cerr << "warning: " << ing.holes.size() << " missing indices filled with zero\n";
    return ing.form;
}

HermLattice load_lattice(const std::string& src, const RunConfig& cfg) {
    if (src.empty() || src == "builtin")
        return HermLattice::standard_selfdual(ImagQuadField(cfg.D, cfg.pi_trace), cfg.lambda_rank);
    return parse_lattice_json(slurp(src), cfg.pi_trace);
}

CMExtension load_field(const std::string& src, const RunConfig& cfg) {
    if (src.empty() || src == "builtin")
        return CMExtension(ImagQuadField(cfg.D, cfg.pi_trace), TotallyRealField(cfg.quadratic_F));
    return parse_field_json(slurp(src), cfg.pi_trace);
}

FElemQ parse_alpha(const std::string& text, int degree) {
    // "a0,a1,.../den"
    std::string coords = text, den = "1";
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        coords = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    FElemQ out;
    out.den = std::stoll(den);
    std::istringstream is(coords);
    std::string tok;
    while (std::getline(is, tok, ',')) out.num.push_back(std::stoll(tok));
    out.num.resize(size_t(degree), 0);
    return out;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    if (path.empty()) return;
    auto j = nlohmann::json::parse(slurp(path));
    if (j.contains("D")) cfg.D = j["D"].get<i64>();
    if (j.contains("pi_trace")) cfg.pi_trace = j["pi_trace"].get<int>();
    if (j.contains("quadratic_F")) cfg.quadratic_F = j["quadratic_F"].get<PolyZ>();
    if (j.contains("cubic_F")) cfg.cubic_F = j["cubic_F"].get<PolyZ>();
    if (j.contains("weight")) cfg.weight = j["weight"].get<int>();
    if (j.contains("lambda_rank")) cfg.lambda_rank = j["lambda_rank"].get<int>();
    if (j.contains("conv_prec")) cfg.conv_prec = j["conv_prec"].get<i64>();
    if (j.contains("twist_prec")) cfg.twist_prec = j["twist_prec"].get<i64>();
    if (j.contains("hecke_cutoff")) cfg.hecke_cutoff = j["hecke_cutoff"].get<i64>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hermitian-lattice theta series, induced forms, convolution identities, "
                 "quadratic Hecke L-derivatives, and CM height reports"};
    app.require_subcommand(1);
    app.fallthrough(true);

    RunConfig cfg;
    std::string config_path, out_path, format = "json";
    int jobs = 1;
    std::uint64_t seed = cfg.seed;
    app.add_option("--config", config_path, "JSON config overriding the defaults");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "report format: json|text|csv")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--jobs", jobs, "parallel checks");
    app.add_option("--seed", seed, "seed for randomized property checks");

    // field
    auto* c_field = app.add_subcommand("field", "field invariants of k, F, E");
    std::string field_json;
    c_field->add_option("--field-json", field_json, "field descriptor file");

    // theta
    auto* c_theta = app.add_subcommand("theta", "per-coset theta coefficients as CSV");
    std::string lattice_path;
    i64 theta_prec = 50;
    c_theta->add_option("--lattice", lattice_path, "lattice JSON file or 'builtin'");
    c_theta->add_option("--prec", theta_prec, "largest index");

    // induce
    auto* c_induce = app.add_subcommand("induce", "induced vector-valued coefficients as CSV");
    std::string nf_path;
    i64 induce_prec = 20;
    c_induce->add_option("--newform", nf_path, "newform CSV or 'builtin'");
    c_induce->add_option("--lattice", lattice_path, "positive definite block (JSON or 'builtin')");
    c_induce->add_option("--prec", induce_prec, "largest integer index");

    // convolve
    auto* c_conv = app.add_subcommand("convolve", "convolution checks and series");
    std::string check = "scalar-vector";
    i64 conv_prec = 0;
    c_conv->add_option("--newform", nf_path, "newform CSV or 'builtin'");
    c_conv->add_option("--lattice", lattice_path, "lattice JSON or 'builtin'");
    c_conv->add_option("--prec", conv_prec, "coefficient range");
    c_conv->add_option("--check", check, "coset | scalar-vector | euler")
        ->check(CLI::IsMember({"coset", "scalar-vector", "euler"}));

    // lfun
    auto* c_lfun = app.add_subcommand("lfun", "quadratic Hecke L-values");
    std::string mode = "both";
    double lfun_s = 0.0;
    bool deriv = false;
    c_lfun->add_option("--field-json", field_json, "field descriptor");
    c_lfun->add_option("--mode", mode, "abelian_factor | ideal_series | both")
        ->check(CLI::IsMember({"abelian_factor", "ideal_series", "both"}));
    c_lfun->add_option("--s", lfun_s, "evaluation point (0 for the derivative report)");
    c_lfun->add_flag("--deriv", deriv, "include the derivative at 0");

    // eisenstein
    auto* c_eis = app.add_subcommand("eisenstein", "Diff sets and a_F coefficients");
    std::string alpha_text;
    i64 trace_m = 0;
    c_eis->add_option("--field-json", field_json, "field descriptor");
    c_eis->add_option("--alpha", alpha_text, "a0,a1,.../den in the power basis");
    c_eis->add_option("--trace", trace_m, "sum a_F over totally positive alpha of this trace");

    // degrees
    auto* c_deg = app.add_subcommand("degrees", "small and big CM degrees");
    c_deg->add_option("--field-json", field_json, "field descriptor");
    c_deg->add_option("--lattice", lattice_path, "lattice JSON or 'builtin'");

    // faltings
    auto* c_falt = app.add_subcommand("faltings", "height report");
    bool table = false;
    c_falt->add_option("--field-json", field_json, "field descriptor");
    c_falt->add_flag("--table", table, "regression table over bundled (D, F) pairs");

    // verify
    auto* c_verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites = {"all"};
    c_verify->add_option("suite", suites, "lattice weilrep lfun convolution eisenstein heights all");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config_file(cfg, config_path);
        cfg.jobs = jobs;
        cfg.seed = seed;

        if (*c_field) {
            auto E = load_field(field_json, cfg);
            nlohmann::ordered_json j;
            j["k"] = {{"D", E.k().D()},
                      {"h", E.k().class_number()},
                      {"w", E.k().unit_count()}};
            nlohmann::ordered_json forms = nlohmann::ordered_json::array();
            for (auto& f : E.k().reduced_forms()) forms.push_back({f.a, f.b, f.c});
            j["k"]["reduced_forms"] = forms;
            j["F"] = {{"degree", E.n()}, {"poly_disc", E.F().poly_disc()}};
            j["E"] = {{"abs_disc", E.abs_disc_E()},
                      {"ramified_places", E.ramified_places()},
                      {"conductor_factor", E.conductor_factor()}};
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_theta) {
            auto L = load_lattice(lattice_path, cfg);
            write_out(out_path, emit_theta_csv(L, theta_prec));
        } else if (*c_induce) {
            auto g = load_newform(nf_path, cfg);
            auto Lam = load_lattice(lattice_path, cfg);
            auto L = HermLattice::rank1(Lam.field(), -1).direct_sum(Lam);
            InducedForm gt(g, L);
            write_out(out_path, emit_induced_csv(gt, induce_prec));
        } else if (*c_conv) {
            auto g = load_newform(nf_path, cfg);
            auto Lam = load_lattice(lattice_path, cfg);
            i64 prec = conv_prec > 0 ? conv_prec : cfg.conv_prec;
            nlohmann::ordered_json j;
            if (check == "coset") {
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                bool ok = true;
                for (i64 Q = 1; Q <= cfg.D; ++Q) {
                    if (cfg.D % Q) continue;
                    for (i64 m = 1; m <= prec; ++m) {
                        auto [lhs, rhs] = coset_twist_identity(Lam, Rational(m), Q);
                        if (lhs != rhs) ok = false;
                        rows.push_back({{"m", m}, {"Q", Q}, {"lhs", lhs}, {"rhs", rhs}});
                    }
                }
                j["check"] = "coset";
                j["pass"] = ok;
                j["rows"] = rows;
            } else if (check == "scalar-vector") {
                auto rep = scalar_vector_identity(g, Lam, prec);
                j["check"] = "scalar-vector";
                j["max_residual"] = rep.max_residual;
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                for (auto& [m, r] : rep.residuals)
                    rows.push_back({{"m", m.str()}, {"residual", r}});
                j["residuals"] = rows;
            } else {
                auto L = HermLattice::rank1(Lam.field(), -1).direct_sum(Lam);
                Rational det = L.det_hermitian();
                EulerFactorProduct P;
                auto al_eps = [&](i64 p) { return atkin_lehner(g, p).eps; };
                for (auto& [p, e] : factorize(cfg.D)) {
                    (void)e;
                    P.factors.push_back({p, al_eps(p) * to_cplx(gamma_p(p, g.weight, det, cfg.D))});
                }
                auto [d0, mult] = P.derivative_at_zero();
                j["check"] = "euler";
                j["value_at_0_re"] = P.value(0).real();
                j["value_at_0_im"] = P.value(0).imag();
                j["derivative_re"] = d0.real();
                j["derivative_im"] = d0.imag();
                j["vanishing_multiplicity"] = mult;
            }
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_lfun) {
            auto E = load_field(field_json, cfg);
            HeckeMode hm = mode == "abelian_factor" ? HeckeMode::abelian_factor
                           : mode == "ideal_series" ? HeckeMode::ideal_series
                                                    : HeckeMode::both;
            nlohmann::ordered_json j;
            if (lfun_s != 0.0) {
                cplx v = completed_lambda_abelian(E, lfun_s);
                j["s"] = lfun_s;
                j["lambda"] = v.real();
                j["method"] = "abelian_factor";
                j["est_error"] = 1e-10;
            } else {
                auto lr = hecke_L_chiE_deriv0(E, hm, cfg.hecke_cutoff);
                j["value"] = lr.L0;
                if (deriv || true) j["derivative"] = lr.Lprime0;
                j["method"] = lr.method;
                j["cutoff"] = lr.cutoff;
                j["est_error"] = lr.est_error;
            }
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_eis) {
            auto E = load_field(field_json, cfg);
            EisensteinContext ctx(E);
            nlohmann::ordered_json j;
            if (!alpha_text.empty()) {
                FElemQ alpha = parse_alpha(alpha_text, E.n());
                auto diff = diff_set(ctx, alpha);
                nlohmann::ordered_json dl = nlohmann::ordered_json::array();
                for (auto& P : diff) dl.push_back({{"ell", P.ell}, {"f", P.f}, {"e", P.e}});
                j["alpha"] = alpha_text;
                j["diff"] = dl;
                j["value"] = a_F_alpha(ctx, alpha);
            } else if (trace_m > 0) {
                j["trace"] = trace_m;
                j["candidates"] = trace_candidates(ctx, trace_m).size();
                j["value"] = trace_sum(ctx, trace_m);
            } else {
                auto lr = hecke_L_chiE_deriv0(E, HeckeMode::abelian_factor);
                j["constant_term_mu0"] = a_F_zero(ctx, lr);
            }
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_deg) {
            auto E = load_field(field_json, cfg);
            auto Lam = load_lattice(lattice_path, cfg);
            auto lr = hecke_L_chiE_deriv0(E, E.n() == 2 ? HeckeMode::abelian_factor : HeckeMode::both,
                                          cfg.hecke_cutoff);
            auto bd = deg_big(E, lr);
            nlohmann::ordered_json j;
            j["deg_small"] = deg_small(E.k(), Lam.aut_count()).str();
            j["aut_lambda"] = Lam.aut_count();
            j["deg_big"] = bd.value;
            if (bd.exact) j["deg_big_exact"] = bd.exact->str();
            j["n2_formula_crosscheck"] = (E.n() == 2);
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_falt) {
            nlohmann::ordered_json j;
            auto render = [&](const CMExtension& E) {
                auto lr = hecke_L_chiE_deriv0(E, E.n() == 2 ? HeckeMode::abelian_factor : HeckeMode::both,
                                              cfg.hecke_cutoff);
                auto rep = height_report(E, lr);
                nlohmann::ordered_json r;
                r["D"] = rep.D;
                r["n"] = rep.n;
                r["lambda0_chiE"] = rep.lambda0_chiE;
                r["logderiv_chiE"] = rep.logderiv_chiE;
                r["logderiv_chik"] = rep.logderiv_chik;
                r["hfalt_k"] = rep.hfalt_k;
                r["hfalt_E_Phi"] = rep.hfalt_E_Phi;
                r["deg_big"] = rep.deg_big_value;
                r["omega_degree_prediction"] = rep.omega_degree;
                r["gross_constant"] = rep.gross_c;
                r["consistency_residual"] = rep.consistency_residual;
                r["n2_formula_crosscheck"] = (rep.n == 2);
                return r;
            };
            if (table) {
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                for (i64 D : {i64(7), i64(11), i64(23)})
                    rows.push_back(render(
                        CMExtension(ImagQuadField(D), TotallyRealField(cfg.quadratic_F))));
                rows.push_back(render(
                    CMExtension(ImagQuadField(cfg.D, cfg.pi_trace), TotallyRealField(cfg.cubic_F))));
                j["table"] = rows;
            } else {
                j = render(load_field(field_json, cfg));
            }
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_verify) {
            auto rep = run_suite(cfg, suites);
            std::string text = format == "json" ? rep.to_json()
                               : format == "csv" ? rep.to_csv()
                                                 : rep.to_text();
            write_out(out_path, text);
            if (!rep.all_pass()) return 1;
        }
    } catch (const CLI::ParseError& e) {
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
