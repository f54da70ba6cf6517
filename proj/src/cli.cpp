#include "intertwine/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "intertwine/checks.hpp"
#include "intertwine/errors.hpp"
#include "intertwine/rewrite.hpp"

namespace intertwine {

namespace {

using nlohmann::json;

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ConfigError"; }
};

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) throw DomainError("malformed complex value '" + whole + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::logic_error&) {
        throw DomainError("malformed complex value '" + whole + "'");
    }
    if (used != s.size()) throw DomainError("malformed complex value '" + whole + "'");
    return v;
}

std::vector<int> parse_bands(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::logic_error&) {
            throw ConfigError("malformed band list '" + text + "'");
        }
        if (used != item.size() || v < 1) throw ConfigError("malformed band list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty band list");
    return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

OperatorWord load_word(const std::string& source) {
    if (source == "yb-lhs") return yang_baxter_lhs();
    if (source == "yb-rhs") return yang_baxter_rhs();
    std::ifstream in(source);
    if (!in) throw ConfigError("cannot read word file '" + source + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw StructureError(std::string("word file: ") + e.what());
    }
    return word_from_json(j);
}

void write_json_file(const std::string& path, const json& j) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << j.dump(2) << "\n";
}

// Numbers become JSON numbers; everything else (complex values, paths,
// lists) is echoed verbatim.
json echo_value(const std::string& text) {
    if (text.empty()) return text;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) return text;
    long long i = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (ec == std::errc() && ptr == text.data() + text.size()) return i;
    return v;
}

// Echo of the options of one subcommand.
json echo_config(const CLI::App* sub) {
    json cfg = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help") continue;
        const bool flag = opt->get_expected_max() == 0;
        if (flag) {
            cfg[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            const auto& res = opt->results();
            if (res.size() == 1) {
                cfg[name] = echo_value(res[0]);
            } else {
                cfg[name] = json::array();
                for (const auto& r : res) cfg[name].push_back(echo_value(r));
            }
        } else {
            cfg[name] = echo_value(opt->get_default_str());
        }
    }
    return cfg;
}

struct Common {
    std::uint64_t seed = 1;
    std::string output;
    bool json_out = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "Base seed for test fields")->capture_default_str();
    sub->add_option("--output,-o", c.output,
                    std::string("Report path (default: $") + kOutputDirEnv + "/<command>.json if set)");
    sub->add_flag("--json", c.json_out, "Print the JSON report instead of the summary table");
}

}  // namespace

Complex parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty()) throw DomainError("empty complex value");
    if (s.back() != 'i') return {parse_real(s, raw), 0.0};
    s.pop_back();
    // split at the last sign that is not the leading one or part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_real(re, raw), parse_real(im, raw)};
}

std::string format_complex(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral checks of intertwining operators, R-matrices and their identities", "intertwine"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    const double pi = std::numbers::pi;

    Common common;
    std::string s_alpha = "0.7i", s_beta = "-0.2i", s_p = "0.2i", s_q = "-0.3i", s_r = "0.25i",
                s_theta = "0.4i", s_tau = "-0.15i", s_sigma = "0.3i";
    std::string bands_text;
    int trials = 0;
    int nodes = 480;

    // verify-beta
    auto* beta_cmd = app.add_subcommand("verify-beta", "Circle beta integral: quadrature against the closed form");
    std::string beta_alpha = "0.333", beta_beta = "0.333";
    std::vector<double> beta_angles{0.0, 2.0 * pi / 3.0, 4.0 * pi / 3.0};
    beta_cmd->add_option("--alpha", beta_alpha, "alpha (RE+IMi)");
    beta_cmd->add_option("--beta", beta_beta, "beta (RE+IMi); gamma = 1 - alpha - beta");
    beta_cmd->add_option("--angles", beta_angles, "Angles of a, b, c on the circle")->expected(3);
    beta_cmd->add_option("--nodes", nodes, "Quadrature nodes per arc");
    double beta_tol = 1e-8;
    beta_cmd->add_option("--tolerance", beta_tol, "Relative tolerance");
    add_common(beta_cmd, common);

    // verify-eigen
    auto* eigen_cmd = app.add_subcommand("verify-eigen", "Eigenvalues of J(p) against the kernel quadrature oracle");
    std::vector<long> eigen_ns{0, 1, -1, 5, -5, 20, -20};
    std::string eigen_p = "0.4i";
    long pairing_max = 128;
    std::vector<long> asym_range{32, 256};
    eigen_cmd->add_option("--n", eigen_ns, "Mode indices");
    eigen_cmd->add_option("--p", eigen_p, "p (RE+IMi)");
    eigen_cmd->add_option("--nodes", nodes, "Quadrature nodes per arc");
    eigen_cmd->add_option("--pairing-max", pairing_max, "Largest |n| in the pairing relation");
    eigen_cmd->add_option("--asymptotic-range", asym_range, "k_min k_max for the large-|k| envelope")->expected(2);
    double eigen_tol = 1e-6;
    eigen_cmd->add_option("--tolerance", eigen_tol, "Relative tolerance against the oracle");
    add_common(eigen_cmd, common);

    // verify-unitary
    auto* unitary_cmd = app.add_subcommand("verify-unitary", "Norm preservation of J, A or R words");
    std::string unitary_word = "R";
    std::string unitary_exp = "0.7i";
    int unitary_band = 64, unitary_trials = 10;
    double unitary_tol = 0.0;
    unitary_cmd->add_option("--word", unitary_word, "J, A or R")->check(CLI::IsMember({"J", "A", "R"}));
    unitary_cmd->add_option("--exponent", unitary_exp, "Exponent of the single J or A factor");
    unitary_cmd->add_option("--sigma", s_sigma, "R: spectral parameter");
    unitary_cmd->add_option("--p", s_p, "R: label on axis 1");
    unitary_cmd->add_option("--q", s_q, "R: label on axis 2");
    unitary_cmd->add_option("--band,-N", unitary_band, "Band N");
    unitary_cmd->add_option("--trials", unitary_trials, "Number of test fields");
    unitary_cmd->add_option("--tolerance", unitary_tol, "Tolerance (0: 1e-12 for J, 1e-6 for A, 1e-5 for R)");
    add_common(unitary_cmd, common);

    // verify-intertwine
    auto* inter_cmd = app.add_subcommand("verify-intertwine", "Intertwining relations of J and R with the group action");
    std::string inter_op = "J";
    std::string inter_p = "0.35i";
    int inter_band = 64, inter_group = 0, inter_trials = 5;
    double t_max = 0.55;
    double inter_tol = 0.0;
    inter_cmd->add_option("--op", inter_op, "J or R")->check(CLI::IsMember({"J", "R"}));
    inter_cmd->add_option("--p", inter_p, "p (J, and label on axis 1 for R)");
    inter_cmd->add_option("--q", s_q, "R: label on axis 2");
    inter_cmd->add_option("--sigma", s_sigma, "R: spectral parameter");
    inter_cmd->add_option("--band,-N", inter_band, "Band N");
    inter_cmd->add_option("--group-count", inter_group, "Group elements (0: 5 for J, 3 for R)");
    inter_cmd->add_option("--t-max", t_max, "Largest hyperbolic parameter t");
    inter_cmd->add_option("--trials", inter_trials, "R: number of test fields");
    inter_cmd->add_option("--tolerance", inter_tol, "Tolerance (0: 1e-5 for J, 1e-4 for R)");
    add_common(inter_cmd, common);

    // verify-star-triangle
    auto* st_cmd = app.add_subcommand("verify-star-triangle", "Star-triangle relation on the unitary locus");
    std::string st_bands = "16,32,64";
    int st_trials = 3;
    double st_tol = 1e-4;
    st_cmd->add_option("--alpha", s_alpha, "alpha (imaginary)");
    st_cmd->add_option("--beta", s_beta, "beta (imaginary); gamma = -alpha - beta");
    st_cmd->add_option("--bands", st_bands, "Comma-separated bands");
    st_cmd->add_option("--trials", st_trials, "Test fields per band");
    st_cmd->add_option("--tolerance", st_tol, "Tolerance at the last band");
    add_common(st_cmd, common);

    // verify-star-triangle-weak
    auto* weak_cmd = app.add_subcommand("verify-star-triangle-weak", "Weak star-triangle relation on the interior domain");
    std::string weak_alpha = "0.2+0.3i", weak_beta = "-0.3-0.1i";
    int weak_band = 64, anchor_band = 8, anchor_nodes = 60;
    double weak_tol = 1e-4, anchor_tol = 1e-2;
    bool with_anchor = false, with_boundary = false;
    std::vector<double> scales{1.0, 0.5, 0.25, 0.125};
    weak_cmd->add_option("--alpha", weak_alpha, "alpha (Re > 0)");
    weak_cmd->add_option("--beta", weak_beta, "beta (-1/2 < Re < 0)");
    weak_cmd->add_option("--band,-N", weak_band, "Band N");
    weak_cmd->add_option("--tolerance", weak_tol, "Relative tolerance");
    weak_cmd->add_flag("--anchor", with_anchor, "Also compare with quadrature of the fourfold integral");
    weak_cmd->add_option("--anchor-band", anchor_band, "Band of the quadrature anchor");
    weak_cmd->add_option("--anchor-nodes", anchor_nodes, "Quadrature nodes per arc for the anchor");
    weak_cmd->add_option("--anchor-tolerance", anchor_tol, "Tolerance of the anchor");
    weak_cmd->add_flag("--boundary", with_boundary, "Also follow real parts toward the imaginary axis");
    weak_cmd->add_option("--scales", scales, "Real-part scale factors of the boundary sequence");
    add_common(weak_cmd, common);

    // verify-yang-baxter
    auto* yb_cmd = app.add_subcommand("verify-yang-baxter", "Yang-Baxter relation for the R-matrix words on T^3");
    std::string yb_bands = "12,16,24,32";
    int yb_trials = 5;
    double yb_strong = 1e-2, yb_weak = 1e-3;
    yb_cmd->add_option("--p", s_p, "p (imaginary)");
    yb_cmd->add_option("--q", s_q, "q (imaginary)");
    yb_cmd->add_option("--r", s_r, "r (imaginary)");
    yb_cmd->add_option("--theta", s_theta, "theta (imaginary)");
    yb_cmd->add_option("--tau", s_tau, "tau (imaginary)");
    yb_cmd->add_option("--bands", yb_bands, "Comma-separated bands");
    yb_cmd->add_option("--trials", yb_trials, "Test fields per band");
    yb_cmd->add_option("--strong-tolerance", yb_strong, "Strong tolerance at the last band");
    yb_cmd->add_option("--weak-tolerance", yb_weak, "Weak tolerance at the last band");
    add_common(yb_cmd, common);

    // derive-yb
    auto* derive_cmd = app.add_subcommand("derive-yb", "Replay the built-in Yang-Baxter derivation");
    bool numeric = false;
    int derive_band = 32, derive_trials = 1;
    double step_tol = 1e-3;
    std::string cert_path;
    derive_cmd->add_flag("--numeric", numeric, "Evaluate every intermediate word on test fields");
    derive_cmd->add_option("--band,-N", derive_band, "Band N for --numeric");
    derive_cmd->add_option("--trials", derive_trials, "Test fields for --numeric");
    derive_cmd->add_option("--step-tolerance", step_tol, "Tolerance for every step residual");
    derive_cmd->add_option("--p", s_p, "p (imaginary)");
    derive_cmd->add_option("--q", s_q, "q (imaginary)");
    derive_cmd->add_option("--r", s_r, "r (imaginary)");
    derive_cmd->add_option("--theta", s_theta, "theta (imaginary)");
    derive_cmd->add_option("--tau", s_tau, "tau (imaginary)");
    derive_cmd->add_option("--certificate", cert_path, "Certificate path (default: next to the report, or yb_certificate.json)");
    add_common(derive_cmd, common);

    // search-derivation
    auto* search_cmd = app.add_subcommand("search-derivation", "Search star-triangle and commutation moves between two words");
    std::string from_spec = "yb-lhs", to_spec = "yb-rhs";
    int depth = 10;
    search_cmd->add_option("--from", from_spec, "Start word: JSON file, yb-lhs or yb-rhs");
    search_cmd->add_option("--to", to_spec, "Target word: JSON file, yb-lhs or yb-rhs");
    search_cmd->add_option("--depth", depth, "Largest number of star-triangle moves");
    search_cmd->add_option("--certificate", cert_path, "Where to write the certificate when found");
    add_common(search_cmd, common);

    // convergence
    auto* conv_cmd = app.add_subcommand("convergence", "Residual against N for a named check");
    std::string conv_check = "star-triangle";
    std::vector<std::string> conv_params;
    conv_cmd->add_option("--check", conv_check, "star-triangle, yang-baxter, unitary-r or beta")
        ->check(CLI::IsMember({"star-triangle", "yang-baxter", "unitary-r", "beta"}));
    conv_cmd->add_option("--bands", bands_text, "Comma-separated bands (default depends on the check)");
    conv_cmd->add_option("--param", conv_params, "name=RE+IMi, repeatable");
    conv_cmd->add_option("--trials", trials, "Test fields per band (0: check default)");
    add_common(conv_cmd, common);

    // verify-certificate
    auto* vc_cmd = app.add_subcommand("verify-certificate", "Replay and validate a stored certificate");
    std::string expect_end;
    vc_cmd->add_option("certificate", cert_path, "Certificate JSON file")->required();
    vc_cmd->add_option("--expect-end", expect_end, "Required end word: JSON file, yb-lhs or yb-rhs");
    add_common(vc_cmd, common);

    auto fail_json = [&err](const std::string& kind, const std::string& message) {
        err << json{{"error", kind}, {"message", message}}.dump() << "\n";
        return 2;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail_json("ConfigError", e.what());
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    json doc;
    doc["command"] = command;
    doc["config"] = echo_config(sub);
    std::vector<CheckReport> reports;
    json extra = json::object();

    try {
        if (sub == beta_cmd) {
            QuadratureConfig q;
            q.node_count = nodes;
            q.validate();
            const Complex a = parse_complex(beta_alpha);
            const Complex b = parse_complex(beta_beta);
            reports.push_back(check_beta(a, b, 1.0 - a - b, std::polar(1.0, beta_angles[0]),
                                         std::polar(1.0, beta_angles[1]), std::polar(1.0, beta_angles[2]), q,
                                         beta_tol));
        } else if (sub == eigen_cmd) {
            QuadratureConfig q;
            q.node_count = nodes;
            q.validate();
            const Complex p = parse_complex(eigen_p);
            for (long n : eigen_ns) reports.push_back(check_eigen(n, p, q, eigen_tol));
            reports.push_back(check_eigen_pairing(p, pairing_max));
            reports.push_back(check_eigen_asymptotics(p, asym_range[0], asym_range[1]));
        } else if (sub == unitary_cmd) {
            OperatorWord w;
            double tol = unitary_tol;
            if (unitary_word == "J") {
                w.factors.push_back(OperatorFactor::J(1, parse_complex(unitary_exp)));
                if (tol == 0.0) tol = 1e-12;
            } else if (unitary_word == "A") {
                w.factors.push_back(OperatorFactor::A(1, 2, parse_complex(unitary_exp)));
                if (tol == 0.0) tol = 1e-6;
            } else {
                w = r_matrix_word(parse_complex(s_sigma), parse_complex(s_p), parse_complex(s_q), 1, 2);
                if (tol == 0.0) tol = 1e-5;
            }
            reports.push_back(check_unitary(w, unitary_band, unitary_trials, common.seed, tol));
        } else if (sub == inter_cmd) {
            if (inter_op == "J") {
                const auto gs = random_group_elements(inter_group > 0 ? inter_group : 5, t_max, common.seed);
                reports.push_back(check_intertwine_J(parse_complex(inter_p), gs, inter_band, common.seed,
                                                     inter_tol > 0.0 ? inter_tol : 1e-5));
            } else {
                const auto gs = random_group_elements(inter_group > 0 ? inter_group : 3, t_max, common.seed);
                reports.push_back(check_intertwine_R(parse_complex(s_sigma), parse_complex(inter_p),
                                                     parse_complex(s_q), gs, inter_band, inter_trials,
                                                     common.seed, inter_tol > 0.0 ? inter_tol : 1e-4));
            }
        } else if (sub == st_cmd) {
            reports.push_back(check_star_triangle(parse_complex(s_alpha), parse_complex(s_beta),
                                                  parse_bands(st_bands), st_trials, common.seed, st_tol));
        } else if (sub == weak_cmd) {
            const Complex a = parse_complex(weak_alpha);
            const Complex b = parse_complex(weak_beta);
            reports.push_back(weak_star_triangle(a, b, weak_band, common.seed, weak_tol));
            if (with_boundary) {
                reports.push_back(weak_star_triangle_boundary(a, b, weak_band, scales, common.seed, weak_tol));
            }
            if (with_anchor) {
                QuadratureConfig q;
                q.node_count = anchor_nodes;
                q.validate();
                reports.push_back(weak_star_triangle_anchor(a, b, anchor_band, common.seed, q, anchor_tol));
            }
        } else if (sub == yb_cmd) {
            const ParameterPoint pt{parse_complex(s_p), parse_complex(s_q), parse_complex(s_r),
                                    parse_complex(s_theta), parse_complex(s_tau), DomainTag::SigmaUnitary};
            reports.push_back(check_yang_baxter(pt, parse_bands(yb_bands), yb_trials, common.seed, yb_strong, yb_weak));
        } else if (sub == derive_cmd) {
            Certificate cert = yang_baxter_derivation();
            CheckReport r;
            r.check_name = "yang-baxter-derivation";
            r.seed = common.seed;
            r.tolerance = step_tol;
            const OperatorWord rhs = yang_baxter_rhs();
            const VerificationResult v = verify_certificate(cert, &rhs);
            if (numeric) {
                const ParameterPoint pt{parse_complex(s_p), parse_complex(s_q), parse_complex(s_r),
                                        parse_complex(s_theta), parse_complex(s_tau), DomainTag::SigmaUnitary};
                attach_numeric_residuals(cert, pt, derive_band, derive_trials, common.seed);
                r.bands = {derive_band};
                r.params = {{"p", pt.p}, {"q", pt.q}, {"r", pt.r}, {"theta", pt.theta}, {"tau", pt.tau}};
                for (const auto& s : cert.steps) r.residuals.push_back(*s.residual);
                r.residual = *std::max_element(r.residuals.begin(), r.residuals.end());
            }
            r.details["moves"] = cert.steps.size();
            r.details["star_triangle_moves"] = cert.star_triangle_count();
            r.details["replay_accepted"] = v.accepted;
            r.details["end_equals_rhs"] = cert.end == rhs;
            r.finalize();
            if (!v.accepted || cert.star_triangle_count() != 8) r.passed = false;
            reports.push_back(r);
            std::string path = cert_path;
            if (path.empty()) {
                const char* dir = std::getenv(kOutputDirEnv);
                path = dir && *dir ? (std::filesystem::path(dir) / "yb_certificate.json").string()
                                   : std::string("yb_certificate.json");
            }
            write_json_file(path, certificate_to_json(cert));
            extra["certificate"] = path;
        } else if (sub == search_cmd) {
            const OperatorWord from = load_word(from_spec);
            const OperatorWord to = load_word(to_spec);
            const SearchResult res = search_derivation(from, to, depth);
            CheckReport r;
            r.check_name = "search-derivation";
            r.tolerance = 0.0;
            r.details["found"] = res.found;
            r.details["star_triangle_moves"] = res.depth;
            r.details["explored"] = res.explored;
            if (res.found) {
                r.details["moves"] = res.certificate->steps.size();
                r.passed = verify_certificate(*res.certificate, &to).accepted;
                if (!cert_path.empty()) {
                    write_json_file(cert_path, certificate_to_json(*res.certificate));
                    extra["certificate"] = cert_path;
                }
            } else {
                r.residual = 1.0;
                r.passed = false;
                r.notes.push_back("NotFound(" + std::to_string(depth) + ")");
            }
            reports.push_back(r);
        } else if (sub == conv_cmd) {
            json params = json::object();
            for (const auto& item : conv_params) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) throw ConfigError("--param expects name=value, got '" + item + "'");
                params[item.substr(0, eq)] = complex_json(parse_complex(item.substr(eq + 1)));
            }
            std::vector<int> Ns;
            if (!bands_text.empty()) {
                Ns = parse_bands(bands_text);
            } else if (conv_check == "yang-baxter") {
                Ns = {12, 16, 24, 32};
            } else {
                Ns = {16, 32, 64};
            }
            const int t = trials > 0 ? trials : (conv_check == "yang-baxter" ? 5 : 3);
            reports.push_back(convergence_study(conv_check, Ns, params, t, common.seed));
        } else if (sub == vc_cmd) {
            std::ifstream in(cert_path);
            if (!in) throw ConfigError("cannot read certificate '" + cert_path + "'");
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw StructureError(std::string("certificate file: ") + e.what());
            }
            const Certificate cert = certificate_from_json(j);
            std::optional<OperatorWord> expected;
            if (!expect_end.empty()) expected = load_word(expect_end);
            const VerificationResult v = verify_certificate(cert, expected ? &*expected : nullptr);
            CheckReport r;
            r.check_name = "verify-certificate";
            r.passed = v.accepted;
            r.residual = v.accepted ? 0.0 : 1.0;
            r.details["accepted"] = v.accepted;
            r.details["failed_step"] = v.failed_step;
            r.details["reason"] = v.reason;
            r.details["moves"] = cert.steps.size();
            r.details["star_triangle_moves"] = cert.star_triangle_count();
            reports.push_back(r);
        }
    } catch (const Error& e) {
        return fail_json(e.kind(), e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail_json("IOError", e.what());
    }

    bool all_passed = true;
    json arr = json::array();
    for (auto& r : reports) {
        r.config = doc["config"];
        if (r.seed == 0) r.seed = common.seed;
        all_passed = all_passed && r.passed;
        arr.push_back(report_to_json(r));
    }
    doc["reports"] = arr;
    doc["passed"] = all_passed;
    for (auto& [k, v] : extra.items()) doc[k] = v;

    std::string path = common.output;
    if (path.empty()) {
        const char* dir = std::getenv(kOutputDirEnv);
        if (dir && *dir) path = (std::filesystem::path(dir) / (command + ".json")).string();
    }
    try {
        if (!path.empty()) write_json_file(path, doc);
    } catch (const Error& e) {
        return fail_json(e.kind(), e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail_json("IOError", e.what());
    }

    if (common.json_out) {
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& r : reports) print_report(out, r);
        if (!path.empty()) out << "report: " << path << "\n";
        if (extra.contains("certificate")) out << "certificate: " << extra["certificate"].get<std::string>() << "\n";
        out << (all_passed ? "PASSED" : "FAILED") << "\n";
    }
    return all_passed ? 0 : 1;
}

}  // namespace intertwine
