#include <vvmf/cli.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <vvmf/gamma02_forms.hpp>

namespace vvmf::cli
{

namespace
{

// Raised for unreadable files and similar command-line level problems.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string &text, const std::string &path, std::ostream &out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + path);
    }
    f << text;
}

std::string dump(const Json &j)
{
    return j.dump(2) + "\n";
}

} // namespace

RunConfig parse_config(const std::string &text)
{
    const Json j = Json::parse(text);
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    RunConfig cfg;
    try {
        if (j.contains("instance")) {
            cfg.instance = instance_from_json(j.at("instance"));
        } else if (j.contains("seed_instance")) {
            cfg.instance = seed_instance(j.at("seed_instance").get<std::string>());
        } else {
            cfg.instance = instance_from_json(j);
        }
        if (j.contains("kmax")) {
            const long k = j.at("kmax").get<long>();
            if (k < 1) {
                throw ConfigError("kmax must be at least 1");
            }
            cfg.kmax = static_cast<std::size_t>(k);
        }
        if (j.contains("method")) {
            cfg.method = parse_method(j.at("method").get<std::string>());
        }
        if (j.contains("factor_bound")) {
            cfg.factor_bound = j.at("factor_bound").get<std::uint64_t>();
        }
        cfg.output = j.value("output", std::string());
        cfg.format = j.value("format", std::string("json"));
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

InstanceParams seed_instance(const std::string &name)
{
    long M = 0;
    if (name == "m2") {
        M = 2;
    } else if (name == "m5") {
        M = 5;
    } else {
        throw ConfigError("unknown seed instance '" + name + "' (known: m2, m5)");
    }
    ExponentData e;
    e.k0 = 0;
    e.l1 = 0;
    e.l2 = frac(1, 2);
    e.r1 = QuadNum::sqrt_of(M);
    e.r2 = e.r1.conjugate();
    return params_from_exponents(e);
}

namespace
{

struct InstanceOptions {
    std::string config;
    std::string seed;
    std::optional<long> kmax;
    std::string method;
    std::optional<std::uint64_t> factor_bound;
    std::string output;
    std::string format;

    void attach(CLI::App *sub, bool with_instance)
    {
        if (with_instance) {
            sub->add_option("--config", config, "JSON run configuration (instance plus settings)");
            sub->add_option("--seed-instance", seed, "built-in instance: m2 or m5");
            sub->add_option("--kmax", kmax, "number of Fourier coefficients beyond the leading one");
            sub->add_option("--method", method, "closed, frobenius or both");
            sub->add_option("--factor-bound", factor_bound, "trial-division bound for denominators");
        }
        sub->add_option("--output,-o", output, "write the result here instead of stdout");
        sub->add_option("--format", format, "json or table");
    }

    RunConfig resolve() const
    {
        RunConfig cfg;
        if (!config.empty() && !seed.empty()) {
            throw UsageError("give either --config or --seed-instance, not both");
        }
        if (!config.empty()) {
            cfg = parse_config(read_file(config));
        } else if (!seed.empty()) {
            cfg.instance = seed_instance(seed);
        } else {
            throw UsageError("an instance is required (--config FILE or --seed-instance m2)");
        }
        if (kmax) {
            if (*kmax < 1) {
                throw ConfigError("kmax must be at least 1");
            }
            cfg.kmax = static_cast<std::size_t>(*kmax);
        }
        if (!method.empty()) {
            try {
                cfg.method = parse_method(method);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
        }
        if (factor_bound) {
            cfg.factor_bound = *factor_bound;
        }
        if (!output.empty()) {
            cfg.output = output;
        }
        if (!format.empty()) {
            cfg.format = format;
        }
        if (cfg.format != "json" && cfg.format != "table") {
            throw UsageError("unknown format '" + cfg.format + "'");
        }
        return cfg;
    }
};

// --- verify-identities -------------------------------------------------------

int cmd_verify(std::size_t order, const std::string &format, const std::string &output, std::ostream &out)
{
    std::vector<CheckResult> all = identity_suite(order);
    for (auto &c : theta_identity_checks(order)) {
        all.push_back(std::move(c));
    }
    const bool ok = std::all_of(all.begin(), all.end(), [](const CheckResult &c) { return c.passed; });

    std::string text;
    if (format == "table") {
        std::ostringstream os;
        for (const auto &c : all) {
            os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
        }
        text = os.str();
    } else {
        Json arr = Json::array();
        for (const auto &c : all) {
            arr.push_back(to_json(c));
        }
        text = dump(Json{{"order", order}, {"ok", ok}, {"checks", arr}});
    }
    emit(text, output, out);
    return ok ? kOk : kCheckFailed;
}

// --- expand ------------------------------------------------------------------

RatSeries named_series(const std::string &name, std::size_t order, long twok)
{
    if (name == "E2") {
        return eisenstein_E2(order).series;
    }
    if (name == "E4") {
        return eisenstein_E4(order).series;
    }
    if (name == "G") {
        return weight2_G(order).series;
    }
    if (name == "G-parity") {
        return weight2_G_parity(order).series;
    }
    if (name == "K" || name == "J") {
        const Hauptmodul h = hauptmodul(std::max<std::size_t>(order + 1, 2));
        return (name == "K" ? h.K : h.J).truncated(order + 1);
    }
    if (name == "eta") {
        return eta_pow(twok, order).series;
    }
    if (name == "theta4") {
        return theta4_and_E(order).theta4;
    }
    if (name == "Ecal") {
        return theta4_and_E(order).E;
    }
    if (name == "G-slash-S") {
        return g_slash_S(order);
    }
    throw UsageError("unknown series '" + name + "' (E2, E4, G, G-parity, K, J, eta, theta4, Ecal, G-slash-S)");
}

int cmd_expand(const std::string &name, std::size_t order, long twok, const std::string &output, std::ostream &out)
{
    namespace fs = std::filesystem;
    std::optional<fs::path> cached;
    if (const char *dir = std::getenv("GAMMA02_CACHE_DIR"); dir != nullptr && *dir != '\0') {
        std::string key = name + "_" + std::to_string(order);
        if (name == "eta") {
            key += "_" + std::to_string(twok);
        }
        cached = fs::path(dir) / (key + ".json");
        if (fs::exists(*cached)) {
            emit(read_file(cached->string()), output, out);
            return kOk;
        }
    }
    const RatSeries s = named_series(name, order, twok);
    Json j = to_json(s);
    j = Json{{"name", name}, {"order", order}, {"lead", j["lead"]}, {"ramification", j["ramification"]},
             {"coeffs", j["coeffs"]}};
    const std::string text = dump(j);
    if (cached) {
        std::error_code ec;
        fs::create_directories(cached->parent_path(), ec);
        std::ofstream f(*cached, std::ios::binary);
        if (f) {
            f << text;
        }
    }
    emit(text, output, out);
    return kOk;
}

// --- minform / denoms ----------------------------------------------------------

int cmd_minform(const RunConfig &cfg, std::ostream &out)
{
    const MinimalForm mf = minimal_form(cfg.instance, cfg.kmax, cfg.method);
    const DerivComponents dc = deriv_components(mf);
    const std::vector<CheckResult> res = mlde_residual_checks(mf);
    const bool ok = std::all_of(res.begin(), res.end(), [](const CheckResult &c) { return c.passed; });
    if (cfg.format == "table") {
        std::ostringstream os;
        os << std::left << std::setw(5) << "K" << std::setw(36) << "d(K)" << "d~(K)\n";
        for (std::size_t K = 0; K <= mf.Kmax; ++K) {
            os << std::setw(5) << K << std::setw(36) << mf.d[K].str() << mf.d_tilde[K].str() << "\n";
        }
        for (const auto &c : res) {
            os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "\n";
        }
        emit(os.str(), cfg.output, out);
    } else {
        emit(dump(to_json(mf, dc, res)), cfg.output, out);
    }
    return ok ? kOk : kCheckFailed;
}

std::string denom_table(const DenomReport &rep)
{
    std::ostringstream os;
    os << std::left << std::setw(5) << "seq" << std::setw(5) << "K" << std::setw(8) << "p_K" << std::setw(7) << "in S"
       << std::setw(9) << "divides" << std::setw(9) << "verdict" << "exempt reason\n";
    for (const auto &s : rep.sections) {
        for (const auto &r : s.rows) {
            if (!r.p_prime) {
                continue;
            }
            std::string verdict = "-";
            if (r.checked()) {
                verdict = !r.exempt.empty() ? "exempt" : (r.holds() ? "pass" : "FAIL");
            }
            os << std::setw(5) << s.label << std::setw(5) << r.K << std::setw(8) << r.p.get_str() << std::setw(7)
               << (r.in_set ? "yes" : "no") << std::setw(9) << (r.checked() ? (r.divides ? "yes" : "no") : "-")
               << std::setw(9) << verdict << r.exempt << "\n";
        }
    }
    os << (rep.ok() ? "all audited rows pass\n" : "some audited rows FAIL\n");
    return os.str();
}

int cmd_denoms(const RunConfig &cfg, const std::string &combination, long prime_bound, std::ostream &out)
{
    const MinimalForm mf = minimal_form(cfg.instance, cfg.kmax, cfg.method);
    const DenomReport rep = verify_ubd(mf, cfg.factor_bound);
    bool ok = rep.ok();
    if (combination.empty()) {
        emit(cfg.format == "table" ? denom_table(rep) : dump(to_json(rep)), cfg.output, out);
        return ok ? kOk : kCheckFailed;
    }
    const Json doc = Json::parse(read_file(combination));
    if (!doc.is_object() || !doc.contains("k")) {
        throw ConfigError("combination file needs \"k\", \"m1\" and \"m2\"");
    }
    const int k = doc.at("k").get<int>();
    const MonomialMap m1 = monomial_map_from_json(doc.value("m1", Json::array()));
    const MonomialMap m2 = monomial_map_from_json(doc.value("m2", Json::array()));
    const DerivComponents dc = deriv_components(mf);
    GeneralReport g;
    try {
        g = ubd_general(mf, dc, m1, m2, k, prime_bound);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    ok = ok && g.ok();
    if (cfg.format == "table") {
        std::ostringstream os;
        os << denom_table(rep) << "combination of weight " << k << ": N = " << g.N.get_str() << ", t = " << g.t
           << ", kappa = " << g.kappa.str() << "\n";
        for (const auto *rows : {&g.rows1, &g.rows2}) {
            for (const auto &r : *rows) {
                os << (rows == &g.rows1 ? "Z1 " : "Z2 ") << std::setw(6) << r.p << std::setw(9)
                   << (r.divides ? "divides" : "no") << r.exempt << "\n";
            }
        }
        emit(os.str(), cfg.output, out);
    } else {
        emit(dump(Json{{"report", to_json(rep)}, {"combination", to_json(g)}}), cfg.output, out);
    }
    return ok ? kOk : kCheckFailed;
}

// --- decompose ---------------------------------------------------------------

int cmd_decompose(const RunConfig &cfg, const std::string &input, std::ostream &out)
{
    if (input.empty()) {
        throw UsageError("decompose needs --input FILE");
    }
    const Json doc = Json::parse(read_file(input));
    if (!doc.is_object() || !doc.contains("k")) {
        throw ConfigError("decompose input needs \"k\" and either Z1/Z2 or m1/m2");
    }
    const int k = doc.at("k").get<int>();
    const MinimalForm mf = minimal_form(cfg.instance, cfg.kmax, cfg.method);
    const DerivComponents dc = deriv_components(mf);

    OffsetSeries z1, z2;
    if (doc.contains("Z1") && doc.contains("Z2")) {
        z1 = offset_series_from_json(doc.at("Z1"));
        z2 = offset_series_from_json(doc.at("Z2"));
    } else if (doc.contains("m1") || doc.contains("m2")) {
        try {
            const VectorSeries z = combine(mf, dc, monomial_map_from_json(doc.value("m1", Json::array())),
                                           monomial_map_from_json(doc.value("m2", Json::array())), k);
            z1 = z.c1;
            z2 = z.c2;
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    } else {
        throw ConfigError("decompose input needs Z1/Z2 or m1/m2");
    }

    Decomposition dec;
    try {
        dec = decompose(mf, dc, z1, z2, k, true);
    } catch (const NotAFormError &e) {
        throw ValidationError("Z in M(Gamma0(2)) F' + M(Gamma0(2)) D F'", e.what());
    } catch (const LatticeError &e) {
        throw ConfigError(e.what());
    }
    emit(dump(Json{{"k", k}, {"m1", to_json(dec.m1_coords)}, {"m2", to_json(dec.m2_coords)}}), cfg.output, out);
    return kOk;
}

// --- probe -------------------------------------------------------------------

int cmd_probe(const std::string &x_rat, const std::string &x_surd, long M, const std::string &R, long p, unsigned tmax,
              const std::string &output, std::ostream &out)
{
    QuadNum X;
    BigRat Rq;
    try {
        X = QuadNum(parse_rat(x_rat), parse_rat(x_surd), M);
        Rq = parse_rat(R);
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    ProbeVerdict v;
    try {
        v = lemma_quadratic_probe(X, Rq, p, tmax);
    } catch (const std::invalid_argument &e) {
        throw ValidationError("probe preconditions", e.what());
    }
    emit(dump(to_json(v)), output, out);
    return v.routes_agree ? kOk : kPipeline;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact computations for two-dimensional vector-valued modular forms on Gamma0(2)", "vvmf"};
    app.require_subcommand(1);

    std::size_t order = 200;
    std::string vformat = "json", voutput;
    auto *verify = app.add_subcommand("verify-identities", "check the form identities exactly");
    verify->add_option("--order", order, "number of coefficients beyond the leading one");
    verify->add_option("--format", vformat, "json or table");
    verify->add_option("--output,-o", voutput, "write the result here instead of stdout");

    std::string name, eoutput;
    std::size_t eorder = 20;
    long twok = 2;
    auto *expand = app.add_subcommand("expand", "print a named q-expansion");
    expand->add_option("--name", name, "E2, E4, G, G-parity, K, J, eta, theta4, Ecal, G-slash-S")->required();
    expand->add_option("--order", eorder, "number of coefficients beyond the leading one");
    expand->add_option("--twok", twok, "even exponent for eta");
    expand->add_option("--output,-o", eoutput, "write the result here instead of stdout");

    InstanceOptions mopt, dopt, copt;
    auto *minform = app.add_subcommand("minform", "minimal-weight form F' and D F' coefficients");
    mopt.attach(minform, true);

    std::string combination;
    long prime_bound = 37;
    auto *denoms = app.add_subcommand("denoms", "denominator divisibility report");
    dopt.attach(denoms, true);
    denoms->add_option("--combination", combination, "JSON {k, m1, m2}: also scan Z = m1 F' + m2 D F'");
    denoms->add_option("--prime-bound", prime_bound, "largest prime scanned for --combination");

    std::string input;
    auto *decomp = app.add_subcommand("decompose", "write Z as m1 F' + m2 D F'");
    copt.attach(decomp, true);
    decomp->add_option("--input", input, "JSON {k, Z1, Z2} or {k, m1, m2}");

    std::string x_rat = "0", x_surd = "1", R = "0", poutput;
    long M = 2, p = 5;
    unsigned tmax = 20;
    auto *probe = app.add_subcommand("probe", "p-divisibility of (X + R)_t numerators");
    probe->add_option("--x-rat", x_rat, "rational part of X");
    probe->add_option("--x-surd", x_surd, "coefficient of sqrt(M) in X");
    probe->add_option("--M", M, "square-free M");
    probe->add_option("--R", R, "rational shift");
    probe->add_option("--p", p, "odd prime with (M/p) = -1");
    probe->add_option("--tmax", tmax, "largest t");
    probe->add_option("--output,-o", poutput, "write the result here instead of stdout");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (verify->parsed()) {
            if (vformat != "json" && vformat != "table") {
                throw UsageError("unknown format '" + vformat + "'");
            }
            return cmd_verify(order, vformat, voutput, out);
        }
        if (expand->parsed()) {
            return cmd_expand(name, eorder, twok, eoutput, out);
        }
        if (minform->parsed()) {
            return cmd_minform(mopt.resolve(), out);
        }
        if (denoms->parsed()) {
            return cmd_denoms(dopt.resolve(), combination, prime_bound, out);
        }
        if (decomp->parsed()) {
            return cmd_decompose(copt.resolve(), input, out);
        }
        if (probe->parsed()) {
            return cmd_probe(x_rat, x_surd, M, R, p, tmax, poutput, out);
        }
    } catch (const nlohmann::json::parse_error &e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError &e) {
        err << "error: invalid instance: violated relation \"" << e.relation() << "\" (" << e.what() << ")\n";
        return kInvalid;
    } catch (const ConfigError &e) {
        err << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const PipelineDisagreement &e) {
        err << "error: pipeline disagreement: " << e.what() << "\n";
        return kPipeline;
    } catch (const FieldMismatch &e) {
        err << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::domain_error &e) {
        err << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

} // namespace vvmf::cli
