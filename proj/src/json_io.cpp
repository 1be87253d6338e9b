#include <vvmf/json_io.hpp>

namespace vvmf
{

Json to_json(const BigRat &q)
{
    return to_string(q);
}

Json to_json(const BigInt &z)
{
    return z.get_str();
}

Json to_json(const QuadNum &z)
{
    return Json{{"rat", to_string(z.rat())}, {"surd", to_string(z.surd())}, {"M", z.field()}};
}

Json to_json(const std::vector<QuadNum> &v)
{
    Json a = Json::array();
    for (const auto &x : v) {
        a.push_back(to_json(x));
    }
    return a;
}

Json to_json(const std::vector<BigInt> &v)
{
    Json a = Json::array();
    for (const auto &x : v) {
        a.push_back(to_json(x));
    }
    return a;
}

Json to_json(const RatSeries &s)
{
    Json c = Json::array();
    for (const auto &x : s.coeffs()) {
        c.push_back(to_json(x));
    }
    return Json{{"lead", to_json(s.lead())}, {"ramification", s.ramification()}, {"coeffs", c}};
}

Json to_json(const OffsetSeries &s)
{
    return Json{{"base", to_json(s.base)}, {"coeffs", to_json(s.coeffs())}};
}

Json to_json(const MonomialMap &m)
{
    Json a = Json::array();
    for (const auto &[ab, c] : m) {
        a.push_back(Json{{"G", ab.first}, {"E4", ab.second}, {"coeff", to_json(c)}});
    }
    return a;
}

Json to_json(const InstanceParams &p)
{
    return Json{{"k0", p.k0},
                {"a", to_json(p.a)},
                {"b", to_json(p.b)},
                {"c", to_json(p.c)},
                {"l1", to_json(p.l1)},
                {"l2", to_json(p.l2)},
                {"r1", to_json(p.r)},
                {"r2", to_json(p.r2)},
                {"A", to_json(p.A)},
                {"B", to_json(p.B)},
                {"M", p.M},
                {"u", to_json(p.u)},
                {"v", to_json(p.v)}};
}

Json to_json(const CheckResult &c)
{
    return Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

BigRat rat_from_json(const Json &j)
{
    if (j.is_number_integer()) {
        return BigRat(j.get<long>());
    }
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::exception &e) {
            throw ConfigError("bad rational '" + j.get<std::string>() + "': " + e.what());
        }
    }
    throw ConfigError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

QuadNum quad_from_json(const Json &j)
{
    if (!j.is_object()) {
        return QuadNum(rat_from_json(j));
    }
    const BigRat rat = j.contains("rat") ? rat_from_json(j.at("rat")) : BigRat(0);
    const BigRat surd = j.contains("surd") ? rat_from_json(j.at("surd")) : BigRat(0);
    const long M = j.contains("M") ? j.at("M").get<long>() : 0;
    if (sgn(surd) == 0) {
        return M > 1 ? QuadNum(rat).in_field(M) : QuadNum(rat);
    }
    try {
        return QuadNum(rat, surd, M);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("bad quadratic value: ") + e.what());
    }
}

OffsetSeries offset_series_from_json(const Json &j)
{
    if (!j.is_object() || !j.contains("base") || !j.contains("coeffs") || !j.at("coeffs").is_array()) {
        throw ConfigError("series needs \"base\" and a \"coeffs\" array");
    }
    std::vector<QuadNum> c;
    for (const auto &x : j.at("coeffs")) {
        c.push_back(quad_from_json(x));
    }
    if (c.empty()) {
        throw ConfigError("series has no coefficients");
    }
    return {rat_from_json(j.at("base")), QuadSeries(BigRat(0), std::move(c))};
}

MonomialMap monomial_map_from_json(const Json &j)
{
    if (!j.is_array()) {
        throw ConfigError("monomial map must be an array of {G, E4, coeff}");
    }
    MonomialMap m;
    for (const auto &e : j) {
        if (!e.is_object() || !e.contains("coeff")) {
            throw ConfigError("monomial entry needs \"coeff\"");
        }
        const unsigned a = e.value("G", 0U);
        const unsigned b = e.value("E4", 0U);
        m[{a, b}] += quad_from_json(e.at("coeff"));
    }
    return m;
}

InstanceParams instance_from_json(const Json &j)
{
    if (!j.is_object()) {
        throw ConfigError("instance must be a JSON object");
    }
    try {
        const int k0 = j.value("k0", 0);
        const bool exponent_form = j.contains("l1") || j.contains("l2") || j.contains("r");
        const bool abc_form = j.contains("a") || j.contains("b") || j.contains("c");
        if (exponent_form == abc_form) {
            throw ConfigError("instance needs exactly one of the exponent form (l1, l2, r) or the form (a, b, c, M)");
        }
        if (exponent_form) {
            for (const char *key : {"l1", "l2", "r"}) {
                if (!j.contains(key)) {
                    throw ConfigError(std::string("missing field \"") + key + "\"");
                }
            }
            ExponentData e;
            e.k0 = k0;
            e.l1 = rat_from_json(j.at("l1"));
            e.l2 = rat_from_json(j.at("l2"));
            const Json &r = j.at("r");
            e.r1 = quad_from_json(r);
            const bool pair = r.is_object() ? r.value("conjugate_pair", true) : true;
            if (pair) {
                e.r2 = e.r1.conjugate();
            } else if (j.contains("r2")) {
                e.r2 = quad_from_json(j.at("r2"));
            } else {
                throw ConfigError("\"r2\" required when conjugate_pair is false");
            }
            return params_from_exponents(e);
        }
        for (const char *key : {"a", "b", "c", "M"}) {
            if (!j.contains(key)) {
                throw ConfigError(std::string("missing field \"") + key + "\"");
            }
        }
        const ExponentData e = roots_from_abc(rat_from_json(j.at("a")), rat_from_json(j.at("b")),
                                              rat_from_json(j.at("c")), j.at("M").get<long>(), k0);
        return params_from_exponents(e);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad instance field: ") + e.what());
    }
}

Json to_json(const MinimalForm &mf, const DerivComponents &dc, const std::vector<CheckResult> &residual)
{
    Json rows = Json::array();
    for (std::size_t K = 0; K <= mf.Kmax; ++K) {
        rows.push_back(Json{{"K", K},
                            {"h", to_json(mf.h[K])},
                            {"h_tilde", to_json(mf.h_tilde[K])},
                            {"d", to_json(mf.d[K])},
                            {"d_tilde", to_json(mf.d_tilde[K])},
                            {"t1", to_json(dc.t1[K])},
                            {"t2", to_json(dc.t2[K])}});
    }
    Json res = Json::array();
    for (const auto &c : residual) {
        res.push_back(to_json(c));
    }
    return Json{{"params", to_json(mf.params)},
                {"kmax", mf.Kmax},
                {"base1", to_json(mf.comp1.base)},
                {"base2", to_json(mf.comp2.base)},
                {"eta_tail", to_json(mf.e)},
                {"coefficients", rows},
                {"residual", res}};
}

namespace
{

Json factors_json(const TrialFactorization &f)
{
    Json a = Json::array();
    for (const auto &[p, e] : f.factors) {
        a.push_back(Json{{"p", to_json(p)}, {"e", e}});
    }
    return Json{{"factors", a}, {"cofactor", to_json(f.cofactor)}};
}

} // namespace

Json to_json(const DenomReport &r)
{
    Json secs = Json::array();
    for (const auto &s : r.sections) {
        Json rows = Json::array();
        for (const auto &row : s.rows) {
            if (!row.p_prime) {
                continue;
            }
            Json jr{{"K", row.K}, {"p", to_json(row.p)}, {"in_set", row.in_set}};
            if (row.checked()) {
                jr["exempt"] = row.exempt;
                jr["divides"] = row.divides;
                jr["earlier_integral"] = row.earlier_integral;
                jr["verdict"] = row.exempt.empty() ? (row.holds() ? "pass" : "fail") : "exempt";
                jr["denominator"] = factors_json(row.factors);
            }
            rows.push_back(jr);
        }
        secs.push_back(Json{{"sequence", s.label},
                            {"rows", rows},
                            {"threshold", s.threshold ? to_json(*s.threshold) : Json(nullptr)},
                            {"exceptional", to_json(s.exceptional)},
                            {"passing", to_json(s.passing)}});
    }
    return Json{{"kmax", r.Kmax}, {"ok", r.ok()}, {"sections", secs}};
}

Json to_json(const GeneralReport &r)
{
    const auto rows = [](const std::vector<GeneralRow> &v) {
        Json a = Json::array();
        for (const auto &x : v) {
            a.push_back(Json{{"p", x.p},
                             {"exempt", x.exempt},
                             {"divides", x.divides},
                             {"first_index", x.first_index},
                             {"seen_in_F", x.seen_in_F}});
        }
        return a;
    };
    return Json{{"k", r.k},     {"N", to_json(r.N)},         {"t", r.t},
                {"kappa", to_json(r.kappa)}, {"m3", to_json(r.m3)}, {"m4", to_json(r.m4)},
                {"Z1", rows(r.rows1)},       {"Z2", rows(r.rows2)}, {"ok", r.ok()}};
}

Json to_json(const ProbeVerdict &v)
{
    return Json{{"status", to_string(v.status)},
                {"first_bad_t", v.first_bad_t},
                {"routes_agree", v.routes_agree},
                {"detail", v.detail}};
}

} // namespace vvmf
