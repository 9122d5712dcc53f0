#include "cchaos/reports.hpp"

#include <cstdio>
#include <sstream>

namespace cchaos {

nlohmann::json complex_json(cplx z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json to_json(const MomentReport& r)
{
    return {{"p", r.p},
            {"q", r.q},
            {"var_abs", r.var_abs},
            {"pseudo", complex_json(r.pseudo)},
            {"third", complex_json(r.third)},
            {"third_mixed", complex_json(r.third_mixed)},
            {"gap", r.gap},
            {"gap_v1", r.gap_v1},
            {"gap_v2", r.gap_v2},
            {"route_disagreement", r.route_disagreement()}};
}

nlohmann::json to_json(const BoundInputs& in)
{
    return {{"sigma_sq", in.sigma_sq}, {"a", in.a},           {"b", in.b},
            {"l", in.l},               {"lambda1", in.lambda1}, {"lambda2", in.lambda2}};
}

nlohmann::json to_json(const std::vector<ContractionNorm>& table)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : table) {
        j.push_back({{"i", e.i}, {"j", e.j}, {"norm", e.norm}});
    }
    return j;
}

nlohmann::json to_json(const LowerTerms& t)
{
    return {{"abs_e3", t.e3},
            {"abs_e3_mixed", t.e21},
            {"contraction_sum", t.contraction_sum},
            {"note", "lower bound holds up to an unspecified constant"}};
}

nlohmann::json to_json(const CircularityReport& r)
{
    nlohmann::json pseudo = nlohmann::json::array();
    for (const cplx& v : r.pseudo) {
        pseudo.push_back(complex_json(v));
    }
    return {{"d", r.d},
            {"pseudo", pseudo},
            {"max_abs", r.max_abs},
            {"tol", r.tol},
            {"pass", r.pass},
            {"note", "vanishing pseudo-covariance is necessary, not sufficient"}};
}

nlohmann::json to_json(const CltReport& r)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms) {
        terms.push_back({{"p", t.p},
                         {"q", t.q},
                         {"sigma_sq", t.sigma_sq},
                         {"contractions", to_json(t.contractions)}});
    }
    return {{"terms", terms},
            {"sigma_sq_total", r.sigma_sq_total},
            {"truncation", r.truncation},
            {"tail", r.tail}};
}

nlohmann::json to_json(const MultivariateReport& r)
{
    nlohmann::json sigma = nlohmann::json::array();
    for (const cplx& v : r.cov.sigma) {
        sigma.push_back(complex_json(v));
    }
    nlohmann::json cross = nlohmann::json::array();
    for (const auto& t : r.cross_terms) {
        cross.push_back({{"j", t.j},
                         {"r", t.r},
                         {"kind", t.kind},
                         {"indicator", t.indicator},
                         {"value", t.value}});
    }
    return {{"d", r.cov.d},
            {"sigma", sigma},
            {"eigenvalues", r.cov.eigenvalues},
            {"lambda_max", r.cov.lambda_max},
            {"lambda_min", r.cov.lambda_min},
            {"circularity", r.circularity},
            {"excess", r.excess},
            {"bound", r.bound},
            {"self_terms", r.self_terms},
            {"cross_terms", cross},
            {"key_estimate_rhs", r.key_estimate_rhs},
            {"note", "key estimate holds up to an unspecified constant"}};
}

nlohmann::json to_json(const RateTable& t)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"T", r.T},
                        {"m", r.m},
                        {"sigma_sq", r.sigma_sq},
                        {"gap", r.gap},
                        {"e3_mixed", r.e3_mixed},
                        {"e3", r.e3},
                        {"fmt_10", r.fmt_10},
                        {"fmt_01", r.fmt_01},
                        {"be_upper_circular", r.be_upper_circular}});
    }
    return {{"rows", rows},
            {"slope_gap", t.slope_gap},
            {"slope_e3_mixed", t.slope_e3_mixed},
            {"slope_be_upper_circular", t.slope_be}};
}

nlohmann::json to_json(const DenominatorReport& r, bool per_path)
{
    nlohmann::json j = {{"m", r.m},
                        {"n_paths", r.n_paths},
                        {"mean_residual", r.mean_residual},
                        {"max_residual", r.max_residual},
                        {"mean_lhs", r.mean_lhs},
                        {"se_lhs", r.se_lhs},
                        {"mean_rhs", r.mean_rhs},
                        {"se_rhs", r.se_rhs},
                        {"expected", r.expected}};
    if (per_path) {
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
    }
    return j;
}

nlohmann::json univariate_bound_report(const Kernel& f_in, double circ_tol)
{
    const Kernel f = f_in.symmetric() ? f_in : symmetrize(f_in);
    const BoundInputs in = BoundInputs::from_kernel(f);
    const double gap = fourth_gap(f, GapRoute::v1);
    nlohmann::json j;
    j["p"] = f.p();
    j["q"] = f.q();
    j["inputs"] = to_json(in);
    j["gap"] = gap;
    try {
        j["be_upper"] = be_upper(gap, in);
    } catch (const std::domain_error& e) {
        j["be_upper"] = {{"error", e.what()}};
    }
    try {
        j["be_upper_circular"] = be_upper_circular(f, in.sigma_sq, circ_tol);
    } catch (const std::domain_error& e) {
        j["be_upper_circular"] = {{"error", e.what()}};
    }
    j["lower_terms"] = to_json(be_lower_terms(f));
    j["fmt_norms"] = to_json(fmt_norms(f));
    j["sandwich"] = {{"c1", sandwich_c1(f.p(), f.q())},
                     {"c2", sandwich_c2(f.p(), f.q())},
                     {"contraction_sum", contraction_sum(f)}};
    return j;
}

std::string rate_table_csv(const RateTable& t)
{
    std::ostringstream out;
    out << "T,gap,e3_mixed,e3,be_upper_circular\n";
    char buf[160];
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.T, r.gap, r.e3_mixed,
                      r.e3, r.be_upper_circular);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "# slope_gap=%.6f\n# slope_e3_mixed=%.6f\n# slope_be=%.6f\n",
                  t.slope_gap, t.slope_e3_mixed, t.slope_be);
    out << buf;
    return out.str();
}

}  // namespace cchaos
