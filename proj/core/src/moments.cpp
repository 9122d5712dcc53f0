#include "cchaos/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cchaos/combinatorics.hpp"

namespace cchaos {

namespace {

double fact(int n) { return factorial_d(n); }
double binom(int n, int k) { return binomial_d(n, k); }

Kernel sym(const Kernel& f)
{
    return f.symmetric() ? f : symmetrize(f);
}

// phi_r = sum_{i+j=r} C(p1,i) C(q1,j) C(q2,i) C(p2,j) i! j! f1 (x)~_{i,j} f2
double phi_norm_sq(const Kernel& f1, const Kernel& f2, int r)
{
    const int p1 = f1.p(), q1 = f1.q(), p2 = f2.p(), q2 = f2.q();
    Kernel acc;
    bool any = false;
    for (int i = 0; i <= std::min(p1, q2); ++i) {
        const int j = r - i;
        if (j < 0 || j > std::min(q1, p2)) {
            continue;
        }
        const double c = binom(p1, i) * binom(q1, j) * binom(q2, i) * binom(p2, j) *
                         fact(i) * fact(j);
        Kernel t = c * contract(f1, f2, i, j);
        if (any) {
            acc += t;
        } else {
            acc = std::move(t);
            any = true;
        }
    }
    return any ? norm_sq(symmetrize(acc)) : 0.0;
}

// psi_r = sum_{i+j=r} C(p,i)^2 C(q,j)^2 i! j! f (x)~_{i,j} h
double psi_norm_sq(const Kernel& f, const Kernel& h, int r)
{
    const int p = f.p(), q = f.q();
    Kernel acc;
    bool any = false;
    for (int i = 0; i <= p; ++i) {
        const int j = r - i;
        if (j < 0 || j > q) {
            continue;
        }
        const double c = binom(p, i) * binom(p, i) * binom(q, j) * binom(q, j) *
                         fact(i) * fact(j);
        Kernel t = c * contract(f, h, i, j);
        if (any) {
            acc += t;
        } else {
            acc = std::move(t);
            any = true;
        }
    }
    return any ? norm_sq(symmetrize(acc)) : 0.0;
}

double gap_v1(const Kernel& f)
{
    const int p = f.p(), q = f.q(), l = p + q, m = std::min(p, q), lp = 2 * m;
    const Kernel h = reverse_conjugate(f);
    const double pq = fact(p) * fact(q);
    double s = 0.0;
    for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
            if (i + j == 0 || i + j >= l) {
                continue;
            }
            const double c = binom(p, i) * binom(p, i) * binom(q, j) * binom(q, j) * pq * pq;
            s += c * norm_sq(contract(f, h, i, j));
        }
    }
    for (int r = 1; r <= lp - 1; ++r) {
        s += fact(2 * p - r) * fact(2 * q - r) * phi_norm_sq(f, f, r);
    }
    if (p != q && m >= 1) {
        s += fact(2 * p - lp) * fact(2 * q - lp) * phi_norm_sq(f, f, lp);
    }
    return s;
}

double gap_v2(const Kernel& f)
{
    const int p = f.p(), q = f.q(), l = p + q, m = std::min(p, q), lp = 2 * m;
    const Kernel h = reverse_conjugate(f);
    const double pq = fact(p) * fact(q);
    double s = 0.0;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            if (i + j == 0 || i + j >= lp) {
                continue;
            }
            const double c = binom(p, i) * binom(q, i) * binom(q, j) * binom(p, j) * pq * pq;
            s += c * norm_sq(contract(f, f, i, j));
        }
    }
    for (int r = 1; r <= l - 1; ++r) {
        const double c = fact(l - r);
        s += c * c * psi_norm_sq(f, h, r);
    }
    if (p != q && m >= 1) {
        const double c = binom(p, m) * binom(p, m) * binom(q, m) * binom(q, m) * pq * pq;
        s += c * norm_sq(contract(f, f, m, m));
    }
    return s;
}

double gap_moments(const Kernel& f)
{
    const ProductOptions opts = exact_product_options();
    const ChaosVariable F = ChaosVariable::single(f);
    const ChaosVariable A = multiply(F, conjugate(F), opts);
    const double fourth = expect_product(A, A).real();
    const double var = expectation(A).real();
    const double pseudo = std::norm(expect_product(F, F));
    return fourth - 2.0 * var * var - pseudo;
}

}  // namespace

GapRoute parse_gap_route(std::string_view name)
{
    if (name == "moments") return GapRoute::moments;
    if (name == "v1") return GapRoute::v1;
    if (name == "v2") return GapRoute::v2;
    throw std::invalid_argument("unknown gap route \"" + std::string(name) + "\"");
}

std::string_view to_string(GapRoute route)
{
    switch (route) {
    case GapRoute::moments: return "moments";
    case GapRoute::v1: return "v1";
    case GapRoute::v2: return "v2";
    }
    return "?";
}

ProductOptions exact_product_options()
{
    ProductOptions o;
    o.prune = false;
    return o;
}

double MomentReport::route_disagreement() const
{
    const double scale = std::max({std::abs(gap), std::abs(gap_v1), std::abs(gap_v2),
                                   var_abs * var_abs});
    if (scale == 0.0) {
        return 0.0;
    }
    const double d = std::max({std::abs(gap - gap_v1), std::abs(gap - gap_v2),
                               std::abs(gap_v1 - gap_v2)});
    return d / scale;
}

double variance_closed(const Kernel& f)
{
    return fact(f.p()) * fact(f.q()) * norm_sq(f);
}

cplx pseudo_variance_closed(const Kernel& f)
{
    if (f.p() != f.q()) {
        return 0.0;
    }
    return fact(f.p()) * fact(f.q()) * inner_product(sym(f), reverse_conjugate(sym(f)));
}

std::pair<cplx, cplx> third_moments_closed(const Kernel& f_in)
{
    if (f_in.p() != f_in.q()) {
        return {0.0, 0.0};
    }
    const Kernel f = sym(f_in);
    const int p = f.p();
    const Kernel h = reverse_conjugate(f);
    cplx e3{}, e21{};
    for (int i = 0; i <= p; ++i) {
        const double b = binom(p, i);
        const double c = fact(i) * fact(p - i) * fact(p) * fact(p) * b * b * b * b;
        const Kernel s = sym_contract(f, f, i, p - i);
        e3 += c * inner_product(s, h);
        e21 += c * inner_product(s, f);
    }
    return {e3, e21};
}

double fourth_gap(const Kernel& f_in, GapRoute route)
{
    if (f_in.rank() == 0) {
        throw std::invalid_argument("fourth_gap: kernel must have p + q >= 1");
    }
    const Kernel f = sym(f_in);
    switch (route) {
    case GapRoute::moments: return gap_moments(f);
    case GapRoute::v1: return gap_v1(f);
    case GapRoute::v2: return gap_v2(f);
    }
    throw std::invalid_argument("fourth_gap: unknown route");
}

double cov_abs_sq(const Kernel& f1_in, const Kernel& f2_in)
{
    if (!same_space(f1_in.space(), f2_in.space())) {
        throw std::invalid_argument("cov_abs_sq: kernels live on different spaces");
    }
    const Kernel f1 = sym(f1_in), f2 = sym(f2_in);
    const int p1 = f1.p(), q1 = f1.q(), p2 = f2.p(), q2 = f2.q();
    const int l = std::min(p1, p2) + std::min(q1, q2);
    const int lp = std::min(p1, q2) + std::min(q1, p2);
    const Kernel h2 = reverse_conjugate(f2);
    const double fp = fact(p1) * fact(q1) * fact(p2) * fact(q2);

    double s = 0.0;
    for (int k = 0; k <= std::min(p1, p2); ++k) {
        for (int kk = 0; kk <= std::min(q1, q2); ++kk) {
            const int r = k + kk;
            if (r == 0) {
                continue;
            }
            if (r == l && (p1 == p2 && q1 == q2)) {
                continue;
            }
            const double c = binom(p1, k) * binom(q1, kk) * binom(q2, kk) * binom(p2, k) * fp;
            s += c * norm_sq(contract(f1, h2, k, kk));
        }
    }
    for (int r = 1; r <= lp - 1; ++r) {
        s += fact(p1 + p2 - r) * fact(q1 + q2 - r) * phi_norm_sq(f1, f2, r);
    }
    if (lp >= 1 && !(p1 == q2 && q1 == p2)) {
        s += fact(p1 + p2 - lp) * fact(q1 + q2 - lp) * phi_norm_sq(f1, f2, lp);
    }

    // |E F1 conj F2|^2 + |E F1 F2|^2
    if (p1 == p2 && q1 == q2) {
        s += std::norm(fp / (fact(p2) * fact(q2)) * inner_product(f1, f2));
    }
    if (p1 == q2 && q1 == p2) {
        s += std::norm(fact(p1) * fact(q1) * inner_product(f1, h2));
    }
    return s;
}

double cov_abs_sq_moments(const Kernel& f1, const Kernel& f2)
{
    const ProductOptions opts = exact_product_options();
    const ChaosVariable F1 = ChaosVariable::single(f1);
    const ChaosVariable F2 = ChaosVariable::single(f2);
    const ChaosVariable A1 = multiply(F1, conjugate(F1), opts);
    const ChaosVariable A2 = multiply(F2, conjugate(F2), opts);
    return (expect_product(A1, A2) - expectation(A1) * expectation(A2)).real();
}

MomentReport moment_report(const Kernel& f_in)
{
    const Kernel f = sym(f_in);
    MomentReport r;
    r.p = f.p();
    r.q = f.q();
    r.var_abs = variance_closed(f);
    r.pseudo = pseudo_variance_closed(f);
    std::tie(r.third, r.third_mixed) = third_moments_closed(f);
    if (f.rank() >= 1) {
        r.gap = gap_moments(f);
        r.gap_v1 = gap_v1(f);
        r.gap_v2 = gap_v2(f);
    }
    return r;
}

double contraction_sum(const Kernel& f_in)
{
    const Kernel f = sym(f_in);
    const Kernel h = reverse_conjugate(f);
    const int l = f.rank();
    double s = 0.0;
    for (int i = 0; i <= f.p(); ++i) {
        for (int j = 0; j <= f.q(); ++j) {
            if (i + j > 0 && i + j < l) {
                s += norm_sq(contract(f, h, i, j));
            }
        }
    }
    return s;
}

double sandwich_c1(int p, int q)
{
    const int l = p + q;
    double c = 0.0;
    bool any = false;
    const double pq = fact(p) * fact(q);
    for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
            if (i + j == 0 || i + j >= l) {
                continue;
            }
            const double v = binom(p, i) * binom(p, i) * binom(q, j) * binom(q, j) * pq * pq;
            c = any ? std::min(c, v) : v;
            any = true;
        }
    }
    return c;
}

std::vector<double> sandwich_c2_table(int p, int q)
{
    const int l = p + q, m = std::min(p, q), lp = 2 * m;
    const double pq = fact(p) * fact(q);
    std::vector<double> t(static_cast<std::size_t>((p + 1) * (q + 1)), 0.0);
    auto at = [&](int i, int j) -> double& {
        return t[static_cast<std::size_t>(i * (q + 1) + j)];
    };
    for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
            if (i + j > 0 && i + j < l) {
                at(i, j) += binom(p, i) * binom(p, i) * binom(q, j) * binom(q, j) * pq * pq;
            }
        }
    }
    // ||f (x)_{i,j} f||^2 <= (||f (x)_{p-i,q-j} h||^2 + ||f (x)_{p-j,q-i} h||^2) / 2
    auto spread = [&](int i, int j, double c) {
        at(p - i, q - j) += 0.5 * c;
        at(p - j, q - i) += 0.5 * c;
    };
    for (int r = 1; r <= lp - 1; ++r) {
        int count = 0;
        for (int i = 0; i <= m; ++i) {
            if (r - i >= 0 && r - i <= m) {
                ++count;
            }
        }
        const double g = fact(2 * p - r) * fact(2 * q - r) * count;
        for (int i = 0; i <= m; ++i) {
            const int j = r - i;
            if (j < 0 || j > m) {
                continue;
            }
            const double a = binom(p, i) * binom(q, i) * binom(q, j) * binom(p, j) *
                             fact(i) * fact(j);
            spread(i, j, g * a * a);
        }
    }
    if (p != q && m >= 1) {
        const double a = binom(p, m) * binom(q, m) * binom(q, m) * binom(p, m) *
                         fact(m) * fact(m);
        spread(m, m, fact(2 * p - lp) * fact(2 * q - lp) * a * a);
    }
    return t;
}

double sandwich_c2(int p, int q)
{
    const auto t = sandwich_c2_table(p, q);
    return t.empty() ? 0.0 : *std::max_element(t.begin(), t.end());
}

}  // namespace cchaos
