#include "cchaos/chaos.hpp"

#include <cmath>
#include <string>

#include "cchaos/combinatorics.hpp"

namespace cchaos {

namespace {

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what)
{
    if (!same_space(a, b)) {
        throw std::invalid_argument(std::string(what) + ": variables live on different spaces");
    }
}

}  // namespace

ChaosVariable::ChaosVariable(SpacePtr space, cplx constant)
    : space_(std::move(space)), constant_(constant)
{
    if (!space_) {
        throw std::invalid_argument("ChaosVariable: null space");
    }
}

ChaosVariable ChaosVariable::single(const Kernel& f)
{
    ChaosVariable F(f.space());
    F.add(f);
    return F;
}

void ChaosVariable::add(const Kernel& f)
{
    require_same_space(space_, f.space(), "ChaosVariable::add");
    if (f.rank() == 0) {
        constant_ += f[0];
        return;
    }
    Kernel s = symmetrize(f);
    auto it = terms_.find({f.p(), f.q()});
    if (it == terms_.end()) {
        terms_.emplace(Order{f.p(), f.q()}, std::move(s));
    } else {
        it->second += s;
    }
}

const Kernel* ChaosVariable::term(int p, int q) const
{
    auto it = terms_.find({p, q});
    return it == terms_.end() ? nullptr : &it->second;
}

int ChaosVariable::degree() const
{
    int d = 0;
    for (const auto& [o, k] : terms_) {
        d = std::max(d, o.first + o.second);
    }
    return d;
}

bool ChaosVariable::is_single_order() const
{
    return terms_.size() == 1 && constant_ == cplx{};
}

double ChaosVariable::l2_norm() const
{
    double s = std::norm(constant_);
    for (const auto& [o, k] : terms_) {
        s += factorial_d(o.first) * factorial_d(o.second) * norm_sq(k);
    }
    return std::sqrt(s);
}

ChaosVariable& ChaosVariable::operator+=(const ChaosVariable& other)
{
    require_same_space(space_, other.space_, "ChaosVariable::operator+=");
    constant_ += other.constant_;
    for (const auto& [o, k] : other.terms_) {
        add(k);
    }
    return *this;
}

ChaosVariable& ChaosVariable::operator*=(cplx s)
{
    constant_ *= s;
    for (auto& [o, k] : terms_) {
        k *= s;
    }
    return *this;
}

ChaosVariable operator+(ChaosVariable a, const ChaosVariable& b)
{
    a += b;
    return a;
}

ChaosVariable operator*(cplx s, ChaosVariable a)
{
    a *= s;
    return a;
}

ChaosVector::ChaosVector(std::vector<ChaosVariable> components)
    : components_(std::move(components))
{
    if (components_.empty()) {
        throw std::invalid_argument("ChaosVector: dimension must be at least 1");
    }
    for (const auto& c : components_) {
        require_same_space(components_.front().space(), c.space(), "ChaosVector");
    }
}

ChaosVariable conjugate(const ChaosVariable& F)
{
    ChaosVariable out(F.space(), std::conj(F.constant()));
    for (const auto& [o, k] : F.terms()) {
        out.add(reverse_conjugate(k));
    }
    return out;
}

ChaosVariable multiply(const ChaosVariable& F, const ChaosVariable& G,
                       const ProductOptions& opts)
{
    require_same_space(F.space(), G.space(), "multiply");
    ChaosVariable out(F.space(), F.constant() * G.constant());
    std::map<Order, Kernel> raw;

    auto accumulate = [&](Kernel k, double coef) {
        if (k.rank() == 0) {
            out.set_constant(out.constant() + coef * k[0]);
            return;
        }
        k *= coef;
        const Order o{k.p(), k.q()};
        auto it = raw.find(o);
        if (it == raw.end()) {
            raw.emplace(o, std::move(k));
        } else {
            it->second += k;
        }
    };

    for (const auto& [og, g] : G.terms()) {
        if (F.constant() != cplx{}) {
            accumulate(F.constant() * g, 1.0);
        }
    }
    for (const auto& [of, f] : F.terms()) {
        if (G.constant() != cplx{}) {
            accumulate(G.constant() * f, 1.0);
        }
    }

    for (const auto& [of, f] : F.terms()) {
        const int a = of.first, b = of.second;
        for (const auto& [og, g] : G.terms()) {
            const int c = og.first, d = og.second;
            for (int i = 0; i <= std::min(a, d); ++i) {
                for (int j = 0; j <= std::min(b, c); ++j) {
                    const int deg = a + b + c + d - 2 * (i + j);
                    if (deg > opts.degree_cap) {
                        throw degree_cap_exceeded(
                            "multiply: product term of degree " + std::to_string(deg) +
                            " exceeds cap " + std::to_string(opts.degree_cap));
                    }
                    const double coef = binomial_d(a, i) * binomial_d(d, i) *
                                        binomial_d(b, j) * binomial_d(c, j) *
                                        factorial_d(i) * factorial_d(j);
                    accumulate(contract(f, g, i, j), coef);
                }
            }
        }
    }

    const double threshold = opts.prune ? opts.prune_rel * F.l2_norm() * G.l2_norm() : 0.0;
    for (auto& [o, k] : raw) {
        Kernel s = symmetrize(k);
        if (opts.prune && norm(s) < threshold) {
            continue;
        }
        out.add(s);
    }
    return out;
}

cplx expectation(const ChaosVariable& F)
{
    return F.constant();
}

cplx expect_product(const ChaosVariable& F, const ChaosVariable& G)
{
    require_same_space(F.space(), G.space(), "expect_product");
    cplx s = F.constant() * G.constant();
    for (const auto& [o, f] : F.terms()) {
        const Kernel* g = G.term(o.second, o.first);
        if (g == nullptr) {
            continue;
        }
        s += factorial_d(o.first) * factorial_d(o.second) *
             inner_product(f, reverse_conjugate(*g));
    }
    return s;
}

cplx expect_product_conj(const ChaosVariable& F, const ChaosVariable& G)
{
    require_same_space(F.space(), G.space(), "expect_product_conj");
    cplx s = F.constant() * std::conj(G.constant());
    for (const auto& [o, f] : F.terms()) {
        const Kernel* g = G.term(o.first, o.second);
        if (g == nullptr) {
            continue;
        }
        s += factorial_d(o.first) * factorial_d(o.second) * inner_product(f, *g);
    }
    return s;
}

cplx expect_product_of(const std::vector<ChaosVariable>& factors,
                       const ProductOptions& opts)
{
    if (factors.empty()) {
        return 1.0;
    }
    if (factors.size() == 1) {
        return expectation(factors.front());
    }
    const std::size_t half = factors.size() / 2;
    auto chain = [&](std::size_t from, std::size_t to) {
        ChaosVariable acc = factors[from];
        for (std::size_t k = from + 1; k < to; ++k) {
            acc = multiply(acc, factors[k], opts);
        }
        return acc;
    };
    return expect_product(chain(0, half), chain(half, factors.size()));
}

cplx moment(const ChaosVariable& F, int k, int l, const ProductOptions& opts)
{
    if (k < 0 || l < 0) {
        throw std::invalid_argument("moment: negative exponent");
    }
    const ChaosVariable Fb = conjugate(F);
    std::vector<ChaosVariable> factors;
    // alternate F and conj(F) so both halves carry similar degree
    int a = k, b = l;
    while (a > 0 || b > 0) {
        if (a > 0) {
            factors.push_back(F);
            --a;
        }
        if (b > 0) {
            factors.push_back(Fb);
            --b;
        }
    }
    return expect_product_of(factors, opts);
}

}  // namespace cchaos
