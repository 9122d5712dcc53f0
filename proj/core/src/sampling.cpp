#include "cchaos/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cchaos/hermite.hpp"
#include "cchaos/parallel.hpp"
#include "cchaos/rng.hpp"

namespace cchaos {

namespace {

struct Factor {
    std::uint32_t k;  // basis index
    std::uint16_t a;  // holomorphic multiplicity
    std::uint16_t b;  // antiholomorphic multiplicity
};

// One multiplicity class of index tuples: sum of orthonormal coefficients
// times a product of single-coordinate Hermite factors.
struct Monomial {
    cplx coeff;
    std::vector<Factor> factors;
};

struct CompiledTerm {
    int p = 0;
    int q = 0;
    std::vector<Monomial> monomials;
};

CompiledTerm compile_term(const Kernel& f)
{
    const std::size_t n = f.n();
    const int r = f.rank();
    std::map<std::vector<std::uint32_t>, cplx> classes;
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(r));
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        const cplx c = f[flat];
        if (c == cplx{}) {
            continue;
        }
        std::size_t t = flat;
        for (int s = r; s-- > 0;) {
            digits[static_cast<std::size_t>(s)] = static_cast<std::uint32_t>(t % n);
            t /= n;
        }
        // canonical key: sorted holomorphic block, then sorted antiholomorphic block
        std::vector<std::uint32_t> key(digits);
        std::sort(key.begin(), key.begin() + f.p());
        std::sort(key.begin() + f.p(), key.end());
        classes[key] += c * std::sqrt(f.weight_at(flat));
    }
    CompiledTerm out;
    out.p = f.p();
    out.q = f.q();
    for (const auto& [key, coeff] : classes) {
        std::map<std::uint32_t, std::pair<int, int>> mult;
        for (int s = 0; s < r; ++s) {
            auto& m = mult[key[static_cast<std::size_t>(s)]];
            (s < f.p() ? m.first : m.second) += 1;
        }
        Monomial mono;
        mono.coeff = coeff;
        for (const auto& [k, ab] : mult) {
            mono.factors.push_back({k, static_cast<std::uint16_t>(ab.first),
                                    static_cast<std::uint16_t>(ab.second)});
        }
        out.monomials.push_back(std::move(mono));
    }
    return out;
}

struct CompiledVariable {
    cplx constant;
    std::vector<CompiledTerm> terms;
};

CompiledVariable compile(const ChaosVariable& F)
{
    CompiledVariable c{F.constant(), {}};
    for (const auto& [o, k] : F.terms()) {
        c.terms.push_back(compile_term(k));
    }
    return c;
}

// Per-sample evaluator with a Hermite table for every coordinate.
class Evaluator {
  public:
    Evaluator(std::size_t n, int pmax, int qmax)
        : n_(n), pmax_(pmax), qmax_(qmax), width_(static_cast<std::size_t>((pmax + 1) * (qmax + 1))),
          table_(n * width_), z_(n)
    {
        scale_.resize(static_cast<std::size_t>(pmax + qmax + 1));
        for (std::size_t d = 0; d < scale_.size(); ++d) {
            scale_[d] = std::pow(2.0, -0.5 * static_cast<double>(d));
        }
    }

    void draw(CounterStream& rng)
    {
        for (std::size_t k = 0; k < n_; ++k) {
            z_[k] = rng.complex_normal();
            hermite_table(pmax_, qmax_, std::numbers::sqrt2 * z_[k], &table_[k * width_]);
        }
    }

    cplx value(const CompiledVariable& F) const
    {
        cplx acc = F.constant;
        for (const auto& t : F.terms) {
            for (const auto& m : t.monomials) {
                cplx prod = m.coeff;
                for (const auto& fac : m.factors) {
                    prod *= table_[fac.k * width_ + fac.a * static_cast<std::size_t>(qmax_ + 1) + fac.b];
                }
                acc += prod * scale_[static_cast<std::size_t>(t.p + t.q)];
            }
        }
        return acc;
    }

  private:
    std::size_t n_;
    int pmax_, qmax_;
    std::size_t width_;
    std::vector<cplx> table_;
    std::vector<cplx> z_;
    std::vector<double> scale_;
};

void max_orders(const ChaosVariable& F, int& pmax, int& qmax)
{
    for (const auto& [o, k] : F.terms()) {
        pmax = std::max(pmax, o.first);
        qmax = std::max(qmax, o.second);
    }
}

std::string chaos_meta(std::size_t n)
{
    return std::string(generator_version) + ";chaos;n=" + std::to_string(n);
}

}  // namespace

GaussianTarget GaussianTarget::circular(double sigma_sq)
{
    return {Kind::circular, sigma_sq, 0.0, 0.0};
}

GaussianTarget GaussianTarget::bivariate(double a, double b, double sigma_sq)
{
    return {Kind::bivariate, sigma_sq, a, b};
}

std::vector<SampleBatch> sample_chaos_vector(const ChaosVector& F, std::size_t N,
                                             std::uint64_t seed, unsigned threads)
{
    if (N == 0) {
        throw std::invalid_argument("sample_chaos: N must be at least 1");
    }
    int pmax = 0, qmax = 0;
    std::vector<CompiledVariable> comps;
    for (const auto& c : F.components()) {
        max_orders(c, pmax, qmax);
        comps.push_back(compile(c));
    }
    const std::size_t n = F.space()->n();
    std::vector<SampleBatch> out(F.dim());
    for (auto& b : out) {
        b.values.resize(N);
        b.seed = seed;
        b.meta = chaos_meta(n);
    }
    parallel_for(N, threads, [&](std::size_t begin, std::size_t end) {
        Evaluator ev(n, pmax, qmax);
        for (std::size_t s = begin; s < end; ++s) {
            CounterStream rng(seed, s);
            ev.draw(rng);
            for (std::size_t c = 0; c < comps.size(); ++c) {
                out[c].values[s] = ev.value(comps[c]);
            }
        }
    });
    return out;
}

SampleBatch sample_chaos(const ChaosVariable& F, std::size_t N, std::uint64_t seed,
                         unsigned threads)
{
    return std::move(sample_chaos_vector(ChaosVector({F}), N, seed, threads).front());
}

SampleBatch sample_gaussian(const GaussianTarget& t, std::size_t N, std::uint64_t seed,
                            unsigned threads)
{
    if (N == 0) {
        throw std::invalid_argument("sample_gaussian: N must be at least 1");
    }
    if (!(t.sigma_sq >= 0.0)) {
        throw std::invalid_argument("sample_gaussian: variance must be nonnegative");
    }
    const double a = t.kind == GaussianTarget::Kind::circular ? 0.0 : t.a;
    const double b = t.kind == GaussianTarget::Kind::circular ? 0.0 : t.b;
    // eigen-decomposition of C = 1/2 [[s + a, b], [b, s - a]]
    const double rad = std::hypot(a, b);
    const double l1 = 0.5 * (t.sigma_sq + rad);
    const double l2 = 0.5 * (t.sigma_sq - rad);
    if (l2 < -1e-12 * std::max(1.0, t.sigma_sq)) {
        throw std::invalid_argument("sample_gaussian: covariance is not positive semidefinite");
    }
    const double th = 0.5 * std::atan2(b, a);
    const double c = std::cos(th), s = std::sin(th);
    const double r1 = std::sqrt(std::max(0.0, l1)), r2 = std::sqrt(std::max(0.0, l2));

    SampleBatch out;
    out.values.resize(N);
    out.seed = seed;
    out.meta = std::string(generator_version) + ";gaussian";
    parallel_for(N, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            CounterStream rng(seed, k);
            const auto g = rng.normal_pair();
            const double x = r1 * g[0], y = r2 * g[1];
            out.values[k] = {c * x - s * y, s * x + c * y};
        }
    });
    return out;
}

void write_batch_csv(const std::filesystem::path& path, const SampleBatch& batch)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << "# seed=" << batch.seed << '\n';
    out << "# generator=" << generator_version << '\n';
    out << "# meta=" << batch.meta << '\n';
    out << "re,im\n";
    char buf[64];
    for (const cplx& v : batch.values) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
        out << buf;
    }
}

SampleBatch read_batch_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    SampleBatch b;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind("# seed=", 0) == 0) {
                b.seed = std::stoull(line.substr(7));
            } else if (line.rfind("# meta=", 0) == 0) {
                b.meta = line.substr(7);
            }
            continue;
        }
        if (!header) {
            if (line != "re,im") {
                throw std::invalid_argument(path.string() + ": expected \"re,im\" header");
            }
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument(path.string() + ": malformed row \"" + line + "\"");
        }
        b.values.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return b;
}

}  // namespace cchaos
