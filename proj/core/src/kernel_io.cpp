#include "cchaos/kernel_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace cchaos {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

std::vector<double> real_array(const nlohmann::json& j, const char* key)
{
    const auto& a = field(j, key);
    if (!a.is_array()) {
        throw std::invalid_argument(std::string("field \"") + key + "\" must be an array");
    }
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& v : a) {
        if (!v.is_number()) {
            throw std::invalid_argument(std::string("field \"") + key +
                                        "\" must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

int nonneg_int(const nlohmann::json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw std::invalid_argument(std::string("field \"") + key +
                                    "\" must be a nonnegative integer");
    }
    return static_cast<int>(v.get<long long>());
}

}  // namespace

nlohmann::json kernel_to_json(const Kernel& f)
{
    nlohmann::json j;
    j["n"] = f.n();
    j["p"] = f.p();
    j["q"] = f.q();
    const Space& sp = *f.space();
    j["weights"] = std::vector<double>(sp.weights().begin(), sp.weights().end());
    if (sp.has_grid()) {
        j["grid"] = std::vector<double>(sp.grid().begin(), sp.grid().end());
    } else {
        j["grid"] = nullptr;
    }
    std::vector<double> re(f.size()), im(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        re[k] = f[k].real();
        im[k] = f[k].imag();
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

SpacePtr space_from_json(const nlohmann::json& j)
{
    const int n = nonneg_int(j, "n");
    std::vector<double> w = real_array(j, "weights");
    if (static_cast<int>(w.size()) != n) {
        throw std::invalid_argument("weights has length " + std::to_string(w.size()) +
                                    ", expected n = " + std::to_string(n));
    }
    std::optional<std::vector<double>> grid;
    if (j.contains("grid") && !j.at("grid").is_null()) {
        grid = real_array(j, "grid");
    }
    return Space::weighted(std::move(w), std::move(grid));
}

Kernel kernel_from_json(const nlohmann::json& j)
{
    SpacePtr space = space_from_json(j);
    const int p = nonneg_int(j, "p");
    const int q = nonneg_int(j, "q");
    const std::vector<double> re = real_array(j, "re");
    const std::vector<double> im = real_array(j, "im");
    if (re.size() != im.size()) {
        throw std::invalid_argument("re and im have different lengths");
    }
    std::vector<cplx> c(re.size());
    for (std::size_t k = 0; k < re.size(); ++k) {
        if (!std::isfinite(re[k]) || !std::isfinite(im[k])) {
            throw std::invalid_argument("kernel coefficients must be finite");
        }
        c[k] = {re[k], im[k]};
    }
    Kernel f(std::move(space), p, q, std::move(c), false);
    f.assume_symmetric(f.check_symmetric());
    return f;
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

}  // namespace cchaos
