#include "cchaos/chaos_io.hpp"

#include <stdexcept>

#include "cchaos/kernel_io.hpp"

namespace cchaos {

nlohmann::json chaos_to_json(const ChaosVariable& F)
{
    nlohmann::json j;
    j["constant_re"] = F.constant().real();
    j["constant_im"] = F.constant().imag();
    j["terms"] = nlohmann::json::array();
    for (const auto& [o, k] : F.terms()) {
        j["terms"].push_back({{"p", o.first}, {"q", o.second}, {"kernel", kernel_to_json(k)}});
    }
    return j;
}

ChaosVariable chaos_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("chaos variable must be a JSON object");
    }
    if (j.contains("re")) {
        return ChaosVariable::single(kernel_from_json(j));
    }
    if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty()) {
        throw std::invalid_argument("chaos variable needs a non-empty \"terms\" array");
    }
    const auto& terms = j.at("terms");
    SpacePtr space = space_from_json(terms.front().at("kernel"));
    ChaosVariable F(space, {j.value("constant_re", 0.0), j.value("constant_im", 0.0)});
    for (const auto& t : terms) {
        if (!t.contains("kernel")) {
            throw std::invalid_argument("term without \"kernel\"");
        }
        Kernel k = kernel_from_json(t.at("kernel"));
        if (t.contains("p") && t.contains("q") &&
            (t.at("p").get<int>() != k.p() || t.at("q").get<int>() != k.q())) {
            throw std::invalid_argument("term order does not match its kernel");
        }
        if (!same_space(space, k.space())) {
            throw std::invalid_argument("terms live on different spaces");
        }
        F.add(Kernel(space, k.p(), k.q(),
                     std::vector<cplx>(k.coeffs().begin(), k.coeffs().end()), k.symmetric()));
    }
    return F;
}

nlohmann::json vector_to_json(const ChaosVector& F)
{
    nlohmann::json j;
    j["components"] = nlohmann::json::array();
    for (const auto& c : F.components()) {
        j["components"].push_back(chaos_to_json(c));
    }
    return j;
}

ChaosVector vector_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("components") || !j.at("components").is_array()) {
        throw std::invalid_argument("vector file needs a \"components\" array");
    }
    std::vector<ChaosVariable> comps;
    for (const auto& c : j.at("components")) {
        comps.push_back(chaos_from_json(c));
    }
    if (comps.empty()) {
        throw std::invalid_argument("vector file has no components");
    }
    // re-home every component on the first component's space object
    std::vector<ChaosVariable> rehomed;
    const SpacePtr& space = comps.front().space();
    for (const auto& c : comps) {
        if (!same_space(space, c.space())) {
            throw std::invalid_argument("vector components live on different spaces");
        }
        ChaosVariable r(space, c.constant());
        for (const auto& [o, k] : c.terms()) {
            r.add(Kernel(space, k.p(), k.q(),
                         std::vector<cplx>(k.coeffs().begin(), k.coeffs().end()), true));
        }
        rehomed.push_back(std::move(r));
    }
    return ChaosVector(std::move(rehomed));
}

}  // namespace cchaos
