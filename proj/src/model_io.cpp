#include "levyflux/model_io.hpp"
#include "levyflux/errors.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace levyflux {

using nlohmann::json;

namespace {

CpSizeDist size_dist_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "exponential") return ExponentialSizes{j.at("mean").get<double>()};
    if (type == "gamma") return GammaSizes{j.at("shape").get<double>(), j.at("scale").get<double>()};
    if (type == "deterministic") return DeterministicSizes{j.at("size").get<double>()};
    throw validation_error("unknown size_dist type: " + type);
}

json size_dist_to_json(const CpSizeDist& d) {
    return std::visit([](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ExponentialSizes>)
            return {{"type", "exponential"}, {"mean", v.mean}};
        else if constexpr (std::is_same_v<V, GammaSizes>)
            return {{"type", "gamma"}, {"shape", v.shape}, {"scale", v.scale}};
        else
            return {{"type", "deterministic"}, {"size", v.size}};
    }, d);
}

} // namespace

SpectrallyPositiveModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error(std::string("model JSON parse failure: ") + e.what());
    }
    SpectrallyPositiveModel m;
    try {
        const std::string family = j.at("family").get<std::string>();
        m.drift = j.value("drift", 0.0);
        m.gaussian_coef = j.value("gaussian_coef", 0.0);
        if (family == "brownian" || family == "pure_drift") {
            m.jumps = NoJumps{};
        } else if (family == "compound_poisson") {
            const json& jj = j.at("jumps");
            m.jumps = CompoundPoissonJumps{jj.at("rate").get<double>(),
                                           size_dist_from_json(jj.at("size_dist"))};
        } else if (family == "gamma") {
            const json& jj = j.at("jumps");
            m.jumps = GammaSubordinatorJumps{jj.at("shape_rate").get<double>(),
                                             jj.at("scale").get<double>()};
        } else if (family == "stable") {
            const json& jj = j.at("jumps");
            m.jumps = StablePositiveJumps{jj.at("alpha").get<double>(),
                                          jj.at("scale").get<double>()};
        } else {
            throw validation_error("unknown model family: " + family);
        }
    } catch (const json::exception& e) {
        throw validation_error(std::string("model JSON schema failure: ") + e.what());
    }
    m.validate();
    return m;
}

SpectrallyPositiveModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

std::string model_to_json(const SpectrallyPositiveModel& m) {
    json j;
    j["drift"] = m.drift;
    j["gaussian_coef"] = m.gaussian_coef;
    if (std::holds_alternative<NoJumps>(m.jumps)) {
        j["family"] = m.is_pure_drift() && m.gaussian_coef == 0.0 ? "pure_drift" : "brownian";
    } else if (const auto* cp = std::get_if<CompoundPoissonJumps>(&m.jumps)) {
        j["family"] = "compound_poisson";
        j["jumps"] = {{"rate", cp->rate}, {"size_dist", size_dist_to_json(cp->sizes)}};
    } else if (const auto* g = std::get_if<GammaSubordinatorJumps>(&m.jumps)) {
        j["family"] = "gamma";
        j["jumps"] = {{"shape_rate", g->shape_rate}, {"scale", g->scale}};
    } else if (const auto* s = std::get_if<StablePositiveJumps>(&m.jumps)) {
        j["family"] = "stable";
        j["jumps"] = {{"alpha", s->alpha}, {"scale", s->scale}};
    }
    return j.dump(2);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace levyflux
