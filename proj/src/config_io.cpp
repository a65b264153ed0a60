// SPDX-License-Identifier: Apache-2.0
#include "irsopt/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace irsopt {

using nlohmann::json;

PhaseAlphabet parse_alphabet(const std::string& spec) {
    if (spec == "cp") return PhaseAlphabet::continuous();
    if (spec.rfind("dp:", 0) == 0) {
        const int L = std::stoi(spec.substr(3));
        return PhaseAlphabet::discrete(L);
    }
    throw std::invalid_argument("alphabet must be 'cp' or 'dp:L', got '" + spec + "'");
}

std::string alphabet_name(const PhaseAlphabet& alphabet) {
    return alphabet.is_discrete() ? "dp:" + std::to_string(alphabet.levels) : "cp";
}

namespace {

double linear_to_db(double x) { return 10.0 * std::log10(x); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

const std::set<std::string> kKnownKeys = {
    "M", "K", "N", "eta", "sigma2_dbm", "p_max_dbm", "alphabet", "geometry", "pathloss"};

SystemConfig from_json(const json& j) {
    SystemConfig c = SystemConfig::reference_default();
    for (const auto& [key, _] : j.items())
        if (!kKnownKeys.count(key)) throw std::invalid_argument("unknown config key: " + key);

    if (j.contains("M")) c.M = j.at("M").get<int>();
    if (j.contains("K")) c.K = j.at("K").get<int>();
    if (j.contains("N")) c.N = j.at("N").get<int>();
    if (j.contains("eta")) c.eta = j.at("eta").get<double>();
    const double sigma2_dbm = j.value("sigma2_dbm", -80.0);
    c.sigma2 = Eigen::VectorXd::Constant(c.K, dbm_to_watts(sigma2_dbm));
    if (j.contains("p_max_dbm")) c.p_max = dbm_to_watts(j.at("p_max_dbm").get<double>());
    if (j.contains("alphabet")) c.alphabet = parse_alphabet(j.at("alphabet").get<std::string>());
    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        auto vec2 = [](const json& a) { return Eigen::Vector2d(a.at(0), a.at(1)); };
        if (g.contains("bs")) c.geometry.bs = vec2(g.at("bs"));
        if (g.contains("irs")) c.geometry.irs = vec2(g.at("irs"));
        if (g.contains("user_center")) c.geometry.user_center = vec2(g.at("user_center"));
        if (g.contains("user_radius")) c.geometry.user_radius = g.at("user_radius").get<double>();
    }
    if (j.contains("pathloss")) {
        const auto& p = j.at("pathloss");
        if (p.contains("direct_db")) c.pathloss.c0_zeta_direct = db_to_linear(p.at("direct_db"));
        if (p.contains("alpha_direct")) c.pathloss.alpha_direct = p.at("alpha_direct");
        if (p.contains("cascaded_db"))
            c.pathloss.c0_zeta_cascaded = db_to_linear(p.at("cascaded_db"));
        if (p.contains("alpha_bs_irs")) c.pathloss.alpha_bs_irs = p.at("alpha_bs_irs");
        if (p.contains("alpha_irs_user")) c.pathloss.alpha_irs_user = p.at("alpha_irs_user");
    }
    c.validate();
    return c;
}

}  // namespace

SystemConfig load_config(const std::string& path_or_preset) {
    if (path_or_preset == "reference_default" || path_or_preset.empty())
        return SystemConfig::reference_default();
    std::ifstream in(path_or_preset);
    if (!in) throw std::runtime_error("cannot open config file: " + path_or_preset);
    json j;
    in >> j;
    return from_json(j);
}

std::string config_to_json(const SystemConfig& config) {
    json j;
    j["M"] = config.M;
    j["K"] = config.K;
    j["N"] = config.N;
    j["eta"] = config.eta;
    j["sigma2_dbm"] = watts_to_dbm(config.sigma2[0]);
    j["p_max_dbm"] = watts_to_dbm(config.p_max);
    j["alphabet"] = alphabet_name(config.alphabet);
    j["geometry"] = {{"bs", {config.geometry.bs.x(), config.geometry.bs.y()}},
                     {"irs", {config.geometry.irs.x(), config.geometry.irs.y()}},
                     {"user_center",
                      {config.geometry.user_center.x(), config.geometry.user_center.y()}},
                     {"user_radius", config.geometry.user_radius}};
    j["pathloss"] = {{"direct_db", linear_to_db(config.pathloss.c0_zeta_direct)},
                     {"alpha_direct", config.pathloss.alpha_direct},
                     {"cascaded_db", linear_to_db(config.pathloss.c0_zeta_cascaded)},
                     {"alpha_bs_irs", config.pathloss.alpha_bs_irs},
                     {"alpha_irs_user", config.pathloss.alpha_irs_user}};
    return j.dump(2);
}

}  // namespace irsopt
