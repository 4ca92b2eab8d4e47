// SPDX-License-Identifier: Apache-2.0
//
// pmscast: link-level simulator for multicast systems with a programmable
// metasurface transmitter
// Copyright (C) 2026 The pmscast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "pmscast/config_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace pmscast
{

namespace
{

namespace pt = boost::property_tree;

constexpr std::array kSystemKeys{
    "n_rf",      "l_per_sub", "n_total",     "k_users",      "m_ph",     "beta",
    "gamma",     "rho",       "rho_dbm",     "rho_p",        "rho_p_dbm", "tau_p",
    "tau_c",     "eps_r",     "eps_r_dbm",    "cell_radius",  "pathloss_exp",
    "f_c",       "f_m",       "bandwidth",   "noise_density_dbm_hz"};

constexpr std::array kGeometryKeys{"antenna_gain_dbi", "element_area", "d_b2p", "derive_beta"};

constexpr std::array kSimulationKeys{
    "sweep_var",    "values",         "trials",        "profiles",        "full_trials",
    "full_profiles", "seed",          "profile_seed",  "beam_mode",       "power_control",
    "series",       "approximation",  "workers",       "channel_dump",    "estimation_dump",
    "allocation_out", "rate_out"};

template <std::size_t N>
void check_keys(const pt::ptree &section, const std::string &name, const std::array<const char *, N> &allowed)
{
    for (const auto &[key, node] : section)
    {
        if (!node.empty())
            throw ConfigError("nested entries are not supported in [" + name + "]");
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char *k) { return key == k; });
        if (!known)
            throw ConfigError("unknown key '" + key + "' in [" + name + "]");
    }
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string &key, const std::string &raw)
{
    const std::string text = trim(raw);
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ConfigError("invalid number for " + key + ": '" + raw + "'");
    return v;
}

long long to_integer(const std::string &key, const std::string &raw)
{
    const std::string text = trim(raw);
    long long v = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ConfigError("invalid integer for " + key + ": '" + raw + "'");
    return v;
}

std::uint64_t to_u64(const std::string &key, const std::string &raw)
{
    const std::string text = trim(raw);
    std::uint64_t v = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ConfigError("invalid unsigned integer for " + key + ": '" + raw + "'");
    return v;
}

std::size_t to_count(const std::string &key, const std::string &raw)
{
    const long long v = to_integer(key, raw);
    if (v < 1)
        throw ConfigError(key + " must be at least 1");
    return static_cast<std::size_t>(v);
}

bool to_bool(const std::string &key, const std::string &raw)
{
    const std::string t = trim(raw);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError("invalid boolean for " + key + ": '" + raw + "'");
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::optional<std::string> get(const pt::ptree &section, const char *key)
{
    if (auto v = section.get_optional<std::string>(pt::ptree::path_type(key, '\0')))
        return *v;
    return std::nullopt;
}

} // namespace

std::vector<double> parse_value_list(const std::string &text)
{
    std::vector<double> out;
    for (const auto &item : split_list(text))
        out.push_back(to_double("values", item));
    if (out.empty())
        throw ConfigError("value list must not be empty");
    return out;
}

ConfigFile parse_config(std::istream &in)
{
    pt::ptree tree;
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ConfigError(std::string("malformed config: ") + e.message() + " (line " +
                          std::to_string(e.line()) + ")");
    }

    const pt::ptree empty;
    const pt::ptree *system = &empty, *geometry = &empty, *simulation = &empty;
    for (const auto &[name, node] : tree)
    {
        if (node.empty())
            throw ConfigError("key '" + name + "' appears outside of a section");
        if (name == "system")
            system = &node;
        else if (name == "geometry")
            geometry = &node;
        else if (name == "simulation")
            simulation = &node;
        else
            throw ConfigError("unknown section [" + name + "]");
    }
    check_keys(*system, "system", kSystemKeys);
    check_keys(*geometry, "geometry", kGeometryKeys);
    check_keys(*simulation, "simulation", kSimulationKeys);

    ConfigFile out;
    SystemConfig &cfg = out.system;

    auto int_key = [&](const char *key, int &dst) {
        if (auto v = get(*system, key))
            dst = static_cast<int>(to_integer(std::string("system.") + key, *v));
    };
    auto dbl_key = [&](const pt::ptree &sec, const char *prefix, const char *key, double &dst) {
        if (auto v = get(sec, key))
            dst = to_double(std::string(prefix) + key, *v);
    };
    auto opt_dbl = [&](const char *key) -> std::optional<double> {
        if (auto v = get(*system, key))
            return to_double(std::string("system.") + key, *v);
        return std::nullopt;
    };

    int_key("n_rf", cfg.n_rf);
    int_key("l_per_sub", cfg.l_per_sub);
    int_key("k_users", cfg.k_users);
    int_key("m_ph", cfg.m_ph);
    cfg.n_total = cfg.n_rf * cfg.l_per_sub;
    int_key("n_total", cfg.n_total);
    cfg.tau_p = cfg.k_users;
    int_key("tau_p", cfg.tau_p);

    dbl_key(*system, "system.", "gamma", cfg.gamma);
    dbl_key(*system, "system.", "cell_radius", cfg.cell_radius);
    dbl_key(*system, "system.", "pathloss_exp", cfg.pathloss_exp);
    dbl_key(*system, "system.", "f_c", cfg.f_c);
    dbl_key(*system, "system.", "f_m", cfg.f_m);
    dbl_key(*system, "system.", "bandwidth", cfg.bandwidth);
    dbl_key(*system, "system.", "noise_density_dbm_hz", cfg.noise_density_dbm_hz);

    if (cfg.f_m > 0.0 && cfg.bandwidth > 0.0)
        cfg.tau_c = coherence_symbols(cfg.f_m, cfg.bandwidth);
    if (auto v = get(*system, "tau_c"))
        cfg.tau_c = to_integer("system.tau_c", *v);

    const double noise_dbm = noise_power_dbm(cfg.noise_density_dbm_hz, cfg.bandwidth);
    auto rho_lin = opt_dbl("rho");
    auto rho_dbm = opt_dbl("rho_dbm");
    if (!rho_lin && !rho_dbm)
        rho_dbm = -10.0;
    cfg.rho = resolve_normalized_snr(rho_lin, rho_dbm, noise_dbm, "rho");

    auto rho_p_lin = opt_dbl("rho_p");
    auto rho_p_dbm = opt_dbl("rho_p_dbm");
    if (!rho_p_lin && !rho_p_dbm)
        rho_p_dbm = -20.0;
    cfg.rho_p = resolve_normalized_snr(rho_p_lin, rho_p_dbm, noise_dbm, "rho_p");

    auto eps_lin = opt_dbl("eps_r");
    auto eps_dbm = opt_dbl("eps_r_dbm");
    if (eps_lin || eps_dbm)
        cfg.eps_r = resolve_normalized_snr(eps_lin, eps_dbm, noise_dbm, "eps_r");

    dbl_key(*geometry, "geometry.", "antenna_gain_dbi", out.geometry.antenna_gain_dbi);
    dbl_key(*geometry, "geometry.", "element_area", out.geometry.element_area);
    dbl_key(*geometry, "geometry.", "d_b2p", out.geometry.d_b2p);
    if (auto v = get(*geometry, "derive_beta"))
        out.beta_from_geometry = to_bool("geometry.derive_beta", *v);

    const auto beta = get(*system, "beta");
    if (beta && out.beta_from_geometry)
        throw ConfigError("system.beta and geometry.derive_beta are mutually exclusive");
    if (beta)
        cfg.beta = to_double("system.beta", *beta);
    if (out.beta_from_geometry)
    {
        const auto &g = out.geometry;
        if (!(g.antenna_gain_dbi > -1e9 && g.element_area > 0.0 && g.d_b2p > 0.0))
            throw ConfigError("geometry fields must be positive");
        cfg.beta = beta_from_geometry(g, cfg.gamma);
    }

    SimulationSettings &sim = out.simulation;
    if (auto v = get(*simulation, "sweep_var"))
        sim.sweep_var = trim(*v);
    if (auto v = get(*simulation, "values"))
        sim.values = parse_value_list(*v);
    if (auto v = get(*simulation, "trials"))
        sim.trials = to_count("simulation.trials", *v);
    if (auto v = get(*simulation, "profiles"))
        sim.profiles = to_count("simulation.profiles", *v);
    if (auto v = get(*simulation, "full_trials"))
        sim.full_trials = to_count("simulation.full_trials", *v);
    if (auto v = get(*simulation, "full_profiles"))
        sim.full_profiles = to_count("simulation.full_profiles", *v);
    if (auto v = get(*simulation, "seed"))
        sim.seed = to_u64("simulation.seed", *v);
    if (auto v = get(*simulation, "profile_seed"))
        sim.profile_seed = to_u64("simulation.profile_seed", *v);
    if (auto v = get(*simulation, "beam_mode"))
        sim.beam_mode = trim(*v);
    if (auto v = get(*simulation, "power_control"))
        sim.power_control = trim(*v);
    if (auto v = get(*simulation, "series"))
        sim.series = split_list(*v);
    if (auto v = get(*simulation, "approximation"))
        sim.approximation = trim(*v);
    if (auto v = get(*simulation, "workers"))
        sim.workers = static_cast<unsigned>(to_u64("simulation.workers", *v));
    if (auto v = get(*simulation, "channel_dump"))
        sim.channel_dump = trim(*v);
    if (auto v = get(*simulation, "estimation_dump"))
        sim.estimation_dump = trim(*v);
    if (auto v = get(*simulation, "allocation_out"))
        sim.allocation_out = trim(*v);
    if (auto v = get(*simulation, "rate_out"))
        sim.rate_out = trim(*v);

    out.system = validate_config(cfg);
    return out;
}

ConfigFile load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path);
    return parse_config(in);
}

} // namespace pmscast
