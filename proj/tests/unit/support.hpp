#pragma once

#include <string>

#include "ecoroute/config_io.hpp"

inline std::string reference_config_path() { return std::string(ECOROUTE_CONFIG_DIR) + "/reference.json"; }

inline const ecoroute::SystemConfig& reference_config() {
    static const ecoroute::SystemConfig cfg = ecoroute::load_config(reference_config_path());
    return cfg;
}
