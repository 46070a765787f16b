// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_APP_DATASETS_HPP
#define AFESCALE_APP_DATASETS_HPP

#include <string>
#include <vector>

#include "afescale/link_strategies.hpp"

namespace afescale::app {

/// Parses the coded-system dataset format: a CSV with header
/// label,r_c,g_c_db,decoder_mw,bitrate_mbps and one record per code.
std::vector<link::CodedSystem> parse_codes_dataset(const std::string& text,
                                                   const std::string& origin);

/// The bundled coded-system records (also shipped as data/table2_codes.csv).
std::string bundled_codes_dataset();

/// Built-in configuration for a reproduction target
/// (fig2 | fig3 | fig5a | fig5b | table2).
std::string bundled_reproduce_config(const std::string& target);

} // namespace afescale::app

#endif
