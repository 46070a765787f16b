// SPDX-License-Identifier: Apache-2.0
#include "afescale/app/datasets.hpp"

#include <sstream>

#include "afescale/errors.hpp"
#include "afescale/numerics.hpp"

namespace afescale::app {

namespace {

// Minimal CSV line splitter with RFC-4180 quoting.
std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"' && cell.empty()) {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    if (quoted) throw config_error(where, "unterminated quote in dataset row");
    cells.push_back(cell);
    return cells;
}

double parse_cell_number(const std::string& cell, const std::string& where) {
    try {
        std::size_t used = 0;
        const double value = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return value;
    } catch (const std::exception&) {
        throw config_error(where, "expected a number, got '" + cell + "'");
    }
}

} // namespace

std::vector<link::CodedSystem> parse_codes_dataset(const std::string& text,
                                                   const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::vector<link::CodedSystem> codes;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = origin + ":" + std::to_string(line_no);
        const auto cells = split_csv_line(line, where);
        if (!saw_header) {
            if (cells != std::vector<std::string>{"label", "r_c", "g_c_db", "decoder_mw",
                                                  "bitrate_mbps"}) {
                throw config_error(where,
                                   "expected header label,r_c,g_c_db,decoder_mw,bitrate_mbps");
            }
            saw_header = true;
            continue;
        }
        if (cells.size() != 5) throw config_error(where, "expected 5 columns");
        link::CodedSystem code;
        code.label = cells[0];
        code.code_rate = parse_cell_number(cells[1], where);
        code.coding_gain = numerics::db_to_linear(parse_cell_number(cells[2], where));
        code.decoder_power_w = 1e-3 * parse_cell_number(cells[3], where);
        code.info_bitrate_bps = 1e6 * parse_cell_number(cells[4], where);
        try {
            code.validate();
        } catch (const std::domain_error& e) {
            throw config_error(where, e.what());
        }
        codes.push_back(std::move(code));
    }
    if (!saw_header) throw config_error(origin, "dataset is empty");
    return codes;
}

std::string bundled_codes_dataset() {
    return "label,r_c,g_c_db,decoder_mw,bitrate_mbps\n"
           "\"convolutional (7,5)\",0.5,3.1,0.56,13.35\n"
           "turbo N=6144,0.33333333333333333,6.1,8.3,8.89\n";
}

namespace {

const char* kTable2Config = R"json({
  "codes": {
    "uncoded_afe_mw": 35.0,
    "uncoded_bitrate_mbps": 26.7,
    "mu_db": "inf",
    "entries": [
      {"label": "convolutional (7,5)", "r_c": 0.5, "g_c_db": 3.1,
       "decoder_mw": 0.56, "bitrate_mbps": 13.35},
      {"label": "turbo N=6144", "r_c": 0.33333333333333333, "g_c_db": 6.1,
       "decoder_mw": 8.3, "bitrate_mbps": 8.89}
    ]
  }
})json";

const char* kFig2Config = R"json({
  "qam": {
    "m_1": 64, "p_e_1": 1e-6, "rho_1": 6.0,
    "m_2_grid": [64, 16, 4],
    "p_e_2_grid": [1e-6, 3.1623e-6, 1e-5, 3.1623e-5, 1e-4, 3.1623e-4,
                   1e-3, 3.1623e-3, 1e-2, 3.1623e-2, 1e-1],
    "mu_db_grid": ["inf", 6.0, 3.0]
  }
})json";

const char* kFig3Config = R"json({
  "codes": {
    "uncoded_afe_mw": 35.0,
    "uncoded_bitrate_mbps": 26.7,
    "mu_db": "inf",
    "entries": [
      {"label": "convolutional (7,5)", "r_c": 0.5, "g_c_db": 3.1,
       "decoder_mw": 0.56, "bitrate_mbps": 13.35},
      {"label": "turbo N=6144", "r_c": 0.33333333333333333, "g_c_db": 6.1,
       "decoder_mw": 8.3, "bitrate_mbps": 8.89}
    ],
    "sweep": {
      "r_c_values": [1.0, 0.5, 0.33333333333333333],
      "g_c_db_min": 0.0, "g_c_db_max": 10.0, "g_c_db_step": 0.25,
      "mu_db_grid": ["inf", 6.0, 3.0]
    }
  }
})json";

const char* kFig5aConfig = R"json({
  "fading": {
    "omega_grid": [0.001, 0.01, 0.1, 0.5],
    "sndr_min_db": 20.0,
    "alpha_im3": 0.1,
    "beta_dbm": -60.0,
    "mu_db_grid": [0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30],
    "policies": ["continuous", "two_step"]
  },
  "monte_carlo": {"samples": 200000, "seed": 20260808, "confidence": 0.99, "workers": 1}
})json";

const char* kFig5bConfig = R"json({
  "interference": {
    "delta_grid": [0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,
                   0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0],
    "mu_db_grid": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17,
                   18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30],
    "baseline_afe_mw": 35.0,
    "sensor_mw": 10.0
  }
})json";

} // namespace

std::string bundled_reproduce_config(const std::string& target) {
    if (target == "table2") return kTable2Config;
    if (target == "fig2") return kFig2Config;
    if (target == "fig3") return kFig3Config;
    if (target == "fig5a") return kFig5aConfig;
    if (target == "fig5b") return kFig5bConfig;
    throw config_error("reproduce", "unknown target '" + target +
                                        "' (expected fig2|fig3|fig5a|fig5b|table2)");
}

} // namespace afescale::app
