#pragma once

// Run configuration: a line-oriented `key = value` document with `#`
// comments. Every key is optional; omitted keys take the defaults below
// (N = 100, A = 0.018, Omega = 1, beta = 1/Omega, ...).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbm/langevin.hpp"
#include "qbm/model.hpp"
#include "qbm/timegrid.hpp"

namespace qbm {

enum class Product { Spectrum, Population, Survival, Position, Coefficients, Report };

std::string_view product_name(Product p) noexcept;
std::optional<Product> parse_product(std::string_view name) noexcept;
std::vector<Product> all_products();

struct RunConfig {
    ModelParams model;
    double n_omega0 = 1.0;
    // Replaces the thermal bath occupations when present.
    std::optional<std::vector<double>> bath_occupations;
    TimeGrid grid;
    LangevinInput langevin;
    std::vector<Product> outputs = all_products();
    std::string out_dir = "qbm_out";

    FitWindow fit{1.0, 20.0, 400};
    double plateau_start = 100.0;
    double plateau_end = 300.0;

    bool operator==(const RunConfig&) const = default;
};

// Throws ParseError / UnknownKey / InvalidValue, each message carrying the
// offending line number where one exists.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

void validate(const RunConfig& config);

}  // namespace qbm
