#include "qbm/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qbm/error.hpp"

namespace qbm {

namespace {

constexpr std::array<std::pair<Product, std::string_view>, 6> kProducts{{
    {Product::Spectrum, "spectrum"},
    {Product::Population, "population"},
    {Product::Survival, "survival"},
    {Product::Position, "position"},
    {Product::Coefficients, "coefficients"},
    {Product::Report, "report"},
}};

const std::set<std::string_view> kKnownKeys{
    "N",          "A",          "Omega",         "beta",         "N_Omega0",    "coupling",
    "omegas",     "couplings",  "bath_occupations", "X0",        "P0",          "M",
    "t_start",    "t_step",     "n_steps",       "outputs",      "out_dir",     "fit_start",
    "fit_end",    "fit_samples", "plateau_start", "plateau_end",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

struct Entry {
    std::string value;
    int line = 0;
};

double to_double(const Entry& e, std::string_view key) {
    const std::string_view v = trim(e.value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
        throw Error(ErrorCode::InvalidValue,
                    at_line(e.line) + std::string(key) + " expects a number, got '" +
                        std::string(v) + "'");
    return out;
}

long long to_integer(const Entry& e, std::string_view key) {
    const std::string_view v = trim(e.value);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
        throw Error(ErrorCode::InvalidValue,
                    at_line(e.line) + std::string(key) + " expects an integer, got '" +
                        std::string(v) + "'");
    return out;
}

std::vector<std::string_view> split_list(std::string_view v) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = v.find(',');
        items.push_back(trim(v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return items;
}

std::vector<double> to_list(const Entry& e, std::string_view key) {
    std::vector<double> out;
    for (std::string_view item : split_list(e.value)) out.push_back(to_double({std::string(item), e.line}, key));
    return out;
}

void require(bool ok, const Entry& e, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidValue, at_line(e.line) + what);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_double(xs[i]);
    }
    return out;
}

}  // namespace

std::string_view product_name(Product p) noexcept {
    for (const auto& [prod, name] : kProducts)
        if (prod == p) return name;
    return "unknown";
}

std::optional<Product> parse_product(std::string_view name) noexcept {
    for (const auto& [prod, n] : kProducts)
        if (n == name) return prod;
    return std::nullopt;
}

std::vector<Product> all_products() {
    std::vector<Product> out;
    for (const auto& [prod, name] : kProducts) out.push_back(prod);
    return out;
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;

    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::ParseError, at_line(line_no) + "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorCode::ParseError, at_line(line_no) + "missing key");
        if (!kKnownKeys.contains(key))
            throw Error(ErrorCode::UnknownKey, at_line(line_no) + "unknown key '" + std::string(key) + "'");
        if (value.empty())
            throw Error(ErrorCode::ParseError, at_line(line_no) + "missing value for '" + std::string(key) + "'");
        if (entries.contains(key))
            throw Error(ErrorCode::ParseError, at_line(line_no) + "duplicate key '" + std::string(key) + "'");
        entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }

    auto find = [&](std::string_view key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    RunConfig cfg;
    ModelParams& model = cfg.model;

    if (const auto* e = find("A")) model.step = to_double(*e, "A");
    if (const auto* e = find("Omega")) model.omega0 = to_double(*e, "Omega");
    model.beta = 1.0 / model.omega0;
    if (const auto* e = find("beta")) model.beta = to_double(*e, "beta");
    if (const auto* e = find("N_Omega0")) cfg.n_omega0 = to_double(*e, "N_Omega0");

    const Entry* n_entry = find("N");
    if (n_entry) {
        const long long n = to_integer(*n_entry, "N");
        require(n >= 1 && n <= 1'000'000, *n_entry, "N must be in [1, 1e6]");
        model.n_bath = static_cast<int>(n);
    }

    std::string coupling = "lorentzian";
    const Entry* coupling_entry = find("coupling");
    if (coupling_entry) coupling = coupling_entry->value;
    const Entry* omegas = find("omegas");
    const Entry* couplings = find("couplings");
    if (coupling == "explicit") {
        const Entry& where = *coupling_entry;
        require(omegas && couplings, where, "coupling = explicit needs both 'omegas' and 'couplings'");
        ExplicitCoupling ex{to_list(*omegas, "omegas"), to_list(*couplings, "couplings")};
        require(ex.omegas.size() == ex.couplings.size(), *couplings,
                "'omegas' and 'couplings' must have the same length");
        if (n_entry)
            require(static_cast<std::size_t>(model.n_bath) == ex.omegas.size(), *n_entry,
                    "N does not match the explicit list length");
        model.n_bath = static_cast<int>(ex.omegas.size());
        model.coupling = std::move(ex);
    } else if (coupling == "lorentzian") {
        if (omegas) require(false, *omegas, "'omegas' is only valid with coupling = explicit");
        if (couplings) require(false, *couplings, "'couplings' is only valid with coupling = explicit");
    } else {
        require(false, *coupling_entry, "coupling must be 'lorentzian' or 'explicit'");
    }

    if (const auto* e = find("bath_occupations")) {
        cfg.bath_occupations = to_list(*e, "bath_occupations");
        require(cfg.bath_occupations->size() == static_cast<std::size_t>(model.n_bath), *e,
                "bath_occupations needs exactly N entries");
    }

    if (const auto* e = find("X0")) cfg.langevin.x0 = to_double(*e, "X0");
    if (const auto* e = find("P0")) cfg.langevin.p0 = to_double(*e, "P0");
    if (const auto* e = find("M")) cfg.langevin.mass = to_double(*e, "M");

    if (const auto* e = find("t_start")) cfg.grid.t_start = to_double(*e, "t_start");
    if (const auto* e = find("t_step")) cfg.grid.t_step = to_double(*e, "t_step");
    if (const auto* e = find("n_steps")) {
        const long long n = to_integer(*e, "n_steps");
        require(n >= 1 && n <= 100'000'000, *e, "n_steps must be in [1, 1e8]");
        cfg.grid.n_steps = static_cast<std::size_t>(n);
    }

    if (const auto* e = find("outputs")) {
        cfg.outputs.clear();
        for (std::string_view item : split_list(e->value)) {
            const auto p = parse_product(item);
            require(p.has_value(), *e, "unknown output '" + std::string(item) + "'");
            require(std::find(cfg.outputs.begin(), cfg.outputs.end(), *p) == cfg.outputs.end(), *e,
                    "output '" + std::string(item) + "' listed twice");
            cfg.outputs.push_back(*p);
        }
    }
    if (const auto* e = find("out_dir")) cfg.out_dir = e->value;

    if (const auto* e = find("fit_start")) cfg.fit.begin = to_double(*e, "fit_start");
    if (const auto* e = find("fit_end")) cfg.fit.end = to_double(*e, "fit_end");
    if (const auto* e = find("fit_samples")) {
        const long long n = to_integer(*e, "fit_samples");
        require(n >= 16 && n <= 10'000'000, *e, "fit_samples must be in [16, 1e7]");
        cfg.fit.samples = static_cast<std::size_t>(n);
    }
    if (const auto* e = find("plateau_start")) cfg.plateau_start = to_double(*e, "plateau_start");
    if (const auto* e = find("plateau_end")) cfg.plateau_end = to_double(*e, "plateau_end");

    validate(cfg);
    return cfg;
}

void validate(const RunConfig& config) {
    try {
        validate(config.model);
        validate(config.grid);
        validate(config.langevin);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidParams) throw Error(ErrorCode::InvalidValue, e.what());
        throw;
    }
    if (config.outputs.empty()) throw Error(ErrorCode::InvalidValue, "no outputs requested");
    if (!(config.n_omega0 >= 0.0) || !std::isfinite(config.n_omega0))
        throw Error(ErrorCode::InvalidValue, "N_Omega0 must be finite and >= 0");
    if (config.bath_occupations) {
        InitialOccupations occ{config.n_omega0, *config.bath_occupations};
        validate(occ, static_cast<std::size_t>(config.model.n_bath));
    }
    if (!(config.fit.end > config.fit.begin) || !(config.fit.begin >= 0.0))
        throw Error(ErrorCode::InvalidValue, "fit window must satisfy 0 <= fit_start < fit_end");
    if (!(config.plateau_end > config.plateau_start) || !(config.plateau_start >= 0.0))
        throw Error(ErrorCode::InvalidValue,
                    "plateau window must satisfy 0 <= plateau_start < plateau_end");
    if (config.out_dir.empty()) throw Error(ErrorCode::InvalidValue, "out_dir is empty");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    const auto& m = c.model;
    out << "N = " << m.n_bath << '\n';
    out << "A = " << format_double(m.step) << '\n';
    out << "Omega = " << format_double(m.omega0) << '\n';
    out << "beta = " << format_double(m.beta) << '\n';
    out << "N_Omega0 = " << format_double(c.n_omega0) << '\n';
    if (const auto* ex = std::get_if<ExplicitCoupling>(&m.coupling)) {
        out << "coupling = explicit\n";
        out << "omegas = " << format_list(ex->omegas) << '\n';
        out << "couplings = " << format_list(ex->couplings) << '\n';
    } else {
        out << "coupling = lorentzian\n";
    }
    if (c.bath_occupations) out << "bath_occupations = " << format_list(*c.bath_occupations) << '\n';
    out << "X0 = " << format_double(c.langevin.x0) << '\n';
    out << "P0 = " << format_double(c.langevin.p0) << '\n';
    out << "M = " << format_double(c.langevin.mass) << '\n';
    out << "t_start = " << format_double(c.grid.t_start) << '\n';
    out << "t_step = " << format_double(c.grid.t_step) << '\n';
    out << "n_steps = " << c.grid.n_steps << '\n';
    out << "outputs = ";
    for (std::size_t i = 0; i < c.outputs.size(); ++i)
        out << (i ? ", " : "") << product_name(c.outputs[i]);
    out << '\n';
    out << "out_dir = " << c.out_dir << '\n';
    out << "fit_start = " << format_double(c.fit.begin) << '\n';
    out << "fit_end = " << format_double(c.fit.end) << '\n';
    out << "fit_samples = " << c.fit.samples << '\n';
    out << "plateau_start = " << format_double(c.plateau_start) << '\n';
    out << "plateau_end = " << format_double(c.plateau_end) << '\n';
    return out.str();
}

}  // namespace qbm
