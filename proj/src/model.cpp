#include "qbm/model.hpp"

#include <cmath>
#include <string>

#include "qbm/error.hpp"

namespace qbm {

std::vector<double> InitialOccupations::as_levels() const {
    std::vector<double> levels;
    levels.reserve(n_bath_modes.size() + 1);
    levels.push_back(n_omega0);
    levels.insert(levels.end(), n_bath_modes.begin(), n_bath_modes.end());
    return levels;
}

void validate(const ModelParams& params) {
    if (params.n_bath < 1) throw Error(ErrorCode::InvalidParams, "n_bath must be >= 1");
    if (!(params.step > 0.0) || !std::isfinite(params.step))
        throw Error(ErrorCode::InvalidParams, "step must be > 0");
    if (!(params.omega0 > 0.0) || !std::isfinite(params.omega0))
        throw Error(ErrorCode::InvalidParams, "omega0 must be > 0");
    if (!(params.beta > 0.0) || std::isnan(params.beta))
        throw Error(ErrorCode::InvalidParams, "beta must be > 0");
    if (const auto* ex = std::get_if<ExplicitCoupling>(&params.coupling)) {
        const auto n = static_cast<std::size_t>(params.n_bath);
        if (ex->omegas.size() != n || ex->couplings.size() != n)
            throw Error(ErrorCode::InvalidParams,
                        "explicit bath lists must both have n_bath = " + std::to_string(n) +
                            " entries");
    }
}

void validate(const DiscretizedBath& bath) {
    if (bath.omegas.empty()) throw Error(ErrorCode::InvalidParams, "bath is empty");
    if (bath.couplings.size() != bath.omegas.size())
        throw Error(ErrorCode::InvalidParams, "frequency and coupling lists differ in length");
    for (std::size_t n = 0; n < bath.size(); ++n) {
        if (!std::isfinite(bath.omegas[n]) || !std::isfinite(bath.couplings[n]))
            throw Error(ErrorCode::InvalidParams, "non-finite bath entry at n = " +
                                                      std::to_string(n + 1));
        if (bath.couplings[n] == 0.0)
            throw Error(ErrorCode::ZeroCoupling, "g_" + std::to_string(n + 1) + " = 0");
        if (n > 0 && !(bath.omegas[n] > bath.omegas[n - 1]))
            throw Error(ErrorCode::NonMonotonicGrid,
                        "omega_" + std::to_string(n + 1) + " <= omega_" + std::to_string(n));
    }
}

DiscretizedBath build_bath(const ModelParams& params) {
    validate(params);

    DiscretizedBath bath;
    if (const auto* ex = std::get_if<ExplicitCoupling>(&params.coupling)) {
        bath.omegas = ex->omegas;
        bath.couplings = ex->couplings;
        validate(bath);
        return bath;
    }

    const int n_bath = params.n_bath;
    if (n_bath < 3)
        throw Error(ErrorCode::DegenerateWidth,
                    "lorentzian coupling needs N >= 3 (a = A(N-2)/2 vanishes otherwise)");

    const double a = params.step * (n_bath - 2) / 2.0;
    const double a2 = a * a;
    bath.width = a;
    bath.step = params.step;
    bath.omegas.resize(static_cast<std::size_t>(n_bath));
    bath.couplings.resize(static_cast<std::size_t>(n_bath));
    for (int n = 1; n <= n_bath; ++n) {
        const double omega = params.omega0 + params.step * (n - n_bath / 2.0);
        const double detuning = omega - params.omega0;
        bath.omegas[n - 1] = omega;
        bath.couplings[n - 1] = params.step * a2 / (a2 + detuning * detuning);
    }
    validate(bath);
    return bath;
}

double bose_einstein(double omega, double beta) {
    return 1.0 / std::expm1(beta * omega);
}

InitialOccupations thermal_occupations(const DiscretizedBath& bath, double beta,
                                       double n_omega0) {
    if (!(beta > 0.0)) throw Error(ErrorCode::InvalidParams, "beta must be > 0");
    InitialOccupations occ;
    occ.n_omega0 = n_omega0;
    occ.n_bath_modes.reserve(bath.size());
    for (std::size_t n = 0; n < bath.size(); ++n) {
        const double omega = bath.omegas[n];
        if (!(omega > 0.0))
            throw Error(ErrorCode::NonPositiveFrequency,
                        "omega_" + std::to_string(n + 1) + " = " + std::to_string(omega) +
                            " has no thermal occupation");
        occ.n_bath_modes.push_back(bose_einstein(omega, beta));
    }
    validate(occ, bath.size());
    return occ;
}

void validate(const InitialOccupations& occ, std::size_t n_bath) {
    if (occ.n_bath_modes.size() != n_bath)
        throw Error(ErrorCode::InvalidValue, "expected " + std::to_string(n_bath) +
                                                 " bath occupations, got " +
                                                 std::to_string(occ.n_bath_modes.size()));
    auto ok = [](double x) { return std::isfinite(x) && x >= 0.0; };
    if (!ok(occ.n_omega0)) throw Error(ErrorCode::InvalidValue, "N_Omega(0) must be finite and >= 0");
    for (double x : occ.n_bath_modes)
        if (!ok(x)) throw Error(ErrorCode::InvalidValue, "bath occupations must be finite and >= 0");
}

}  // namespace qbm
