#include "irl_lab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irl_lab/errors.hpp"
#include "irl_lab/lp.hpp"

namespace irl_lab {

double theta_from_beta_eps(int n, double beta, double eps) {
    if (n < 3) throw DimensionMismatchError("theta_from_beta_eps: n must be >= 3");
    if (beta <= 0.0 || eps <= 0.0) throw Error("theta_from_beta_eps: beta and eps must be positive");
    const double nn = n;
    const double rhs = nn * (nn - 1.0) * (nn - 2.0) * beta * beta /
                       (2.0 * eps * eps + 2.0 * nn * (nn - 2.0) * (nn - 2.0) * beta * beta);
    if (rhs > 1.0)
        throw InfeasibleSeparationError("theta_from_beta_eps: eps too small for requested beta");
    return 2.0 * std::asin(std::sqrt(rhs));
}

std::pair<double, double> eps_bounds(int n, double beta) {
    if (n < 3) throw DimensionMismatchError("eps_bounds: n must be >= 3");
    if (beta <= 0.0) throw Error("eps_bounds: beta must be positive");
    const double lower = std::sqrt(static_cast<double>(n - 2)) * beta;
    const double upper = 1.0 / std::sqrt(static_cast<double>(n) * (n - 1));
    if (lower > upper)
        throw BetaTooLargeError("eps_bounds: sqrt(n-2)*beta exceeds the simplex inradius");
    return {lower, upper};
}

double default_eps(int n, double beta) {
    const auto [lower, upper] = eps_bounds(n, beta);
    const double preferred = 1.0 / std::sqrt(2.0 * n * (n - 1));
    return std::max(lower, std::min(preferred, upper));
}

EnsembleConfig make_config(int n, double gamma, double beta, std::optional<double> eps,
                           CodeKind kind) {
    if (n < 3) throw DimensionMismatchError("make_config: n must be >= 3");
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error("make_config: gamma must lie in (0,1)");
    if (kind == CodeKind::Other) throw UnsupportedCodeError("make_config: unsupported code kind");
    if (kind == CodeKind::Icosahedron && n != 4)
        throw DimensionMismatchError("make_config: icosahedron ensembles require n = 4");
    EnsembleConfig cfg;
    cfg.n = n;
    cfg.gamma = gamma;
    cfg.beta = beta;
    cfg.code_kind = kind;
    const auto [lower, upper] = eps_bounds(n, beta);
    cfg.eps = eps ? *eps : default_eps(n, beta);
    if (cfg.eps < lower - 1e-12 || cfg.eps > upper + 1e-12)
        throw Error("make_config: eps outside [sqrt(n-2) beta, 1/sqrt(n(n-1))]");
    cfg.theta = theta_from_beta_eps(n, beta, cfg.eps);
    return cfg;
}

HardInstance build_instance(const EnsembleConfig& cfg, const SphericalCode& code,
                            const Facet& facet, const RotationMap& rot, int facet_index) {
    const int n = cfg.n;
    if (code.dim != n - 1) throw DimensionMismatchError("build_instance: code dimension mismatch");
    if (facet.normals.empty())
        throw Error("build_instance: facet has no normals attached");
    if (std::fabs(facet.eps - cfg.eps) > 1e-12)
        throw Error("build_instance: facet normals built with a different eps");

    Mat uniform(n, n, 1.0 / n);
    Mat p2(n, n);
    for (int i = 0; i < n; ++i) {
        const Vec& p = facet.normals[i < n - 1 ? i : 0];  // final row reuses p_1
        const Vec lifted = lift_to_hyperplane(rot, p);
        for (int j = 0; j < n; ++j) {
            double v = 1.0 / n - lifted[j];
            if (v < 0.0) {
                if (v < -1e-12)
                    throw InvalidRowError("build_instance: row " + std::to_string(i) +
                                          " leaves the simplex (eps above inradius?)");
                v = 0.0;
            }
            p2(i, j) = v;
        }
    }

    const Vec lifted_centroid = lift_to_hyperplane(rot, facet.unit_centroid);
    Vec reward(n);
    for (int i = 0; i < n; ++i) {
        double s = lifted_centroid[i];
        for (int j = 0; j < n; ++j) s -= cfg.gamma * uniform(i, j) * lifted_centroid[j];
        reward[i] = s;
    }
    reward = normalize_l1(reward);

    HardInstance out;
    out.instance.n = n;
    out.instance.k = 2;
    out.instance.gamma = cfg.gamma;
    out.instance.transitions = {validate_stochastic(uniform), validate_stochastic(p2)};
    out.instance.certified_reward = reward;
    out.instance.certified_beta = cfg.beta;
    out.reward = std::move(reward);
    out.facet_index = facet_index;
    out.config = cfg;
    return out;
}

HardInstance build_instance(const EnsembleConfig& cfg, const SphericalCode& code,
                            const Facet& facet) {
    return build_instance(cfg, code, facet, rotation_to_hyperplane(cfg.n), 0);
}

std::vector<HardInstance> build_ensemble(const EnsembleConfig& cfg) {
    const SphericalCode code =
        cfg.code_kind == CodeKind::Simplex ? simplex_code(cfg.n - 1) : icosahedron_code();
    const RotationMap rot = rotation_to_hyperplane(cfg.n);
    std::vector<HardInstance> out;
    const std::vector<Facet> facets = facets_of_code(code);
    out.reserve(facets.size());
    for (size_t f = 0; f < facets.size(); ++f) {
        const Facet facet = with_normals(code, facets[f], cfg.eps);
        out.push_back(build_instance(cfg, code, facet, rot, static_cast<int>(f)));
    }
    return out;
}

VerificationReport verify_ensemble(const std::vector<HardInstance>& ensemble) {
    VerificationReport rep;
    if (ensemble.empty()) return rep;
    rep.beta = ensemble[0].config.beta;
    const double beta = rep.beta;
    rep.own_ok = rep.cross_ok = rep.norms_ok = true;
    rep.worst_cross_margin = -kInf;
    for (size_t i = 0; i < ensemble.size(); ++i) {
        const double margin = separability_margin(ensemble[i].instance, ensemble[i].reward);
        const double nrm = norm1(ensemble[i].reward);
        rep.own_margins.push_back(margin);
        rep.reward_norms.push_back(nrm);
        if (margin < beta - 1e-9) {
            rep.own_ok = false;
            rep.failures.push_back({static_cast<int>(i), static_cast<int>(i), margin,
                                    "own-reward margin below beta"});
        }
        if (std::fabs(nrm - 1.0) > 1e-9) {
            rep.norms_ok = false;
            rep.failures.push_back({static_cast<int>(i), static_cast<int>(i), nrm,
                                    "reward 1-norm differs from 1"});
        }
    }
    for (size_t i = 0; i < ensemble.size(); ++i)
        for (size_t j = 0; j < ensemble.size(); ++j) {
            if (i == j) continue;
            const double cross = separability_margin(ensemble[i].instance, ensemble[j].reward);
            rep.worst_cross_margin = std::max(rep.worst_cross_margin, cross);
            if (cross >= 0.0) {
                rep.cross_ok = false;
                rep.failures.push_back({static_cast<int>(i), static_cast<int>(j), cross,
                                        "foreign reward keeps a_1 optimal"});
            }
        }
    return rep;
}

}  // namespace irl_lab
