#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irl_lab/geometry.hpp"
#include "irl_lab/mdp.hpp"

namespace irl_lab {

// Parameters of one hard-instance ensemble. theta is derived: the minimum
// code angle required for the (beta, eps) pair to certify beta-strict
// separability. For the simplex code at eps = sqrt(n-2)*beta this equals the
// code's own angle arccos(-1/(n-1)).
struct EnsembleConfig {
    int n = 0;
    double gamma = 0.1;
    double beta = 0.0;
    double eps = 0.0;
    double theta = 0.0;
    CodeKind code_kind = CodeKind::Simplex;
};

// Required code angle: sin^2(theta/2) = n(n-1)(n-2) b^2 / (2 e^2 + 2 n(n-2)^2 b^2).
double theta_from_beta_eps(int n, double beta, double eps);

// (sqrt(n-2) beta, 1/sqrt(n(n-1))): separability lower bound and simplex
// inradius upper bound on eps. Throws BetaTooLargeError when empty.
std::pair<double, double> eps_bounds(int n, double beta);

// Default radius min(1/sqrt(2n(n-1)), inradius) = 1/sqrt(2n(n-1)).
double default_eps(int n, double beta);

// Validates ranges and the eps window, fills theta.
EnsembleConfig make_config(int n, double gamma, double beta,
                           std::optional<double> eps = std::nullopt,
                           CodeKind kind = CodeKind::Simplex);

// One constructed hard pair: a 2-action instance (action 0 is the uniform
// matrix) plus the unit-1-norm reward built from the facet's unit centroid.
struct HardInstance {
    IrlInstance instance;
    Vec reward;
    int facet_index = 0;
    EnsembleConfig config;
};

// Assembles P_{a_2} rows from the facet's leave-one-out normals (row j is
// uniform minus the lifted normal p_j; the final row reuses p_1) and the
// reward from the lifted unit centroid. The facet must carry normals of
// norm cfg.eps. Throws InvalidRowError if a row leaves the simplex by more
// than 1e-12.
HardInstance build_instance(const EnsembleConfig& cfg, const SphericalCode& code,
                            const Facet& facet, const RotationMap& rot, int facet_index = 0);
HardInstance build_instance(const EnsembleConfig& cfg, const SphericalCode& code,
                            const Facet& facet);

// One instance per facet: n for the simplex, 20 for the icosahedron (n = 4).
std::vector<HardInstance> build_ensemble(const EnsembleConfig& cfg);

struct PairFailure {
    int i = 0, j = 0;
    double value = 0.0;
    std::string what;
};

// Certification report: (a) own-reward margins reach beta, (b) each reward
// fails Bellman optimality on every other instance, (c) rewards have unit
// 1-norm.
struct VerificationReport {
    double beta = 0.0;
    std::vector<double> own_margins;
    std::vector<double> reward_norms;
    double worst_cross_margin = 0.0;   // max over pairs of the pair's min margin
    bool own_ok = false;
    bool cross_ok = false;
    bool norms_ok = false;
    std::vector<PairFailure> failures;

    bool pass() const { return own_ok && cross_ok && norms_ok; }
};

VerificationReport verify_ensemble(const std::vector<HardInstance>& ensemble);

}  // namespace irl_lab
