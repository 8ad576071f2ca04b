#pragma once

#include <optional>
#include <vector>

#include "gpdelta/dense.hpp"
#include "gpdelta/grid.hpp"
#include "gpdelta/tridiagonal.hpp"

namespace gpdelta {

enum class LinearizedOp { LMinus, LPlus };

// L_- = H_gamma - sech^2(x/sqrt2), L_+ = H_gamma + 2 - 3 sech^2(x/sqrt2) on
// the interior nodes (homogeneous Dirichlet at +-L).
struct SchroedingerMatrix {
    GridSpec grid;
    double gamma;
    LinearizedOp which;
    DeltaOperator base;
    RVec potential;     // interior nodes
    SymTridiag matrix;  // interior nodes
};

SchroedingerMatrix build_lpm(const GridSpec& g, double gamma, LinearizedOp which);

// Eigenvalues strictly below edge, ascending; EigenCountExceeded past k_max.
RVec eigs_below(const SchroedingerMatrix& m, double edge, int k_max = 64);

struct EigenPair {
    double value;
    Field vector;  // unit L2 norm, zero on the boundary nodes
};
std::vector<EigenPair> eigenpairs_below(const SchroedingerMatrix& m, double edge, int k_max = 64);

// Rayleigh quotient <Au, u>/<u, u> using interior values of a real field.
double rayleigh_quotient(const SchroedingerMatrix& m, const Field& u);

struct LambdaPoint {
    double gamma;
    double lambda;   // lowest eigenvalue of L_+^gamma
    bool absorbed;   // lambda > 2 - 1e-3: lost to the continuum edge
};
std::vector<LambdaPoint> lambda_curve(const std::vector<double>& gammas, const GridSpec& g);

struct UnstablePair {
    double lambda;  // sqrt(-mu_min)
    Field u;        // L_+ u = lambda v
    Field v;        // -L_- v = lambda u
    double residual;  // (||L_+u - lambda v|| + ||L_-v + lambda u||) / (||u|| + ||v||)
};

struct SpectralReport {
    double gamma = 0.0;
    RVec lminus_eigs;  // below 0
    RVec lplus_eigs;   // below 2
    int n_neg_minus = 0;
    int n_neg_plus = 0;
    std::optional<double> mu_min;
    std::optional<double> growth_rate;
    std::optional<double> lambda_asymmetry;  // max|Lambda - Lambda^T| / max|Lambda| before symmetrising
    std::optional<UnstablePair> pair;
};

// Eigenvalue tables of L_- and L_+; Lambda is not formed.
SpectralReport spectral_report(double gamma, const GridSpec& g);

// Dense Lambda = S L_- S with S = L_+^{1/2}. Throws NumericalError when L_+
// is not positive on the grid (the message carries its lowest eigenvalue).
DenseMatrix assemble_lambda(double gamma, const GridSpec& g, double* asymmetry = nullptr);

// spectral_report plus mu_min, growth rate and the reconstructed (u, v).
SpectralReport instability_eigenvalue(double gamma, const GridSpec& g);

// eta = u - i v (the growing solution of the linearised flow), linearly
// interpolated onto target (which must cover the same half-length or less)
// and normalised to unit L2 norm; boundary nodes set to 0.
Field growing_mode_direction(const UnstablePair& pair, const GridSpec& target);

}  // namespace gpdelta
