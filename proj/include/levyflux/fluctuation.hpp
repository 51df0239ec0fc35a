#pragma once

#include "levyflux/model.hpp"

#include <functional>

namespace levyflux {

// Query for the joint laws of (sup X_t, X_t) and (inf X_t, X_t): x is the
// barrier level, z the terminal value.
struct JointLawQuery {
    enum class Side { supremum, infimum };
    double t = 1.0;
    double x = 1.0;
    double z = 0.0;
    Side side = Side::supremum;
    void validate() const;
};

// Candidate entrance-law density (t, x) -> value, supplied by the caller.
using EntranceCandidate = std::function<double(double, double)>;

struct EntranceResidual {
    double residual;   // lhs - rhs; ~0 iff the candidate solves the equation
    double lhs;
    double rhs;
    double fd_step;    // step used for the x-derivative on the rhs
};

// Probabilities are clamped to [0,1] after quadrature; deviations beyond 1e-6
// are counted as warnings.
double clamp_probability(double p);
long clamp_warning_count();
void reset_clamp_warnings();

// density of the first passage time T_x = inf{s : X_s = -x}: (x/t) p_t(-x)
double fpt_density(const SpectrallyPositiveModel&, double x, double t);

// P(inf_{s<=t} X_s < -x) = P(T_x <= t), two routes
double inf_tail(const SpectrallyPositiveModel&, double x, double t);
double inf_tail_alt(const SpectrallyPositiveModel&, double x, double t);

// P(sup_{s<=t} X_s > x); at x = 0 returns the regularity dichotomy value
double sup_tail(const SpectrallyPositiveModel&, double x, double t);

// joint density in z of {sup_t > x, X_t in dz} resp. {inf_t < -x, X_t in dz}
double sup_joint_density(const SpectrallyPositiveModel&, const JointLawQuery&);
double inf_joint_density(const SpectrallyPositiveModel&, const JointLawQuery&);

// Atom of sup X_t at 0 for bounded-variation models with drift -c.
// sup_atom_density is the z-density of {sup_t = 0, X_t in dz}, z < 0; the
// total equals -E[X_t 1{X_t<=0}]/(ct).  Zero (with has_sup_atom false) for
// unbounded variation.
bool has_sup_atom(const SpectrallyPositiveModel&);
double sup_atom_density(const SpectrallyPositiveModel&, double t, double z);
double sup_atom_total(const SpectrallyPositiveModel&, double t);

// E e^{-lam sup_t} and E e^{lam inf_t}
double sup_laplace(const SpectrallyPositiveModel&, double lam, double t);
double inf_laplace(const SpectrallyPositiveModel&, double lam, double t);

// E[(sup_t)^n] and E[(-inf_t)^n]
double sup_moment(const SpectrallyPositiveModel&, int n, double t);
double inf_moment(const SpectrallyPositiveModel&, int n, double t);

// Phi(lam) = int_0^inf (1-e^{-lam t}) t^{-1} p_t(0) dt and
// phi(lam,z) = int_0^inf e^{-lam t} t^{-1} p_t(z) dt, z < 0.
double big_phi(const SpectrallyPositiveModel&, double lam);
double phi_lambda_z(const SpectrallyPositiveModel&, double lam, double z);
double laplace_density_at_zero(const SpectrallyPositiveModel&, double lam);

// Residual of the multiplicative identity phi(lam,z) = phi(0,z) e^{z E(lam)}.
// E(lam) = Phi(lam) for unbounded variation; bounded variation adds lam/c
// (the supremum atom contributes the extra drift term; equivalently
// E(lam) = phi^{-1}(lam) - rho).
double phi_identity_residual(const SpectrallyPositiveModel&, double lam, double z);

// Residual of the ODE form d(phi)/d(lam) = z phi (L[p.(0)](lam) + 1_BV/c),
// with the lam-derivative taken by central finite difference.
double phi_ode_residual(const SpectrallyPositiveModel&, double lam, double z);

// lhs - rhs of the entrance-law equation for a caller-supplied candidate
// q*_s(x); rhs differentiates the double quadrature in x by central
// difference with step max(1e-4, 1e-4 x).
EntranceResidual entrance_law_residual(const SpectrallyPositiveModel&, const EntranceCandidate& qstar,
                                       double t, double x, double z);

// int_0^t q*_s(x) q_{t-s}(x-z) ds for supplied candidates; consistency
// evaluator against the differentiated joint law.
double joint_law_from_entrance(const SpectrallyPositiveModel&, const EntranceCandidate& q,
                               const EntranceCandidate& qstar, double t, double x, double z);

} // namespace levyflux
