#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cle/kappa.hpp"
#include "cle/rng.hpp"

namespace cle {

using cplx = std::complex<double>;

/// Phi(u, z) = z (u + z)/(u - z).
cplx phi_field(cplx u, cplx z);

struct DrivingState {
    double theta = 0.0;  ///< driving angle, U_t = e^{i theta}
    double phi = 0.0;    ///< force-point angle
    double t = 0.0;
    double psi() const { return theta - phi; }
};

/// Start with psi = psi0 and phi = 0.
DrivingState initial_state(double psi0);

struct StepParams {
    double boundary_scale = 1.0;  ///< d0 in dt_eff = dt min(1, (d/d0)^2)
    int max_halvings = 48;
};

/// One adaptive Euler-Maruyama step of size at most dt; overshoots past the
/// boundary are split along a Brownian bridge.
DrivingState step_driving(const DrivingState& state, const KappaContext& ctx, double dt, Engine& eng,
                          const StepParams& params = {});

/// Drift of theta and phi at a state, angular form.
struct AngularDrift {
    double theta;
    double phi;
};
AngularDrift angular_drift(const KappaContext& ctx, double theta, double phi);

struct DriftCheck {
    double max_phi_error;    ///< Phi(e^{i theta}, e^{i phi})/(i e^{i phi}) vs cot((phi - theta)/2)
    double max_theta_error;  ///< complex drift of U vs i U (rho/2) cot(psi/2) - (kappa/2) U
    int states;
};

/// Relative discrepancies of the angular reductions at random states.
DriftCheck drift_identity_check(const KappaContext& ctx, int states, std::uint64_t seed);

struct FlowState {
    double t = 0.0;
    std::vector<cplx> points;  ///< g_t(z_j)
    std::vector<bool> swallowed;
    std::vector<double> swallow_time;
    double gprime_estimate = 1.0;  ///< g_t'(0) from the Cauchy stencil
    double max_boundary_drift = 0.0;  ///< max | |g_t(z)| - 1 | over unswallowed boundary points
};

struct FlowParams {
    double stencil_radius = 1e-4;
    int stencil_points = 8;
    double swallow_tol = 1e-3;
    double substep_factor = 0.005;  ///< RK4 substep h <= factor |g - U|^2
};

/// RK4 flow of dg = Phi(U_t, g) dt along the driving angles theta_k at times k dt
/// (linear interpolation between samples).
FlowState evolve_flow(const std::vector<double>& theta_path, double dt, const std::vector<cplx>& points,
                      const FlowParams& params = {});

/// Driving path sampled on a uniform grid with the angular SDE.
std::vector<double> sample_driving_path(const KappaContext& ctx, double psi0, double t_end, double dt,
                                        std::uint64_t seed);

enum class Side { Lower = 0, Upper = 1, Censored = 2 };

struct FirstPassageSample {
    double tau;
    Side side;
};

struct PassageParams {
    double dt = 5e-3;
    double delta_abs = 1e-5;
    double t_max = 100.0;
    double boundary_scale = 1.0;
};

/// Brownian increments on dyadic intervals of a root step dt0, generated top-down
/// by bridge refinement so every resolution sees the same path.
class BrownianTree {
public:
    BrownianTree(std::uint64_t key, double dt0);
    /// Increment over [j h, (j+1) h), h = dt0 2^{-level}.
    double increment(int level, std::uint64_t index);
    double root_step() const { return dt0_; }

private:
    double normal(int level, std::uint64_t index);
    std::uint64_t key_;
    double dt0_;
    double sqrt_dt0_;
    struct Slot {
        std::uint64_t index = ~0ULL;
        double value = 0.0;
    };
    struct NormalPair {
        std::uint64_t pair = ~0ULL;
        double z0 = 0.0;
        double z1 = 0.0;
    };
    std::vector<Slot> cache_;
    std::vector<NormalPair> pairs_;
};

/// Exit of psi from (delta_abs, 2 pi - delta_abs) driven by a Brownian tree
/// whose root step is dt0 = dt 2^{base_level}.
FirstPassageSample passage_on_tree(const KappaContext& ctx, double psi0, BrownianTree& tree, int base_level,
                                   const PassageParams& params);

std::vector<FirstPassageSample> first_passage(const KappaContext& ctx, double psi0, std::size_t n,
                                              std::uint64_t seed, const PassageParams& params = {},
                                              unsigned threads = 0);

/// P[exit at the upper side] from the scale function s'(y) = sin(y/2)^{-2(kappa-4)/kappa}.
double scale_function_upper(const KappaContext& ctx, double psi0, double delta_abs);

struct PassageSummary {
    std::size_t n;
    std::size_t lower;
    std::size_t upper;
    std::size_t censored;
    double freq_upper;
    double predicted_upper;
    double rel_err_upper;
    double rel_err_lower;
    double mean_tau;
};

PassageSummary summarize_passage(const KappaContext& ctx, double psi0, double delta_abs,
                                 const std::vector<FirstPassageSample>& samples);

struct WeakOrderStudy {
    std::vector<double> dts;
    std::vector<double> mean_tau;
    std::vector<double> diffs;     ///< mean_tau[i] - mean_tau[i+1]
    std::vector<double> diff_se;
    double observed_order;         ///< slope of log|diff| against log dt
};

/// Mean passage time at dt0 2^{-r}, r = 0..levels-1, with coupled noise.
WeakOrderStudy weak_order_study(const KappaContext& ctx, double psi0, double dt0, int levels, std::size_t n,
                                std::uint64_t seed, double delta_abs = 1e-5, unsigned threads = 0);

}  // namespace cle
