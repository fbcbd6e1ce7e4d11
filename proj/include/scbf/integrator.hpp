#pragma once

#include <functional>

#include "scbf/noise.hpp"
#include "scbf/operators.hpp"

namespace scbf {

enum class Scheme { ExponentialEM, SemiImplicitEM };
enum class RunStatus { Ok, BlowUp, NonFinite };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::ExponentialEM;
    int record_every = 1;
    double clip_threshold = 1e6;  // blow-up guard on ||u||_H

    void validate() const;
    // t_end must be an integer multiple of dt (keeps refinement studies and
    // counter-addressed draws exact)
    std::uint64_t n_steps() const;
};

// Per-path diagnostics. Norm columns are node values; iv/il/hs/m/fw are the
// running integrals entering the energy balance, accumulated at full dt
// resolution with the same increments used by the stepper (trapezoid for
// the deterministic integrals, left endpoint for the Ito terms).
struct TrajectoryRecord {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> h2;      // ||u||_H^2
    std::vector<double> v2;      // ||u||_V^2
    std::vector<double> lr1;     // int |u|^{r+1} dx
    std::vector<double> iv;      // int_0^t ||u||_V^2 ds
    std::vector<double> il;      // int_0^t int|u|^{r+1} ds
    std::vector<double> m_acc;   // 2 sum (Phi dW, u)
    std::vector<double> hs_acc;  // sum ||Phi||_LQ^2 dt
    std::vector<double> fw_acc;  // 2 int (f, u) dt
    std::vector<double> wiener;  // W(t), scalar models only
    std::vector<double> dev2;    // ||u - ref||_H^2 when a reference is given
    bool has_wiener = false;
    bool has_dev = false;
    RunStatus status = RunStatus::Ok;
    double fail_time = -1.0;
    SpectralField final_field;
};

using IncrementFn =
    std::function<WienerIncrement(std::uint64_t step, double t, double dt)>;
using RecordHook = std::function<void(double t, const SpectralField& u)>;

struct SimOptions {
    const SpectralField* reference = nullptr;
    RecordHook on_record;
};

// One scheme step from u at time t with a given increment. Preserves the
// divergence-free and Hermitian invariants exactly; the linear Stokes flow
// is integrated exactly by the exponential factor.
struct StepResult {
    SpectralField u;
    RunStatus status = RunStatus::Ok;
};
StepResult step_once(const SpectralField& u, double t, const PhysicsParams& p,
                     const NoiseModel& model, const SolverConfig& cfg,
                     const WienerIncrement& inc);

TrajectoryRecord simulate(const SpectralField& u0, const PhysicsParams& p,
                          const NoiseModel& model, const SolverConfig& cfg,
                          const IncrementFn& increments, const SimOptions& opts = {});
// counter-based noise stream bound to (seed, path)
TrajectoryRecord simulate(const SpectralField& u0, const PhysicsParams& p,
                          const NoiseModel& model, const SolverConfig& cfg,
                          const GaussianStream& noise_stream, const SimOptions& opts = {});

// R(t) = [||u||_H^2 + 2 mu iv + 2 beta il] - [||u0||_H^2 + hs + m + fw]
// per recorded node.
std::vector<double> energy_residual(const TrajectoryRecord& rec, const PhysicsParams& p);

// Two solutions driven by bit-identical increments (synchronous coupling).
struct CoupledRecord {
    std::vector<double> t;
    std::vector<double> dev2;  // ||u - v||_H^2
    RunStatus status = RunStatus::Ok;
    SpectralField final_u, final_v;
};
CoupledRecord simulate_coupled(const SpectralField& u0, const SpectralField& v0,
                               const PhysicsParams& p, const NoiseModel& model,
                               const SolverConfig& cfg, const GaussianStream& noise_stream);

// Monte-Carlo check of the a-priori energy estimate
//   E[sup ||u||_H^2 + 4 mu int ||u||_V^2 + 4 beta int |u|^{r+1}]
//     <= (2 E||u0||^2 + 14 K T) e^{28 K T}.
struct AprioriReport {
    double lhs_mc = 0.0;
    double lhs_se = 0.0;
    double rhs_bound = 0.0;
    bool holds = false;
    int blowups = 0;
};
AprioriReport apriori_bound_check(const SpectralField& u0, const PhysicsParams& p,
                                  const NoiseModel& model, const SolverConfig& cfg, int paths,
                                  std::uint64_t seed);

}  // namespace scbf
