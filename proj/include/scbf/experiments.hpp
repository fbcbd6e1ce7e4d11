#pragma once

#include "scbf/config.hpp"
#include "scbf/ergodics.hpp"
#include "scbf/stationary.hpp"

namespace scbf {

// exit codes: 0 pass, 1 verdict failure, 2 usage/config error, 3 numerical
// failure (blow-up / non-finite)
int run_experiment(const RunConfig& cfg);

// field spec grammar: zero | none | random:decay:amp[:cutoff] |
// shear:kx,ky[,kz]:amp | snapshot:PATH
SpectralField build_field_spec(const std::string& spec, const SpacePtr& space,
                               std::uint64_t seed, std::uint32_t tag);
PhysicsParams build_physics(const RunConfig& cfg, const SpacePtr& space);
NoiseModel build_noise(const RunConfig& cfg, const SpacePtr& space, const PhysicsParams& p);
SolverConfig build_solver(const RunConfig& cfg);

void write_trajectory_csv(const TrajectoryRecord& rec, const PhysicsParams& p,
                          const std::string& path);

// Pathwise dt-refinement of the energy balance: the fine run uses half the
// step and the coarse run consumes pairwise sums of the same increments
// (one underlying Wiener path), so the residual comparison isolates pure
// time-discretization error.
struct RefinementStudy {
    double max_r_coarse = 0.0;
    double max_r_fine = 0.0;
    double ratio = 0.0;  // coarse / fine
};
RefinementStudy energy_refinement_study(const SpectralField& u0, const PhysicsParams& p,
                                        const NoiseModel& model, const SolverConfig& coarse,
                                        std::uint64_t seed, std::uint32_t path_id = 0);

}  // namespace scbf
