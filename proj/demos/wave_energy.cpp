// Integrate a small gravity-capillary wave and print the energy diagnostics
// over time. Shows the basic evolve + make_report workflow.

#include <capwave/capwave.hpp>

#include <cstdio>

using namespace capwave;

int main() {
  Grid grid = make_grid(256);
  SurfaceState s0 = gen_wave(0.05, 2, grid);

  SimParams p;
  p.sigma = 0.5;
  p.gravity = 1;
  p.dt = 0.0;  // CFL-controlled
  p.T = 2.0;
  p.output_every = 20;

  Trajectory traj = evolve(s0, p);

  std::printf("# %8s %14s %14s %14s %10s %10s\n", "t", "E_sigma", "calE", "solver_E",
              "A1_min", "taylor_min");
  for (const Checkpoint& cp : traj.points) {
    const EnergyReport& r = cp.report;
    std::printf("%10.4f %14.6e %14.6e %14.6e %10.6f %10.6f\n", r.t, r.E_sigma_total,
                r.calE_total, r.solver_E[0], r.A1_min, r.taylor_min);
  }
  std::printf("# status=%s checkpoints=%zu\n",
              traj.status == EvolveStatus::ok ? "ok" : "blowup", traj.points.size());
  return traj.status == EvolveStatus::ok ? 0 : 1;
}
