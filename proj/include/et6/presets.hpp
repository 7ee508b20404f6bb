#pragma once

#include "et6/solver.hpp"

namespace et6::presets {

/// Uniform state at rest with Pi/p = Z0; nothing but relaxation happens.
Scenario homogeneous_relaxation(double Z0, double tau, double t_end = 1.0,
                                double D = 5.0);

/// Small-amplitude periodic sine wave on [0, 10] for the Maxwellian-iteration
/// comparison. The step is kept at a few percent of tau so the split
/// relaxation does not bias the quasi-steady Pi.
Scenario ns_limit(double tau = 1e-3, double D = 5.0, int N = 400);

/// Periodic smooth wave at D = 3 + 1e-6 with a fixed step shared with the
/// Euler reference.
Scenario monatomic(int N = 200);

/// Sod shock tube with outflow ends.
Scenario sod(double tau, int N = 400, double D = 5.0);

/// Moving periodic wave with Pi != 0, run for a fixed number of steps.
Scenario periodic_conservation(int steps = 1000, int N = 100);

/// Periodic acoustic wave for self-convergence (base resolution N).
Scenario convergence(int order, int N = 100);

}  // namespace et6::presets
