#pragma once
#include <vector>

#include "ouw/rng.hpp"
#include "ouw/types.hpp"

namespace ouw {

enum class PathKind { BM, OU_EXACT, OU_EULER, OUSP, STABLE };

struct PlanarPath {
  TimeGrid grid;
  std::vector<cplx> z;
  PathKind kind = PathKind::BM;
  OuParams params;
  SeedSpec seed;
};

// real OU from 1 (driving process of the hyperbolic-sine exit identity)
struct RealOuPath {
  TimeGrid grid;
  std::vector<double> xi;
  double lambda = 0.0;
  SeedSpec seed;
};

PlanarPath sample_bm(const TimeGrid& grid, cplx z0, SeedSpec seed);

// exact Gaussian transitions z' = e^{-lambda h} z + N(0, (1-e^{-2 lambda h})/(2 lambda) per coord)
PlanarPath sample_ou_exact(const TimeGrid& grid, const OuParams& params, SeedSpec seed);

// one underlying BM on the alpha-image grid plus the OU path built from it
// bitwise as z[k] = e^{-lambda t_k} * B(alpha(t_k))
struct SharedOu {
  PlanarPath bm;  // grid carries alpha(t_k)
  PlanarPath ou;  // grid carries t_k
};
SharedOu sample_ou_shared(const TimeGrid& grid, const OuParams& params, SeedSpec seed);

// Euler-Maruyama on the defining SDE; cross-check only.
// Throws StepTooLarge if max step > 0.1/max(lambda, 1).
PlanarPath sample_ou_euler(const TimeGrid& grid, const OuParams& params, SeedSpec seed);

// n_sub interior points between t_k and t_{k+1} with the exact conditional law
// given the endpoints (Brownian bridge in the alpha-time coordinate for OU).
// Returned path spans [t_k, t_{k+1}] inclusive. Throws UnsupportedKind for
// Euler/OUSP inputs.
PlanarPath refine_bridge(const PlanarPath& path, std::size_t k, std::size_t n_sub, SeedSpec seed);

RealOuPath sample_real_ou(const TimeGrid& grid, double lambda, SeedSpec seed);

// per-coordinate exact OU transition variance over a step h
double ou_step_variance(double h, double lambda);

}  // namespace ouw
