#pragma once

#include <functional>
#include <span>
#include <vector>

#include "casimir/types.hpp"

namespace casimir {

// Batch integrand: fill f[i] at abscissae x[i]. Batching keeps the inner
// loops data-parallel (see kernels.hpp).
using BatchIntegrand = std::function<void(std::span<const double>, std::span<double>)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;    // |I_L - I_{L-1}| of the last doubling, plus GK pair sum at level 0
  long long evals = 0;
  int levels = 0;
  bool converged = false;
};

// Composite Gauss-Kronrod (G7/K15) over a fixed panel layout, refined by
// uniform panel doubling until |I_L - I_{L-1}| <= max(rel_tol*|I_L|, abs_tol)
// or the evaluation budget is exhausted. Deterministic: node order and the
// pairwise reduction are fixed, independent of any parallelism upstream.
QuadResult integrate_panels(const BatchIntegrand& f, const std::vector<double>& edges,
                            double rel_tol, double abs_tol, long long eval_budget);

// Gauss-Legendre rule on [a, b] (nodes computed once per n, cached).
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

// Deterministic static-partition parallel map: runs fn(i) for i in [0, n)
// on up to `threads` workers. Results must be written to preallocated
// per-index storage by the caller; the partitioning is value-independent.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace casimir
