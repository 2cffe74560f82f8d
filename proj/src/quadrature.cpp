#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace casimir {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants)
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

// nodes of one panel, in ascending order
void panel_nodes(double a, double b, double* x15) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < 7; ++i) x15[i] = c - h * kXgk[i];
  x15[7] = c;
  for (int i = 0; i < 7; ++i) x15[8 + i] = c + h * kXgk[6 - i];
}

// Kronrod and Gauss sums of one panel given its 15 ordered values
void panel_sums(double a, double b, const double* f, double& k15, double& g7) {
  const double h = 0.5 * (b - a);
  double sk = kWgk[7] * f[7];
  double sg = 0.0;
  for (int i = 0; i < 7; ++i) sk += kWgk[i] * (f[i] + f[14 - i]);
  for (int i = 0; i < 4; ++i) {
    const int j = 2 * i + 1; // Gauss nodes sit at the odd Kronrod abscissae
    if (j == 7)
      sg += kWg[3] * f[7];
    else
      sg += kWg[i] * (f[j] + f[14 - j]);
  }
  k15 = h * sk;
  g7 = h * sg;
}

} // namespace

QuadResult integrate_panels(const BatchIntegrand& f, const std::vector<double>& edges,
                            double rel_tol, double abs_tol, long long eval_budget) {
  QuadResult res;
  if (edges.size() < 2) throw std::invalid_argument("integrate_panels: need at least one panel");

  std::vector<double> cur(edges);
  double prev_value = 0.0;
  bool have_prev = false;

  for (int level = 0;; ++level) {
    const size_t np = cur.size() - 1;
    std::vector<double> x(np * 15), fx(np * 15);
    for (size_t p = 0; p < np; ++p) panel_nodes(cur[p], cur[p + 1], &x[p * 15]);
    f(x, fx);
    res.evals += static_cast<long long>(x.size());

    double total = 0.0, gk_err = 0.0;
    for (size_t p = 0; p < np; ++p) {
      double k15, g7;
      panel_sums(cur[p], cur[p + 1], &fx[p * 15], k15, g7);
      total += k15;
      gk_err += std::fabs(k15 - g7);
    }

    res.value = total;
    res.levels = level;
    const double err = have_prev ? std::fabs(total - prev_value) : gk_err;
    res.error = err;
    if (err <= std::max(rel_tol * std::fabs(total), abs_tol)) {
      res.converged = true;
      return res;
    }
    if (res.evals + static_cast<long long>(2 * np * 15) > eval_budget) {
      res.converged = false;
      return res;
    }
    // uniform doubling: split every panel
    std::vector<double> next;
    next.reserve(2 * np + 1);
    for (size_t p = 0; p < np; ++p) {
      next.push_back(cur[p]);
      next.push_back(0.5 * (cur[p] + cur[p + 1]));
    }
    next.push_back(cur.back());
    cur.swap(next);
    prev_value = total;
    have_prev = true;
  }
}

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::pair<std::vector<double>, std::vector<double>> base;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
      std::vector<double> xs(n), ws(n);
      for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev estimate
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
          double p0 = 1.0, p1 = x;
          for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
          }
          const double dp = n * (x * p1 - p0) / (x * x - 1.0);
          const double dx = p1 / dp;
          x -= dx;
          if (std::fabs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
      }
      cache[n] = {xs, ws};
      it = cache.find(n);
    }
    base = it->second;
  }
  nodes.resize(n);
  weights.resize(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = c + h * base.first[i];
    weights[i] = h * base.second[i];
  }
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = t; i < n; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

} // namespace casimir
