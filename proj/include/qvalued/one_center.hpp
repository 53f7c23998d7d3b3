/*
 * Copyright 2026 The qvalued Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Multiplicatively weighted one-center:
//
//     minimize_y  max_i |y - c_i| / d_i ,   d_i > 0.
//
// Squaring gives g_i(y) = |y - c_i|^2 / d_i^2. For simplex weights lambda the
// dual function is
//
//     D(lambda) = min_y sum_i lambda_i g_i(y),
//
// attained at the weighted centroid of the centers, and max_i g_i(y) >= D(lambda)
// for every y. Both solvers below therefore return an upper value together with
// a lower bound, and the gap between them is the certificate.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qvalued {

enum class OneCenterMethod { kSupportSet, kFrankWolfe };

struct OneCenterOptions {
  double tol = 1e-10;
  // Exhaustive support-set enumeration is used up to this many centers.
  std::size_t support_set_max_k = 6;
  std::size_t max_iterations = 200000;
};

struct OneCenterResult {
  Eigen::VectorXd center;
  double value = 0.0;        // max_i |center - c_i| / d_i
  double lower_bound = 0.0;  // dual certificate, <= optimum
  std::vector<std::size_t> support;
  OneCenterMethod method = OneCenterMethod::kSupportSet;
};

/// max_i |y - c_i| / d_i with centers stored as columns.
inline double weighted_radius(const Eigen::MatrixXd& centers, const Eigen::VectorXd& scales,
                              const Eigen::VectorXd& y) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < centers.cols(); ++i) {
    best = std::max(best, (y - centers.col(i)).squaredNorm() / (scales[i] * scales[i]));
  }
  return std::sqrt(best);
}

/// Dual lower bound for nonnegative centroid weights mu (mu_i proportional to
/// lambda_i / d_i^2). Returns 0 when mu vanishes.
inline double dual_lower_bound(const Eigen::MatrixXd& centers, const Eigen::VectorXd& scales,
                               const Eigen::VectorXd& mu) {
  const double total = mu.sum();
  if (!(total > 0.0)) return 0.0;
  const Eigen::VectorXd y = centers * mu / total;
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < centers.cols(); ++i) {
    if (mu[i] <= 0.0) continue;
    num += mu[i] * (centers.col(i) - y).squaredNorm();
    den += mu[i] * scales[i] * scales[i];
  }
  return den > 0.0 ? std::sqrt(std::max(num / den, 0.0)) : 0.0;
}

namespace detail {

struct SupportCandidate {
  Eigen::VectorXd y;
  Eigen::VectorXd mu;  // over all centers, zero off the support
  double value_sq = std::numeric_limits<double>::infinity();
};

// KKT point with every center in `support` active. On the support the
// equalities |y - c_j|^2 = s d_j^2 become linear after subtracting the first
// one, so y = c_0 + E a with a affine in s; the remaining equation is a
// quadratic in s.
inline void solve_on_support(const Eigen::MatrixXd& c, const Eigen::VectorXd& d,
                             const std::vector<std::size_t>& support, SupportCandidate& best) {
  const std::size_t k = static_cast<std::size_t>(c.cols());
  const std::size_t r = support.size() - 1;
  const Eigen::VectorXd c0 = c.col(support[0]);
  const double d0sq = d[support[0]] * d[support[0]];

  auto consider = [&](const Eigen::VectorXd& y, const Eigen::VectorXd& mu_support, double s) {
    if (mu_support.size() > 0 && mu_support.minCoeff() < -1e-9) return;
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      worst = std::max(worst, (y - c.col(i)).squaredNorm() / (d[i] * d[i]));
    }
    if (worst > s * (1.0 + 1e-9) + 1e-18) return;  // an inactive center is violated
    if (worst >= best.value_sq) return;
    best.y = y;
    best.mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < support.size(); ++j) {
      best.mu[static_cast<Eigen::Index>(support[j])] = std::max(mu_support[j], 0.0);
    }
    best.value_sq = worst;
  };

  if (r == 0) {
    Eigen::VectorXd mu(1);
    mu << 1.0;
    consider(c0, mu, 0.0);
    return;
  }

  Eigen::MatrixXd e(c.rows(), static_cast<Eigen::Index>(r));
  Eigen::VectorXd delta(static_cast<Eigen::Index>(r));
  for (std::size_t j = 1; j <= r; ++j) {
    e.col(static_cast<Eigen::Index>(j - 1)) = c.col(support[j]) - c0;
    delta[static_cast<Eigen::Index>(j - 1)] = d[support[j]] * d[support[j]] - d0sq;
  }
  const Eigen::MatrixXd gram = e.transpose() * e;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-11);
  if (lu.rank() < static_cast<Eigen::Index>(r)) return;  // affinely dependent support

  const Eigen::VectorXd a0 = lu.solve(Eigen::VectorXd(gram.diagonal() / 2.0));
  const Eigen::VectorXd a1 = lu.solve(Eigen::VectorXd(-delta / 2.0));
  const double qa = a1.dot(gram * a1);
  const double qb = 2.0 * a0.dot(gram * a1) - d0sq;
  const double qc = a0.dot(gram * a0);

  std::vector<double> roots;
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc), 1e-300});
  if (std::abs(qa) <= 1e-14 * scale) {
    if (std::abs(qb) > 0.0) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * qb * qb) return;
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double t = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
    if (t != 0.0) roots.push_back(qc / t);
    roots.push_back(t / qa);
  }
  for (double s : roots) {
    if (!(s >= -1e-15)) continue;
    s = std::max(s, 0.0);
    const Eigen::VectorXd a = a0 + s * a1;
    Eigen::VectorXd mu(static_cast<Eigen::Index>(r + 1));
    mu[0] = 1.0 - a.sum();
    mu.tail(static_cast<Eigen::Index>(r)) = a;
    consider(c0 + e * a, mu, s);
  }
}

inline OneCenterResult finish(const Eigen::MatrixXd& c, const Eigen::VectorXd& d,
                              const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                              OneCenterMethod method) {
  OneCenterResult out;
  out.center = y;
  out.value = weighted_radius(c, d, y);
  out.lower_bound = std::min(dual_lower_bound(c, d, mu), out.value);
  out.method = method;
  const double cut = out.value * out.value * (1.0 - 1e-9);
  for (Eigen::Index i = 0; i < c.cols(); ++i) {
    if (mu[i] > 0.0 || (y - c.col(i)).squaredNorm() / (d[i] * d[i]) >= cut) {
      out.support.push_back(static_cast<std::size_t>(i));
    }
  }
  return out;
}

}  // namespace detail

/// Exact solve by enumerating candidate support sets (at most dim + 1
/// centers each). Returns false if rounding rejected every candidate.
inline bool solve_one_center_support_sets(const Eigen::MatrixXd& centers,
                                          const Eigen::VectorXd& scales, OneCenterResult& out) {
  const std::size_t k = static_cast<std::size_t>(centers.cols());
  const std::size_t max_support = std::min<std::size_t>(k, static_cast<std::size_t>(centers.rows()) + 1);
  detail::SupportCandidate best;
  std::vector<std::size_t> support;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    support.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) support.push_back(i);
    if (support.size() > max_support) continue;
    detail::solve_on_support(centers, scales, support, best);
  }
  if (!std::isfinite(best.value_sq)) return false;
  out = detail::finish(centers, scales, best.y, best.mu, OneCenterMethod::kSupportSet);
  return true;
}

/// Away-step Frank-Wolfe on the dual simplex. The Frank-Wolfe gap equals the
/// primal-dual gap, so the loop stops once value - lower_bound <= tol.
inline OneCenterResult solve_one_center_frank_wolfe(const Eigen::MatrixXd& centers,
                                                    const Eigen::VectorXd& scales,
                                                    const OneCenterOptions& opts = {}) {
  const Eigen::Index k = centers.cols();
  const Eigen::VectorXd shift = centers.rowwise().mean();
  const Eigen::MatrixXd c = centers.colwise() - shift;
  Eigen::VectorXd w(k), csq(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    w[i] = 1.0 / (scales[i] * scales[i]);
    csq[i] = c.col(i).squaredNorm();
  }

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  auto dual_at = [&](double a, const Eigen::VectorXd& v, double wsum) {
    return a - v.squaredNorm() / wsum;
  };

  Eigen::VectorXd g(k);
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    const double w0 = lambda.dot(w);
    const Eigen::VectorXd v0 = c * lambda.cwiseProduct(w);
    const double a0 = lambda.dot(w.cwiseProduct(csq));
    const Eigen::VectorXd m = v0 / w0;
    for (Eigen::Index i = 0; i < k; ++i) g[i] = w[i] * (c.col(i) - m).squaredNorm();
    const double dual = std::max(dual_at(a0, v0, w0), 0.0);

    Eigen::Index up = 0;
    const double primal = g.maxCoeff(&up);
    if (std::sqrt(primal) - std::sqrt(dual) <= opts.tol) break;

    Eigen::Index away = -1;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (lambda[i] > 0.0 && (away < 0 || g[i] < g[away])) away = i;
    }
    Eigen::VectorXd dir;
    double gamma_max = 1.0;
    const bool away_step = away >= 0 && lambda[away] < 1.0 && dual - g[away] > primal - dual;
    if (away_step) {
      dir = lambda;
      dir[away] -= 1.0;
      gamma_max = lambda[away] / (1.0 - lambda[away]);
    } else {
      dir = -lambda;
      dir[up] += 1.0;
    }

    // Exact line search: D(gamma) is concave with a quadratic stationarity condition.
    const double w1 = dir.dot(w);
    const Eigen::VectorXd v1 = c * dir.cwiseProduct(w);
    const double a1 = dir.dot(w.cwiseProduct(csq));
    const double qa2 = v1.squaredNorm();
    const double qb2 = v0.dot(v1);
    const double qc2 = v0.squaredNorm();
    const double ca = a1 * w1 * w1 - qa2 * w1;
    const double cb = 2.0 * a1 * w0 * w1 - 2.0 * qa2 * w0;
    const double cc = a1 * w0 * w0 - 2.0 * qb2 * w0 + qc2 * w1;
    std::vector<double> cands{gamma_max};
    if (std::abs(ca) > 1e-300) {
      const double disc = cb * cb - 4.0 * ca * cc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        cands.push_back((-cb + sq) / (2.0 * ca));
        cands.push_back((-cb - sq) / (2.0 * ca));
      }
    } else if (std::abs(cb) > 1e-300) {
      cands.push_back(-cc / cb);
    }
    double best_gamma = 0.0;
    double best_dual = dual_at(a0, v0, w0);
    for (double gamma : cands) {
      if (!(gamma > 0.0) || gamma > gamma_max) continue;
      const double val = dual_at(a0 + gamma * a1, v0 + gamma * v1, w0 + gamma * w1);
      if (val > best_dual) {
        best_dual = val;
        best_gamma = gamma;
      }
    }
    if (best_gamma <= 0.0) break;  // no ascent left at working precision
    lambda += best_gamma * dir;
    if (away_step && best_gamma == gamma_max) lambda[away] = 0.0;  // drop step
    lambda = lambda.cwiseMax(0.0);
    lambda /= lambda.sum();
  }

  const Eigen::VectorXd mu = lambda.cwiseProduct(w);
  const Eigen::VectorXd y = c * mu / mu.sum() + shift;
  return detail::finish(centers, scales, y, mu, OneCenterMethod::kFrankWolfe);
}

/// Solves the weighted one-center problem to `opts.tol`.
inline OneCenterResult solve_one_center(const Eigen::MatrixXd& centers, const Eigen::VectorXd& scales,
                                        const OneCenterOptions& opts = {}) {
  if (centers.cols() == 0 || centers.cols() != scales.size()) {
    throw std::invalid_argument("one-center: need matching, nonempty centers and scales");
  }
  if (scales.minCoeff() <= 0.0) throw std::invalid_argument("one-center: scales must be positive");
  OneCenterResult out;
  if (static_cast<std::size_t>(centers.cols()) <= opts.support_set_max_k &&
      solve_one_center_support_sets(centers, scales, out)) {
    return out;
  }
  out = solve_one_center_frank_wolfe(centers, scales, opts);
  // Polish on the identified support when it is small enough to solve exactly.
  if (out.support.size() <= static_cast<std::size_t>(centers.rows()) + 1 &&
      out.support.size() <= 12) {
    detail::SupportCandidate best;
    best.value_sq = out.value * out.value;
    detail::solve_on_support(centers, scales, out.support, best);
    if (std::isfinite(best.value_sq) && best.mu.size() == centers.cols()) {
      OneCenterResult polished =
          detail::finish(centers, scales, best.y, best.mu, OneCenterMethod::kFrankWolfe);
      polished.lower_bound = std::max(polished.lower_bound, std::min(out.lower_bound, polished.value));
      if (polished.value <= out.value) out = polished;
    }
  }
  return out;
}

}  // namespace qvalued
