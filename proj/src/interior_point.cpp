// Copyright 2026 The metricvote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

#include "metricvote/lp.hpp"

namespace metricvote {

namespace {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

double max_step(const Vec& v, const Vec& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

}  // namespace

// Mehrotra predictor-corrector on  min q^T u  s.t.  G u + s = h, s >= 0,
// with q = -c. Newton systems are reduced to the normal equations
// G^T (Z/S) G du = rhs and solved by a sparse LDL^T factorization.
InteriorPointResult solve_interior_point(const InequalityLp& lp,
                                         const InteriorPointOptions& options) {
  const Eigen::Index n = static_cast<Eigen::Index>(lp.variables);
  const Eigen::Index p = static_cast<Eigen::Index>(lp.rows.size());
  if (static_cast<Eigen::Index>(lp.objective.size()) != n ||
      static_cast<Eigen::Index>(lp.bounds.size()) != p) {
    throw std::invalid_argument("inequality LP has inconsistent dimensions");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index r = 0; r < p; ++r) {
    for (const LpTerm& t : lp.rows[r]) {
      triplets.emplace_back(r, static_cast<Eigen::Index>(t.var), t.coef);
    }
  }
  SpMat g(p, n);
  g.setFromTriplets(triplets.begin(), triplets.end());
  const SpMat gt = g.transpose();
  Vec h = Eigen::Map<const Vec>(lp.bounds.data(), p);
  Vec q = -Eigen::Map<const Vec>(lp.objective.data(), n);

  Vec u = Vec::Zero(n);
  Vec s = (h - g * u).cwiseMax(1.0);
  Vec z = Vec::Ones(p);

  const double h_scale = 1.0 + h.lpNorm<Eigen::Infinity>();
  const double q_scale = 1.0 + q.lpNorm<Eigen::Infinity>();
  Eigen::SimplicialLDLT<SpMat> ldlt;
  bool analyzed = false;
  SpMat normal;
  InteriorPointResult out;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    Vec rd = gt * z + q;
    Vec rp = g * u + s - h;
    const double mu = s.dot(z) / static_cast<double>(p);
    const double pobj = q.dot(u);
    const double dobj = -h.dot(z);
    out.iterations = iter;
    // Once complementarity is exhausted the remaining gap is roundoff in
    // the dual residual, so stop there as well.
    const bool feasible = rp.lpNorm<Eigen::Infinity>() <= options.tolerance * h_scale &&
                          rd.lpNorm<Eigen::Infinity>() <= 10.0 * options.tolerance * q_scale;
    const double obj_scale = 1.0 + std::abs(pobj);
    if (feasible && (std::abs(pobj - dobj) <= options.tolerance * obj_scale ||
                     mu <= 1e-6 * options.tolerance * obj_scale)) {
      break;
    }
    Vec w = z.cwiseQuotient(s);
    normal = gt * w.asDiagonal() * g;
    const double reg = 1e-12 * (1.0 + normal.diagonal().cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < n; ++j) normal.coeffRef(j, j) += reg;
    if (!analyzed) {
      ldlt.analyzePattern(normal);
      analyzed = true;
    }
    ldlt.factorize(normal);
    if (ldlt.info() != Eigen::Success) throw NumericalError("interior point factorization failed");

    auto direction = [&](const Vec& rc, Vec& du, Vec& ds, Vec& dz) {
      Vec rhs = -rd - gt * (w.cwiseProduct(rp) - rc.cwiseQuotient(s));
      du = ldlt.solve(rhs);
      dz = w.cwiseProduct(g * du + rp) - rc.cwiseQuotient(s);
      ds = -(rc + s.cwiseProduct(dz)).cwiseQuotient(z);
    };

    Vec du, ds, dz;
    Vec rc = s.cwiseProduct(z);
    direction(rc, du, ds, dz);
    const double ap_aff = max_step(s, ds);
    const double ad_aff = max_step(z, dz);
    const double mu_aff =
        (s + ap_aff * ds).dot(z + ad_aff * dz) / static_cast<double>(p);
    const double sigma = std::pow(mu_aff / mu, 3);
    rc += ds.cwiseProduct(dz) - Vec::Constant(p, sigma * mu);
    direction(rc, du, ds, dz);
    const double ap = std::min(1.0, 0.99 * max_step(s, ds));
    const double ad = std::min(1.0, 0.99 * max_step(z, dz));
    u += ap * du;
    s += ap * ds;
    z += ad * dz;
    if (!u.allFinite() || !z.allFinite()) throw NumericalError("interior point diverged");
  }

  out.u.assign(u.data(), u.data() + n);
  out.z.assign(z.data(), z.data() + p);
  out.primal_value = -q.dot(u);
  out.dual_value = h.dot(z);
  out.primal_residual = (g * u - h).cwiseMax(0.0).lpNorm<Eigen::Infinity>();
  out.dual_residual = (gt * z + q).lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace metricvote
