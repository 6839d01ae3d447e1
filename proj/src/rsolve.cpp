#include "qkz/rsolve.hpp"

#include <Eigen/SVD>
#include <cstring>
#include <mutex>
#include <vector>

#include "qkz/tensor.hpp"

namespace qkz {

const char* norm_name(Normalization n) { return n == Normalization::HW ? "hw" : "kappa"; }

namespace {

// Rows of  Rc M - N Rc = 0  for the column-major vec of Rc.
void append_block(Mat& a, Eigen::Index row0, const Mat& m, const Mat& n) {
  const Eigen::Index d = m.rows();
  const double w = 1.0 / std::max({1.0, m.norm(), n.norm()});
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) {
      const Eigen::Index row = row0 + r + c * d;
      for (Eigen::Index k = 0; k < d; ++k) {
        a(row, r + k * d) += w * m(k, c);
        a(row, k + c * d) -= w * n(r, k);
      }
    }
}

}  // namespace

double intertwining_residual(const Mat& rc, const SiteModule& s1, const SiteModule& s2) {
  double worst = 0.0;
  const double nr = rc.norm();
  for (Gen g : kAllGens) {
    Mat m = coproduct_image(g, s1, s2);
    Mat n = coproduct_image(g, s2, s1);
    double scale = nr * std::max({1.0, m.norm(), n.norm()});
    worst = std::max(worst, (rc * m - n * rc).norm() / scale);
  }
  return worst;
}

RResult solve_direction(const SiteModule& s1, const SiteModule& s2) {
  const Eigen::Index d = static_cast<Eigen::Index>(s1.dim()) * s2.dim();
  const Eigen::Index nn = d * d;
  // The Cartan images are diagonal, so Rc K12 = K21 Rc already forces
  // Rc(r, c) = 0 unless K21(r, r) = K12(c, c). Only those entries are unknowns.
  std::vector<Eigen::Index> cols;
  {
    const Mat k0a = coproduct_image(Gen::K0, s1, s2), k0b = coproduct_image(Gen::K0, s2, s1);
    const Mat k1a = coproduct_image(Gen::K1, s1, s2), k1b = coproduct_image(Gen::K1, s2, s1);
    auto close = [](cplx x, cplx y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); };
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index r = 0; r < d; ++r)
        if (close(k0b(r, r), k0a(c, c)) && close(k1b(r, r), k1a(c, c))) cols.push_back(r + c * d);
  }
  const Eigen::Index u = static_cast<Eigen::Index>(cols.size());
  if (u == 0) throw Error(ErrorKind::DegeneratePoint, "no weight-preserving entries");
  Mat full = Mat::Zero(4 * nn, nn);
  Eigen::Index row = 0;
  for (Gen g : {Gen::E0, Gen::E1, Gen::F0, Gen::F1}) {
    append_block(full, row, coproduct_image(g, s1, s2), coproduct_image(g, s2, s1));
    row += nn;
  }
  Mat a(4 * nn, u);
  for (Eigen::Index k = 0; k < u; ++k) a.col(k) = full.col(cols[k]);
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  RResult r;
  const double smin = sv(u - 1);
  r.nullspace_gap = u >= 2 ? (smin > 0.0 ? sv(u - 2) / smin : std::numeric_limits<double>::infinity())
                           : std::numeric_limits<double>::infinity();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(nn);
  for (Eigen::Index k = 0; k < u; ++k) v(cols[k]) = svd.matrixV()(k, u - 1);
  r.Rcheck = Eigen::Map<Mat>(v.data(), d, d);
  r.R = swap_matrix(s2.dim(), s1.dim()) * r.Rcheck;
  Eigen::JacobiSVD<Mat> rs(r.Rcheck);
  const auto& rsv = rs.singularValues();
  r.rcheck_cond = rsv(rsv.size() - 1) / rsv(0);
  r.intertwining_residual = intertwining_residual(r.Rcheck, s1, s2);
  return r;
}

RResult solve_intertwiner(const RRequest& req) {
  RResult r = solve_direction(req.site1, req.site2);
  if (r.nullspace_gap < kGapThreshold)
    throw Error(ErrorKind::DegeneratePoint, "commutant is not one-dimensional (gap " + std::to_string(r.nullspace_gap) + ")");
  if (r.rcheck_cond < kCondThreshold)
    throw Error(ErrorKind::DegeneratePoint, "intertwiner is singular (cond " + std::to_string(r.rcheck_cond) + ")");
  return r;
}

RResult normalize_hw(RResult res, const RRequest& req) {
  const int d2 = req.site2.dim();
  const int hw = req.site1.hw_index() * d2 + req.site2.hw_index();
  const cplx c = res.R(hw, hw);
  if (std::abs(c) < 1e-8 * res.R.norm()) throw Error(ErrorKind::HwComponentZero, "R has no hw (x) hw component");
  res.R /= c;
  res.Rcheck /= c;
  res.norm_scalar_applied = 1.0 / c;
  return res;
}

cplx spectral_z(const RRequest& req) {
  return std::pow(req.site1.zeta / req.site2.zeta, req.site1.rep->grading().s());
}

RResult apply_kappa(RResult res, const RRequest& req) {
  const cplx k = kappa_sl2(req.site1.rep->m(), spectral_z(req), req.site1.rep->ctx());
  const cplx f = (req.site1.kind == req.site2.kind) ? 1.0 / k : k;
  res.R *= f;
  res.Rcheck *= f;
  res.norm_scalar_applied *= f;
  return res;
}

namespace {

std::uint64_t bits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

RResult compute(const RRequest& req) {
  if (req.site1.rep->m() != req.site2.rep->m() || req.site1.rep->ctx().q != req.site2.rep->ctx().q)
    throw Error(ErrorKind::Config, "sites of an R request must share one representation family");
  RResult r = normalize_hw(solve_intertwiner(req), req);
  if (req.norm == Normalization::Kappa) r = apply_kappa(std::move(r), req);
  return r;
}

}  // namespace

RSolver::Key RSolver::key_of(const RRequest& req) {
  const EvalRep& rep = *req.site1.rep;
  return {static_cast<std::uint64_t>(req.site1.kind == SiteKind::V ? 0 : 1) |
              (static_cast<std::uint64_t>(req.site2.kind == SiteKind::V ? 0 : 1) << 1) |
              (static_cast<std::uint64_t>(req.norm == Normalization::HW ? 0 : 1) << 2),
          static_cast<std::uint64_t>(rep.m()),
          static_cast<std::uint64_t>(rep.grading().s0),
          static_cast<std::uint64_t>(rep.grading().s1),
          bits(rep.ctx().q.real()),
          bits(rep.ctx().q.imag()),
          bits(req.site1.zeta.real()),
          bits(req.site1.zeta.imag()),
          bits(req.site2.zeta.real()),
          bits(req.site2.zeta.imag()),
          static_cast<std::uint64_t>(rep.ctx().trunc_terms)};
}

RResult RSolver::get(const RRequest& req) {
  if (!enabled_) return compute(req);
  const Key k = key_of(req);
  {
    std::shared_lock lock(mu_);
    auto it = map_.find(k);
    if (it != map_.end()) {
      ++hits_;
      return it->second;
    }
  }
  RResult r = compute(req);
  std::unique_lock lock(mu_);
  if (map_.emplace(k, r).second) {
    order_.push_back(k);
    while (map_.size() > capacity_) {
      map_.erase(order_.front());
      order_.pop_front();
    }
  }
  return r;
}

std::size_t RSolver::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

void RSolver::clear() {
  std::unique_lock lock(mu_);
  map_.clear();
  order_.clear();
}

RFamily::RFamily(RepPtr rep, Normalization norm, std::shared_ptr<RSolver> solver)
    : rep_(std::move(rep)), norm_(norm), solver_(solver ? std::move(solver) : std::make_shared<RSolver>()) {}

RResult RFamily::result(SiteKind k1, cplx z1, SiteKind k2, cplx z2) const {
  RRequest req{{k1, rep_, z1}, {k2, rep_, z2}, norm_};
  return solver_->get(req);
}

}  // namespace qkz
