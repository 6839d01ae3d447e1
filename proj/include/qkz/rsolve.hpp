#pragma once

// R-operators for ordered pairs of site kinds, obtained as the one-dimensional
// commutant of the coproduct images and normalized either on the highest
// weight vectors (HW) or additionally by the closed-form kappa (Kappa).

#include <array>
#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <shared_mutex>

#include "qkz/rep.hpp"

namespace qkz {

enum class Normalization { HW, Kappa };
const char* norm_name(Normalization n);

struct RRequest {
  SiteModule site1;
  SiteModule site2;
  Normalization norm = Normalization::HW;
};

struct RResult {
  Mat R;       // on V1 (x) V2
  Mat Rcheck;  // P R : V1 (x) V2 -> V2 (x) V1
  double nullspace_gap = 0.0;
  double rcheck_cond = 0.0;  // sigma_min / sigma_max of Rcheck
  cplx norm_scalar_applied{1.0, 0.0};
  double intertwining_residual = 0.0;
};

inline constexpr double kGapThreshold = 1e6;
inline constexpr double kCondThreshold = 1e-6;

/// Unit-norm nullspace direction with its diagnostics; never throws on
/// degenerate points. R, Rcheck carry an arbitrary phase.
RResult solve_direction(const SiteModule& s1, const SiteModule& s2);

/// As above, but throws DegeneratePoint unless the commutant is cleanly
/// one-dimensional and the intertwiner is invertible.
RResult solve_intertwiner(const RRequest& req);
RResult normalize_hw(RResult res, const RRequest& req);
RResult apply_kappa(RResult res, const RRequest& req);

/// z = zeta12^s for a request.
cplx spectral_z(const RRequest& req);

/// Per-generator intertwining residual
/// max_a ||Rc M_a - N_a Rc|| / (||Rc|| max(1, ||M_a||, ||N_a||)).
double intertwining_residual(const Mat& rcheck, const SiteModule& s1, const SiteModule& s2);

/// Memoized solve + normalization. Concurrent reads, exclusive writes; FIFO
/// eviction. Keys are exact bit patterns of every input.
class RSolver {
 public:
  explicit RSolver(std::size_t capacity = 1 << 14) : capacity_(capacity) {}

  RResult get(const RRequest& req);
  void set_enabled(bool on) { enabled_ = on; }
  std::size_t size() const;
  std::size_t hits() const { return hits_; }
  void clear();

 private:
  using Key = std::array<std::uint64_t, 11>;
  static Key key_of(const RRequest& req);

  std::size_t capacity_;
  bool enabled_ = true;
  mutable std::shared_mutex mu_;
  std::map<Key, RResult> map_;
  std::deque<Key> order_;
  std::atomic<std::size_t> hits_{0};
};

/// Normalized R-operators of one representation family.
class RFamily {
 public:
  RFamily(RepPtr rep, Normalization norm, std::shared_ptr<RSolver> solver = nullptr);

  RResult result(SiteKind k1, cplx z1, SiteKind k2, cplx z2) const;
  Mat R(SiteKind k1, cplx z1, SiteKind k2, cplx z2) const { return result(k1, z1, k2, z2).R; }
  Mat Rcheck(SiteKind k1, cplx z1, SiteKind k2, cplx z2) const { return result(k1, z1, k2, z2).Rcheck; }

  const EvalRep& rep() const { return *rep_; }
  const RepPtr& rep_ptr() const { return rep_; }
  Normalization norm() const { return norm_; }
  int dim() const { return rep_->dim(); }

 private:
  RepPtr rep_;
  Normalization norm_;
  std::shared_ptr<RSolver> solver_;
};

}  // namespace qkz
