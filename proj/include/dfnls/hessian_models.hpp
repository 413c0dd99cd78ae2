#pragma once

#include <vector>

#include "dfnls/types.hpp"

namespace dfnls {

enum class HessianMode { Sr1, Bfgs, Zero };

/// Quasi-Newton models of the constraint Hessians. One symmetric n x n
/// matrix per constraint, fed with secant pairs harvested from consecutive
/// outer iterates: t = x_new - x_prev and y_i = (row i of Jc_new - Jc_prev)^T.
/// The residual Hessians are modelled as zero, so the curvature block of the
/// saddle system is -sum_i y_i Hc[i].
class HessianModel {
 public:
  HessianModel(HessianMode mode, int m, int n)
      : mode_(mode), m_(m), n_(n), hc_(static_cast<size_t>(m), Matrix::Zero(n, n)) {}

  HessianMode mode() const { return mode_; }
  bool has_history() const { return has_prev_; }
  const std::vector<Matrix>& constraint_hessians() const { return hc_; }

  /// Feeds one (x, Jc) observation. The first call only records state.
  void update(const Vector& x_new, const Matrix& Jc_new) {
    if (x_new.size() != n_ || Jc_new.rows() != m_ || Jc_new.cols() != n_)
      throw std::invalid_argument("HessianModel::update: dimension mismatch");
    if (has_prev_ && mode_ != HessianMode::Zero) {
      const Vector t = x_new - last_x_;
      for (int i = 0; i < m_; ++i) {
        const Vector y = (Jc_new.row(i) - last_Jc_.row(i)).transpose();
        Matrix& h = hc_[static_cast<size_t>(i)];
        if (mode_ == HessianMode::Sr1) {
          const Vector v = y - h * t;
          const double vt = v.dot(t);
          if (std::abs(vt) >= kSr1Guard) h += (v * v.transpose()) / vt;
        } else {  // Bfgs
          const double ty = t.dot(y);
          const Vector ht = h * t;
          const double tht = t.dot(ht);
          if (std::abs(ty) >= kCurvGuard && std::abs(tht) >= kBfgsGuard)
            h += (y * y.transpose()) / ty - (ht * ht.transpose()) / tht;
        }
      }
    }
    last_x_ = x_new;
    last_Jc_ = Jc_new;
    has_prev_ = true;
  }

  /// Curvature block of the saddle system: -sum_i y_i Hc[i]. The z terms
  /// vanish because the residual Hessians are approximated by zero.
  Matrix assemble(const Vector& /*z*/, const Vector& y) const {
    if (y.size() != m_) throw std::invalid_argument("HessianModel::assemble: y has wrong length");
    Matrix H = Matrix::Zero(n_, n_);
    for (int i = 0; i < m_; ++i) H -= y(i) * hc_[static_cast<size_t>(i)];
    return H;
  }

  static constexpr double kSr1Guard = 1e-7;
  static constexpr double kCurvGuard = 1e-7;
  static constexpr double kBfgsGuard = 1e-12;

 private:
  HessianMode mode_;
  int m_, n_;
  std::vector<Matrix> hc_;
  Vector last_x_;
  Matrix last_Jc_;
  bool has_prev_ = false;
};

}  // namespace dfnls
