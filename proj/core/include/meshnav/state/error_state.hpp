#pragma once

#include <Eigen/Core>
#include <vector>

#include "meshnav/state/rotation.hpp"
#include "meshnav/state/types.hpp"

namespace meshnav::state {

/// Maps a mean vector onto its error state. Vector blocks are additive;
/// a quaternion block occupies four mean entries (w,x,y,z) and three error
/// entries, with the local error applied on the right:
///   q = q_hat * exp(delta_theta).
class StateLayout {
 public:
  struct Block {
    enum class Kind { vector, quaternion };
    Kind kind;
    int mean_offset;
    int error_offset;
    int size;  // mean entries for vector blocks; quaternion uses 4/3
  };

  // Purely additive layout (anchors: 3-dim position).
  static StateLayout vector_space(int dim);
  // [p(3), v(3), q(4), b_gyro(3), b_accel(3)] -> 16 mean / 15 error entries.
  static StateLayout imu();

  int mean_dim() const { return mean_dim_; }
  int error_dim() const { return error_dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // mean ⊕ delta.
  Eigen::VectorXd boxplus(const Eigen::VectorXd& mean,
                          const Eigen::VectorXd& delta) const;
  // a ⊖ b: the delta with boxplus(b, delta) == a.
  Eigen::VectorXd boxminus(const Eigen::VectorXd& a,
                           const Eigen::VectorXd& b) const;

 private:
  StateLayout(std::vector<Block> blocks, int mean_dim, int error_dim)
      : blocks_(std::move(blocks)), mean_dim_(mean_dim), error_dim_(error_dim) {}

  std::vector<Block> blocks_;
  int mean_dim_;
  int error_dim_;
};

}  // namespace meshnav::state
