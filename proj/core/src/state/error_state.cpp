#include "meshnav/state/error_state.hpp"

namespace meshnav::state {

StateLayout StateLayout::vector_space(int dim) {
  std::vector<Block> blocks{{Block::Kind::vector, 0, 0, dim}};
  return StateLayout(std::move(blocks), dim, dim);
}

StateLayout StateLayout::imu() {
  std::vector<Block> blocks{
      {Block::Kind::vector, 0, 0, 3},       // position
      {Block::Kind::vector, 3, 3, 3},       // velocity
      {Block::Kind::quaternion, 6, 6, 0},   // orientation
      {Block::Kind::vector, 10, 9, 3},      // gyro bias
      {Block::Kind::vector, 13, 12, 3},     // accel bias
  };
  return StateLayout(std::move(blocks), 16, 15);
}

Eigen::VectorXd StateLayout::boxplus(const Eigen::VectorXd& mean,
                                     const Eigen::VectorXd& delta) const {
  if (mean.size() != mean_dim_) {
    throw ContractError("boxplus: mean dimension mismatch");
  }
  if (delta.size() != error_dim_) {
    throw ContractError("boxplus: delta dimension mismatch");
  }
  Eigen::VectorXd out = mean;
  for (const Block& b : blocks_) {
    if (b.kind == Block::Kind::vector) {
      out.segment(b.mean_offset, b.size) += delta.segment(b.error_offset, b.size);
    } else {
      const Eigen::Vector4d q = mean.segment<4>(b.mean_offset);
      const UnitQuaternion composed =
          UnitQuaternion(q(0), q(1), q(2), q(3)) *
          UnitQuaternion::exp(delta.segment<3>(b.error_offset));
      out.segment<4>(b.mean_offset) = composed.coeffs_wxyz();
    }
  }
  return out;
}

Eigen::VectorXd StateLayout::boxminus(const Eigen::VectorXd& a,
                                      const Eigen::VectorXd& b) const {
  if (a.size() != mean_dim_ || b.size() != mean_dim_) {
    throw ContractError("boxminus: mean dimension mismatch");
  }
  Eigen::VectorXd out(error_dim_);
  for (const Block& blk : blocks_) {
    if (blk.kind == Block::Kind::vector) {
      out.segment(blk.error_offset, blk.size) =
          a.segment(blk.mean_offset, blk.size) -
          b.segment(blk.mean_offset, blk.size);
    } else {
      const Eigen::Vector4d qa = a.segment<4>(blk.mean_offset);
      const Eigen::Vector4d qb = b.segment<4>(blk.mean_offset);
      const UnitQuaternion rel =
          UnitQuaternion(qb(0), qb(1), qb(2), qb(3)).conjugate() *
          UnitQuaternion(qa(0), qa(1), qa(2), qa(3));
      out.segment<3>(blk.error_offset) = rel.log();
    }
  }
  return out;
}

}  // namespace meshnav::state
