#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace stcomp {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Row-major dense matrix of doubles indexed (row, col); used for the K x M,
// K x N and L x N decision/allocation tables.
class Table {
 public:
  Table() = default;
  Table(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }
  bool operator==(const Table&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// An offloading target: either a base station or a LEO satellite.
enum class NodeKind { BaseStation, Satellite };

struct NodeRef {
  NodeKind kind = NodeKind::BaseStation;
  int index = 0;
  bool operator==(const NodeRef&) const = default;
};

inline constexpr double kSpeedOfLight = 3.0e8;
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace stcomp
