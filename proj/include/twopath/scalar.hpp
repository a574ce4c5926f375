#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <sstream>
#include <string>

namespace twopath {

// Exact integer scalar. Expression templates are disabled so values behave
// like plain arithmetic types inside Eigen containers.
using BigScalar = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                                boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using BigMatrix = MatrixX<BigScalar>;

inline std::string to_decimal(const BigScalar& v) { return v.str(); }

template <typename Scalar>
std::string to_string_any(const Scalar& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

template <typename Scalar>
Scalar abs_value(const Scalar& v) {
  return v < Scalar(0) ? Scalar(-v) : v;
}

}  // namespace twopath
