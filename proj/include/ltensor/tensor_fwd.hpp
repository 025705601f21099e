// Basic scalar/shape typedefs, shared by every header.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace ltensor {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Shape = std::vector<Index>;

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class Tensor;

} // namespace ltensor
