#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace rmm {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using VectorField = std::function<Vec3(const Vec3&)>;
using TensorField = std::function<Mat3(const Vec3&)>;

enum class Sequence { linear, quadratic };
enum class Formulation { primal, mixed };

inline int polynomial_order(Sequence s) { return s == Sequence::linear ? 1 : 2; }

std::string to_string(Sequence s);
std::string to_string(Formulation f);
Sequence parse_sequence(const std::string& s);
Formulation parse_formulation(const std::string& s);

// Malformed arguments or file contents.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Degenerate geometry, singular systems and similar numerical breakdowns.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rmm
