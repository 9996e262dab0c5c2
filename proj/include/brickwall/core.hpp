#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace brickwall {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Error taxonomy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

class StructureError : public Error {
public:
    using Error::Error;
};

class SymmetryError : public Error {
public:
    SymmetryError(const std::string& what, double measured)
        : Error(what + " (measured " + std::to_string(measured) + ")"), measured_(measured) {}
    double measured() const noexcept { return measured_; }

private:
    double measured_;
};

// Gate on the critical manifold where neither (a,b) parametrization applies.
class CriticalManifoldError : public Error {
public:
    CriticalManifoldError(const std::string& what, double distance)
        : Error(what), distance_(distance) {}
    double distance() const noexcept { return distance_; }

private:
    double distance_;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Site i of an L-site register is bit (L-1-i) of the basis index, so site 0
// is the most significant bit. Bit value 1 is spin up (sigma^z = +1).
inline int site_bit(std::uint64_t state, int site, int L) {
    return static_cast<int>((state >> (L - 1 - site)) & 1u);
}

inline int magnetization_of(std::uint64_t state, int L) {
    return 2 * __builtin_popcountll(state) - L;
}

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Reduce an angle into [0, 2pi).
double wrap_angle(double a);
// Reduce an angle into (-pi, pi].
double wrap_symmetric(double a);

}  // namespace brickwall
