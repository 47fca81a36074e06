#pragma once

#include <stdexcept>
#include <string>

namespace gutkin {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Support curve has a non-positive curvature radius somewhere.
class ConvexityViolation : public Error {
public:
    ConvexityViolation(double theta, double min_rho);
    double theta() const noexcept { return theta_; }
    double min_rho() const noexcept { return min_rho_; }

private:
    double theta_;
    double min_rho_;
};

class NotConstantWidth : public Error {
public:
    using Error::Error;
};

/// Ray does not cross the body: origin outside, or the launch is tangent.
class RayMisses : public Error {
public:
    using Error::Error;
};

class NotOnBoundary : public Error {
public:
    NotOnBoundary(double gap);
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

class DegeneratePhase : public Error {
public:
    using Error::Error;
};

class StepTooLarge : public Error {
public:
    using Error::Error;
};

/// Leading coefficient of the curvature quadratic vanishes. Carries the
/// root of the remaining linear equation when B != 0.
class DegenerateQuadratic : public Error {
public:
    DegenerateQuadratic(double a, double b, double c);
    bool has_linear_root() const noexcept { return has_linear_root_; }
    double linear_root() const noexcept { return linear_root_; }

private:
    bool has_linear_root_;
    double linear_root_;
};

}  // namespace gutkin
