#pragma once

#include <stdexcept>
#include <string>

namespace camc {

/// Base class for every failure raised by the library. Each subclass names
/// the precondition or numerical event that failed.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { using Error::Error; };
class ConvexityError : public Error { using Error::Error; };
class NoRealRoot : public Error { using Error::Error; };
class DegenerateEquation : public Error { using Error::Error; };
class EmptyDomain : public Error { using Error::Error; };

/// Thrown when the turning-rate denominator of the sled ODE vanishes.
class SingularTurning : public Error {
public:
    SingularTurning(const std::string& what, double s) : Error(what), s_(s) {}
    double s() const noexcept { return s_; }

private:
    double s_;
};

class DegenerateFace : public Error { using Error::Error; };
class NoRoot : public Error { using Error::Error; };

/// Thrown when nearest-root continuation loses the tracked branch.
class BranchLost : public Error {
public:
    BranchLost(const std::string& what, double last_good_r) : Error(what), r_(last_good_r) {}
    double last_good_r() const noexcept { return r_; }

private:
    double r_;
};

class WaistError : public Error { using Error::Error; };
class BranchCutError : public Error { using Error::Error; };
class HypothesisError : public Error { using Error::Error; };
class DegenerateStencil : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };

}  // namespace camc
