#pragma once

#include <stdexcept>
#include <string>

namespace wavebound {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-range or inconsistent input parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Body curve is not simple, not submerged, or not smooth enough.
class GeometryError : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double achieved = 0.0)
        : Error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double condition = 0.0)
        : Error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

// Far-field sampling and Kochin integrals disagree.
class ExtractionError : public Error {
public:
    ExtractionError(const std::string& what, double discrepancy)
        : Error(what), discrepancy_(discrepancy) {}
    double discrepancy() const { return discrepancy_; }

private:
    double discrepancy_;
};

// Evaluation point outside the fluid domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Nonzero solution reported for identically zero data.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

// Malformed scenario configuration; `path` locates the offending key.
class ConfigError : public Error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace wavebound
