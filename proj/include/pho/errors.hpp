#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pho {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested case is valid mathematics but not supported by this library.
class UnsupportedCase : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative or quadrature procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual, std::vector<double> per_item = {})
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual), per_item_(std::move(per_item)) {}

    double residual() const noexcept { return residual_; }
    const std::vector<double>& per_item() const noexcept { return per_item_; }

private:
    double residual_;
    std::vector<double> per_item_;
};

/// Fock truncation too small for the requested tail threshold.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, std::size_t needed_dim, double tail)
        : std::runtime_error(what + " (need D >= " + std::to_string(needed_dim) + ")"),
          needed_dim_(needed_dim), tail_(tail) {}

    std::size_t needed_dim() const noexcept { return needed_dim_; }
    double tail() const noexcept { return tail_; }

private:
    std::size_t needed_dim_;
    double tail_;
};

/// Discretization too coarse, or truncation leakage too large, for a requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A statistic whose defining ratio is 0/0 for the given state.
class UndefinedStatistic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pho
