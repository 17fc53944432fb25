#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linzip {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent instance input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A layout that cannot be drawn in the requested style.
class RenderError : public Error {
public:
    using Error::Error;
};

/// How a solver result was obtained.
enum class SolveStatus {
    Optimal,          ///< minimality proven
    HeuristicOnly,    ///< heuristic mode, no proof attempted
    TimeoutFallback,  ///< exact mode ran out of time; heuristic result used
};

std::string_view to_string(SolveStatus s);

/// Maximum number of sets per row. `std::nullopt` means unbounded.
using RowBound = std::optional<std::size_t>;

inline constexpr RowBound kUnbounded = std::nullopt;

/// Wall-clock budget handed to exact solvers.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    explicit Deadline(std::chrono::duration<double> budget)
        : expired_at_start_(budget.count() <= 0.0),
          end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(clamp(budget))) {}

    /// True when the budget was zero or negative. Exact solvers skip all work in that case.
    bool zero_budget() const { return expired_at_start_; }
    bool expired() const { return expired_at_start_ || Clock::now() >= end_; }

private:
    // Keeps `now + budget` representable; a century is as good as forever here.
    static std::chrono::duration<double> clamp(std::chrono::duration<double> b) {
        constexpr double kMax = 3.0e9;
        return std::chrono::duration<double>(b.count() <= 0.0 ? 0.0 : (b.count() > kMax ? kMax : b.count()));
    }

    bool expired_at_start_;
    Clock::time_point end_;
};

}  // namespace linzip
