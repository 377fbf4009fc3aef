#pragma once

#include <stdexcept>
#include <string>

namespace epicusp {

/// Base for analysis failures. `kind()` is the stable name reported by the CLI.
class AnalysisError : public std::runtime_error {
public:
    AnalysisError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// The base point lies on the curve, so the winding number is undefined.
class OnCurveError : public AnalysisError {
public:
    explicit OnCurveError(const std::string& what) : AnalysisError("OnCurve", what) {}
};

/// Argument tracking could not resolve the turning even after refining the grid.
class UnresolvedError : public AnalysisError {
public:
    explicit UnresolvedError(const std::string& what) : AnalysisError("Unresolved", what) {}
};

class NearPoleError : public AnalysisError {
public:
    explicit NearPoleError(const std::string& what) : AnalysisError("NearPole", what) {}
};

class NotSingularError : public AnalysisError {
public:
    explicit NotSingularError(const std::string& what) : AnalysisError("NotSingular", what) {}
};

class NoConvergenceError : public AnalysisError {
public:
    explicit NoConvergenceError(const std::string& what) : AnalysisError("NoConvergence", what) {}
};

class WindowTooWideError : public AnalysisError {
public:
    explicit WindowTooWideError(const std::string& what) : AnalysisError("WindowTooWide", what) {}
};

class EmptyInputError : public AnalysisError {
public:
    explicit EmptyInputError(const std::string& what) : AnalysisError("EmptyInput", what) {}
};

}  // namespace epicusp
