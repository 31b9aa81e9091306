#ifndef CVD_ERRORS_HPP
#define CVD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvd {

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CollinearInput : GeometryError {
    explicit CollinearInput(const std::string& msg) : GeometryError(msg) {}
};

// A square-through-three-points query admits a one-parameter family; this
// signals a general-position violation in the input.
struct DegenerateConfiguration : GeometryError {
    explicit DegenerateConfiguration(const std::string& msg) : GeometryError(msg) {}
};

struct GeneralPositionViolation : GeometryError {
    explicit GeneralPositionViolation(const std::string& msg) : GeometryError(msg) {}
};

struct MetricMismatch : GeometryError {
    explicit MetricMismatch(const std::string& msg) : GeometryError(msg) {}
};

// A boundary site of a face carries a color of the face's own color set.
struct ColorLeak : GeometryError {
    explicit ColorLeak(const std::string& msg) : GeometryError(msg) {}
};

struct InconsistentLabels : GeometryError {
    explicit InconsistentLabels(const std::string& msg) : GeometryError(msg) {}
};

struct GeometryMismatch : GeometryError {
    explicit GeometryMismatch(const std::string& msg) : GeometryError(msg) {}
};

// No min-side unbounded edge matches the defining pair of a max-side one.
struct CorrespondenceFailure : GeometryError {
    explicit CorrespondenceFailure(const std::string& msg) : GeometryError(msg) {}
};

}  // namespace cvd

#endif
