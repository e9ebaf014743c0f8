#ifndef STOKES_ERRORS_HPP
#define STOKES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stokes {

// Base for all library errors.
struct StokesError : std::runtime_error {
    explicit StokesError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite or otherwise malformed input.
struct InvalidInputError : StokesError {
    explicit InvalidInputError(const std::string& msg) : StokesError(msg) {}
};

// A zero of P0 collides with a pole (+1 or -1); the differential degenerates
// to the depressed form with a simple pole, which this library refuses.
struct DepressedError : StokesError {
    double p0_at_minus1;
    double p0_at_plus1;
    DepressedError(const std::string& msg, double pm1, double pp1)
        : StokesError(msg), p0_at_minus1(pm1), p0_at_plus1(pp1) {}
};

// g^2 = 0 requested; the finite-coupling maps are undefined there.
struct InfiniteCouplingError : StokesError {
    explicit InfiniteCouplingError(const std::string& msg) : StokesError(msg) {}
};

// Evaluation of Q0 exactly at a pole.
struct PoleEvaluationError : StokesError {
    explicit PoleEvaluationError(const std::string& msg) : StokesError(msg) {}
};

// An integration path passes through (or too close to) a critical point.
struct SingularPathError : StokesError {
    explicit SingularPathError(const std::string& msg) : StokesError(msg) {}
};

// Numerically contradictory sign pattern in the root classification.
struct ClassificationAmbiguousError : StokesError {
    std::string candidate_a;
    std::string candidate_b;
    ClassificationAmbiguousError(const std::string& msg, std::string a, std::string b)
        : StokesError(msg), candidate_a(std::move(a)), candidate_b(std::move(b)) {}
};

// Trajectory step control failed (branch jump forced the step below minimum).
struct StepUnderflowError : StokesError {
    explicit StepUnderflowError(const std::string& msg) : StokesError(msg) {}
};

// Graph assembly found a ray whose far end matches no critical point.
struct DanglingEdgeError : StokesError {
    explicit DanglingEdgeError(const std::string& msg) : StokesError(msg) {}
};

// Rotation-system face tracing produced an inconsistent embedding.
struct EmbeddingError : StokesError {
    explicit EmbeddingError(const std::string& msg) : StokesError(msg) {}
};

} // namespace stokes

#endif
