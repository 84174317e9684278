#ifndef SMT_ERRORS_HPP
#define SMT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smt {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// qseries
struct NotInvertible : Error {
    explicit NotInvertible(const std::string& m) : Error("NotInvertible: " + m) {}
};
struct InsufficientTruncation : Error {
    explicit InsufficientTruncation(const std::string& m)
        : Error("InsufficientTruncation: " + m) {}
};

// qf
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& m) : Error("NotPositiveDefinite: " + m) {}
};
struct InvalidDiscriminant : Error {
    explicit InvalidDiscriminant(const std::string& m) : Error("InvalidDiscriminant: " + m) {}
};
struct NoRepresentableValue : Error {
    explicit NoRepresentableValue(const std::string& m) : Error("NoRepresentableValue: " + m) {}
};

// modform / evaluation
struct UnsupportedExpression : Error {
    explicit UnsupportedExpression(const std::string& m) : Error("UnsupportedExpression: " + m) {}
};
struct PrecisionLoss : Error {
    explicit PrecisionLoss(const std::string& m) : Error("PrecisionLoss: " + m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("ParseError: " + m) {}
};

// traces
struct RoundingFailure : Error {
    explicit RoundingFailure(const std::string& m) : Error("RoundingFailure: " + m) {}
};
struct HypothesisViolation : Error {
    explicit HypothesisViolation(const std::string& m) : Error("HypothesisViolation: " + m) {}
};

// plusspace
struct SpanDeficient : Error {
    explicit SpanDeficient(const std::string& m) : Error("SpanDeficient: " + m) {}
};

// borcherds
struct NonIntegralExponent : Error {
    explicit NonIntegralExponent(const std::string& m) : Error("NonIntegralExponent: " + m) {}
};

// cli
struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error("ConfigError: " + m) {}
};

}  // namespace smt

#endif
