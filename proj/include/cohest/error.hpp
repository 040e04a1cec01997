#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohest {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define COHEST_DEFINE_ERROR(Name)                  \
    class Name : public Error {                    \
    public:                                        \
        using Error::Error;                        \
    }

COHEST_DEFINE_ERROR(NotHermitian);
COHEST_DEFINE_ERROR(DimensionMismatch);
COHEST_DEFINE_ERROR(InvalidState);
COHEST_DEFINE_ERROR(InvalidEdge);
COHEST_DEFINE_ERROR(EtaOutOfRange);
COHEST_DEFINE_ERROR(DependentGenerators);
COHEST_DEFINE_ERROR(NonCommutingGenerators);
COHEST_DEFINE_ERROR(UnknownOperator);
COHEST_DEFINE_ERROR(UnknownLabel);
COHEST_DEFINE_ERROR(MissingRecord);
COHEST_DEFINE_ERROR(NoFeasibleSolution);
COHEST_DEFINE_ERROR(UnboundedProgram);
COHEST_DEFINE_ERROR(ZeroL2);
COHEST_DEFINE_ERROR(L2OutOfRange);
COHEST_DEFINE_ERROR(ExactIsZero);
COHEST_DEFINE_ERROR(InternalMismatch);
COHEST_DEFINE_ERROR(ConfigError);

#undef COHEST_DEFINE_ERROR

class NumericalBreakdown : public Error {
public:
    NumericalBreakdown(const std::string& what, std::size_t iterations)
        : Error(what + " after " + std::to_string(iterations) + " iterations"),
          iterations_(iterations) {}

    std::size_t iterations() const { return iterations_; }

private:
    std::size_t iterations_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    // 1-based line number in the input file, 0 when not line-specific.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace cohest
