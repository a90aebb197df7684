#pragma once

#include <stdexcept>
#include <string>

namespace clsym {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SyntaxError : Error {
    std::size_t position;
    std::string expected;
    SyntaxError(std::size_t pos, const std::string& what_expected)
        : Error("syntax error at position " + std::to_string(pos) + ": expected " + what_expected),
          position(pos),
          expected(what_expected) {}
};

struct UnknownSymbolError : Error {
    std::string symbol;
    explicit UnknownSymbolError(const std::string& s)
        : Error("unknown symbol '" + s + "'"), symbol(s) {}
};

struct UnknownFunctionError : Error {
    std::string name;
    explicit UnknownFunctionError(const std::string& s)
        : Error("unknown function '" + s + "'"), name(s) {}
};

struct UnboundVariableError : Error {
    std::string symbol;
    explicit UnboundVariableError(const std::string& s)
        : Error("unbound variable '" + s + "'"), symbol(s) {}
};

struct PoleOrSingularityError : Error {
    explicit PoleOrSingularityError(const std::string& msg) : Error("pole or singularity: " + msg) {}
};

struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& msg) : Error("non-finite value: " + msg) {}
};

struct SamplerExhaustedError : Error {
    explicit SamplerExhaustedError(const std::string& msg) : Error("sampler exhausted: " + msg) {}
};

struct RealifyError : Error {
    explicit RealifyError(const std::string& msg) : Error("realification: " + msg) {}
};

struct NotCubicError : Error {
    explicit NotCubicError(const std::string& msg) : Error("not cubic in first derivative: " + msg) {}
};

struct DegenerateFieldError : Error {
    explicit DegenerateFieldError(const std::string& msg) : Error("degenerate vector field: " + msg) {}
};

struct DegenerateParametersError : Error {
    explicit DegenerateParametersError(const std::string& msg) : Error("degenerate parameters: " + msg) {}
};

struct SingularPushforwardError : Error {
    explicit SingularPushforwardError(const std::string& msg) : Error("singular pushforward: " + msg) {}
};

struct UnknownFixtureError : Error {
    explicit UnknownFixtureError(const std::string& name) : Error("unknown fixture '" + name + "'"), fixture(name) {}
    std::string fixture;
};

struct FileFormatError : Error {
    explicit FileFormatError(const std::string& msg) : Error("file format: " + msg) {}
};

// Internal control-flow signal used during guarded sampling; never escapes the sampler.
struct SampleRejected {};

}  // namespace clsym
