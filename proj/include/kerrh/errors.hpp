#pragma once

#include <stdexcept>
#include <string>

namespace kerrh {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Chart is ill-conditioned: point within the axis or horizon guard band.
struct AxisOrHorizonProximity : Error {
    explicit AxisOrHorizonProximity(const std::string& msg) : Error(msg) {}
};

// A third derivative was requested; jets carry order 2.
struct UnsupportedOrder : Error {
    explicit UnsupportedOrder(const std::string& msg) : Error(msg) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& msg) : Error(msg) {}
};

struct UnknownSuite : Error {
    explicit UnknownSuite(const std::string& msg) : Error(msg) {}
};

struct UnknownQuantity : Error {
    explicit UnknownQuantity(const std::string& msg) : Error(msg) {}
};

struct GridInvalid : Error {
    explicit GridInvalid(const std::string& msg) : Error(msg) {}
};

}  // namespace kerrh
