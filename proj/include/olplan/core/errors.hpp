#pragma once

#include <stdexcept>
#include <string>

namespace olplan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// planning-core
class NodeNotPresent : public Error { using Error::Error; };
class AlreadyOpened : public Error { using Error::Error; };
class BudgetExhausted : public Error { using Error::Error; };
class MissingSamples : public Error { using Error::Error; };
class InvalidArgument : public Error { using Error::Error; };

// environments
class InfeasibleParameters : public Error { using Error::Error; };

// planners
class BudgetTooSmall : public Error { using Error::Error; };
class NoisyEnvironment : public Error { using Error::Error; };
class InvalidConfig : public Error { using Error::Error; };
class InfeasibleHorizon : public Error { using Error::Error; };

// oracle-analysis
class HorizonTooShallow : public Error { using Error::Error; };

}  // namespace olplan
