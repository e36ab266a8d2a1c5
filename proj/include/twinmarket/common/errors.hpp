#pragma once

#include <stdexcept>
#include <string>

namespace twinmarket {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TWINMARKET_ERROR(Name)                          \
    class Name : public Error {                         \
    public:                                             \
        explicit Name(const std::string& what)          \
            : Error(std::string(#Name ": ") + what) {}  \
    }

// exchange
TWINMARKET_ERROR(MissingConstituent);
TWINMARKET_ERROR(ConsistencyError);
TWINMARKET_ERROR(InvalidSpec);

// socialgraph / feed
TWINMARKET_ERROR(UnknownUser);
TWINMARKET_ERROR(UnknownPost);
TWINMARKET_ERROR(CycleDetected);

// agents
TWINMARKET_ERROR(EmptyTemplate);
TWINMARKET_ERROR(PolicyFailure);
TWINMARKET_ERROR(ServiceUnavailable);
TWINMARKET_ERROR(SchemaViolation);

// baselines
TWINMARKET_ERROR(ParameterDomain);

// analytics
TWINMARKET_ERROR(TooFewSamples);
TWINMARKET_ERROR(ZeroVariance);
TWINMARKET_ERROR(LengthMismatch);
TWINMARKET_ERROR(AllZero);
TWINMARKET_ERROR(NoBuys);

// sim
TWINMARKET_ERROR(ConfigError);
TWINMARKET_ERROR(MissingData);

#undef TWINMARKET_ERROR

}  // namespace twinmarket
