// Exception types shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace lgr {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define LGR_DEFINE_ERROR(Name)                                           \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    };

LGR_DEFINE_ERROR(ParseError)
LGR_DEFINE_ERROR(HomogeneityError)
LGR_DEFINE_ERROR(AdaptednessError)
LGR_DEFINE_ERROR(IllegalLabel)
LGR_DEFINE_ERROR(DistantColourViolation)
LGR_DEFINE_ERROR(BoundaryMismatch)
LGR_DEFINE_ERROR(IllegalDiagram)
LGR_DEFINE_ERROR(NotALoop)
LGR_DEFINE_ERROR(StaleRedex)
LGR_DEFINE_ERROR(FuelExhausted)
LGR_DEFINE_ERROR(NotCongruent)
LGR_DEFINE_ERROR(NotParallel)
LGR_DEFINE_ERROR(NoBubble)
LGR_DEFINE_ERROR(UnknownRuleset)
LGR_DEFINE_ERROR(ReplayError)

#undef LGR_DEFINE_ERROR

}  // namespace lgr
