#pragma once

#include "mgl/signature.hpp"

namespace mgl {

// Names of the plural operators registered by install_plural_operators.
inline constexpr const char* kIndividualAsSet = "q";   // x maps to the singleton property
inline constexpr const char* kDistributive = "star";   // every member satisfies the predicate
inline constexpr const char* kSetDistributive = "sharp";
inline constexpr const char* kCovering = "cover";
inline constexpr const char* kCardinality = "card";

// Extends the signature with q, star, sharp, cover (with unfoldable
// definitions) and the opaque cardinality constant. Requires the sort N and
// polymorphic equality eq : Pi a. a -> a -> t; throws MissingPrerequisite
// otherwise. Installing twice is a no-op.
Signature install_plural_operators(const Signature& sig);

}  // namespace mgl
