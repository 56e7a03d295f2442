/*
 * fcm: convex polyhedral Fuchsian cone-manifolds
 * Copyright 2026 the fcm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace fcm {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Lengths below this are rejected as degenerate, never clamped.
inline constexpr double kMinLength = 1e-12;

/// Gram-determinant threshold for the ultraparallelism test.
inline constexpr double kUltraTol = 1e-10;

/// Default dihedral tolerance separating flat from strict edges (radians).
inline constexpr double kTolFlat = 1e-9;

/// Base class of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveInput : Error { using Error::Error; };
struct DegenerateUpperTriangle : Error { using Error::Error; };
struct NonexistentTrapezoid : Error { using Error::Error; };
struct QuadratureDidNotConverge : Error { using Error::Error; };
struct NoSuchTriangle : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };

struct InvalidSurface : Error { using Error::Error; };
struct TriangleInequalityViolated : Error { using Error::Error; };
struct NotConvex : Error { using Error::Error; };
struct UnflippableLoopConfiguration : Error { using Error::Error; };
struct UnflippableConcaveQuad : Error { using Error::Error; };

struct PrismNonexistent : Error { using Error::Error; };
struct FlipBudgetExceeded : Error { using Error::Error; };
struct UnflippableEdge : Error { using Error::Error; };

struct LineSearchFailed : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };
struct ContinuationStalled : Error { using Error::Error; };

struct NoBigon : Error { using Error::Error; };
struct PathNotEdge : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct NotInImage : Error { using Error::Error; };
struct NotTetrahedral : Error { using Error::Error; };
struct NotShort : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

/// Execution policy for the data-parallel kernels. Serial is the reference
/// implementation; parallel runs the per-prism loops under OpenMP and must
/// produce bit-identical results (each slot is written independently and
/// reductions run in canonical order).
enum class Exec { serial, parallel };

}  // namespace fcm
