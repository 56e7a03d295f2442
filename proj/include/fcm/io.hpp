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

#include <optional>
#include <string>

#include "fcm/conemanifold.hpp"
#include "fcm/sweep.hpp"

namespace fcm::io {

struct SurfaceFile {
    ConeMetric metric;
    std::optional<Heights> heights;
};

/// Parse the surface/metric(/heights) JSON document. Unknown fields are
/// rejected (fail-closed). Throws ParseError.
SurfaceFile read_surface(const std::string& path);
SurfaceFile read_surface_text(const std::string& text);

std::string surface_to_text(const ConeMetric& m, const Heights* heights = nullptr);
void write_surface(const std::string& path, const ConeMetric& m,
                   const Heights* heights = nullptr);

/// Parse a cone-triangle JSON document (fail-closed).
ConeTriangle read_cone_triangle(const std::string& path);
ConeTriangle read_cone_triangle_text(const std::string& text);
std::string cone_triangle_to_text(const ConeTriangle& t);
void write_cone_triangle(const std::string& path, const ConeTriangle& t);

/// Detect the "type" field of a document without full parsing.
std::string document_type(const std::string& path);

std::string swept_to_text(const SweepOutcome& outcome);

}  // namespace fcm::io
