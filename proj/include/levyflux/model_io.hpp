#pragma once

#include "levyflux/model.hpp"

#include <cstdint>
#include <string>

namespace levyflux {

// JSON schema (see README):
//   {"family": "brownian"|"pure_drift"|"compound_poisson"|"gamma"|"stable",
//    "drift": <real>, "gaussian_coef": <real>, "jumps": {...}}
// jumps per family:
//   compound_poisson: {"rate": r, "size_dist": {"type": "exponential","mean": m}
//                                      | {"type": "gamma","shape": k,"scale": s}
//                                      | {"type": "deterministic","size": d}}
//   gamma:            {"shape_rate": g, "scale": s}
//   stable:           {"alpha": a, "scale": c}
SpectrallyPositiveModel model_from_json(const std::string& text);
SpectrallyPositiveModel load_model(const std::string& path);
std::string model_to_json(const SpectrallyPositiveModel&);

// FNV-1a over the raw model file bytes, for the CLI meta sidecar.
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace levyflux
