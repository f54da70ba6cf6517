#pragma once

#include <string>

#include <json.hpp>

#include "intertwine/spectral_field.hpp"

namespace intertwine {

/// Self-describing document:
///     {"format": "intertwine.spectral_field", "version": 1, "m": .., "N": ..,
///      "layout": "...", "coeffs": [re0, im0, re1, im1, ...]}
/// Coefficients follow the in-memory layout (row-major, axis 1 slowest,
/// n_k from -N to N). Doubles are written in shortest round-trip form, so a
/// save/load cycle is bit-exact.
nlohmann::json field_to_json(const SpectralField& F);
SpectralField field_from_json(const nlohmann::json& doc);

void save_field(const SpectralField& F, const std::string& path);
SpectralField load_field(const std::string& path);

}  // namespace intertwine
