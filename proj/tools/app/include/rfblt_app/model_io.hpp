#pragma once

#include <json.hpp>

#include "rfblt/forecaster.hpp"

namespace rfblt::app {

/// Self-contained model document: feature map, posterior draws, training
/// tail, scaler and the seed that keys the predictive noise.
nlohmann::json model_to_json(const forecast::RfbltModel& model);
forecast::RfbltModel model_from_json(const nlohmann::json& j);

}  // namespace rfblt::app
