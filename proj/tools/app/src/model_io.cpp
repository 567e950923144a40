#include "rfblt_app/model_io.hpp"

#include <string>
#include <vector>

#include "rfblt/error.hpp"

namespace rfblt::app {

using nlohmann::json;

namespace {

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(j)] = m(i, j);
    out.push_back(std::move(r));
  }
  return out;
}

Eigen::VectorXd to_vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd to_mat(const json& j, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto r = j.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
    require(static_cast<Eigen::Index>(r.size()) == cols, ErrorCode::ShapeError,
            "ragged matrix in model file");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = r[static_cast<std::size_t>(c)];
  }
  return m;
}

}  // namespace

json model_to_json(const forecast::RfbltModel& model) {
  const auto& fm = model.feature_map;
  const auto& d = model.draws;
  return json{
      {"format", "rfblt-model"},
      {"version", RFBLT_VERSION},
      {"mode", std::string(forecast::to_string(model.mode))},
      {"embed_dim", model.embed_dim},
      {"sigma_delta_sq", model.sigma_delta_sq},
      {"smoothing", model.smoothing},
      {"scaler", model.scaler ? json{{"min", model.scaler->min}, {"max", model.scaler->max}}
                              : json(nullptr)},
      {"tail", model.tail},
      {"last_time", model.last_time},
      {"time_step", model.time_step},
      {"seed", model.seed},
      {"feature_map",
       {{"activation", std::string(features::to_string(fm.activation()))},
        {"weights", rows(fm.weights())},
        {"biases", vec(fm.biases())}}},
      {"draws",
       {{"beta0", vec(d.beta0)},
        {"beta", rows(d.beta)},
        {"sigma_eps_sq", vec(d.sigma_eps_sq)},
        {"lambda_sq", rows(d.lambda_sq)},
        {"tau_sq", vec(d.tau_sq)},
        {"xi", vec(d.xi)},
        {"draw_id", d.draw_id}}},
  };
}

forecast::RfbltModel model_from_json(const json& j) {
  try {
    require(j.value("format", "") == "rfblt-model", ErrorCode::InvalidArgument,
            "not an rfblt model file");
    const auto m = j.at("embed_dim").get<std::size_t>();
    const auto& fmj = j.at("feature_map");
    const auto biases = to_vec(fmj.at("biases"));
    features::FeatureMap fm(to_mat(fmj.at("weights"), biases.size()), biases,
                            features::parse_activation(fmj.at("activation").get<std::string>()));

    const auto& dj = j.at("draws");
    bayes::PosteriorDraws draws;
    draws.beta0 = to_vec(dj.at("beta0"));
    draws.beta = to_mat(dj.at("beta"), biases.size());
    draws.sigma_eps_sq = to_vec(dj.at("sigma_eps_sq"));
    draws.lambda_sq = to_mat(dj.at("lambda_sq"), biases.size());
    draws.tau_sq = to_vec(dj.at("tau_sq"));
    draws.xi = to_vec(dj.at("xi"));
    draws.draw_id = dj.at("draw_id").get<std::vector<std::size_t>>();
    require(static_cast<std::size_t>(draws.beta.rows()) == draws.size() &&
                draws.draw_id.size() == draws.size(),
            ErrorCode::ShapeError, "posterior draw arrays disagree in length");

    std::optional<series::ScalerParams> scaler;
    if (!j.at("scaler").is_null())
      scaler = series::ScalerParams{j.at("scaler").at("min").get<double>(),
                                    j.at("scaler").at("max").get<double>()};

    return forecast::RfbltModel{
        .feature_map = std::move(fm),
        .draws = std::move(draws),
        .sigma_delta_sq = j.at("sigma_delta_sq").get<double>(),
        .smoothing = j.at("smoothing").get<std::string>(),
        .embed_dim = m,
        .scaler = scaler,
        .mode = forecast::parse_mode(j.at("mode").get<std::string>()),
        .tail = j.at("tail").get<std::vector<double>>(),
        .last_time = j.at("last_time").get<double>(),
        .time_step = j.at("time_step").get<double>(),
        .seed = j.at("seed").get<std::uint64_t>(),
    };
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed model file: ") + e.what());
  }
}

}  // namespace rfblt::app
