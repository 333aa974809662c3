#include "minstab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace minstab {

namespace {

using nlohmann::json;

json matrix_to_rowmajor(const Eigen::MatrixXd& mat) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    for (Eigen::Index c = 0; c < mat.cols(); ++c) {
      arr.push_back(mat(r, c));
    }
  }
  return arr;
}

Eigen::MatrixXd matrix_from_rowmajor(const json& arr, Eigen::Index rows,
                                     Eigen::Index cols, const char* what) {
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::runtime_error(std::string(what) + ": expected array of " +
                             std::to_string(rows * cols) + " numbers");
  }
  Eigen::MatrixXd mat(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      mat(r, c) = arr.at(i++).get<double>();
    }
  }
  return mat;
}

Eigen::VectorXd vector_from_json(const json& arr, Eigen::Index dim,
                                 const char* what) {
  return matrix_from_rowmajor(arr, dim, 1, what).col(0);
}

json vector_to_json(const Eigen::VectorXd& v) { return matrix_to_rowmajor(v); }

int require_count(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number_integer()) {
    throw std::runtime_error(std::string("missing integer field \"") + field +
                             "\"");
  }
  const int value = j.at(field).get<int>();
  if (value < 1) {
    throw std::runtime_error(std::string("field \"") + field +
                             "\" must be >= 1");
  }
  return value;
}

}  // namespace

json system_to_json(const LtiSystem& sys) {
  json j;
  j["n"] = sys.state_dim();
  j["m"] = sys.input_dim();
  j["A"] = matrix_to_rowmajor(sys.a);
  j["B"] = matrix_to_rowmajor(sys.b);
  return j;
}

LtiSystem system_from_json(const json& j) {
  const int n = require_count(j, "n");
  const int m = require_count(j, "m");
  return LtiSystem(matrix_from_rowmajor(j.at("A"), n, n, "system A"),
                   matrix_from_rowmajor(j.at("B"), n, m, "system B"));
}

json dataset_to_json(const OnlineDataset& dataset) {
  json j;
  j["n"] = dataset.state_dim();
  j["m"] = dataset.input_dim();
  json triples = json::array();
  for (const auto& t : dataset.triples()) {
    json entry;
    entry["x_plus"] = vector_to_json(t.x_plus);
    entry["x"] = vector_to_json(t.x);
    entry["u"] = vector_to_json(t.u);
    triples.push_back(std::move(entry));
  }
  j["triples"] = std::move(triples);
  return j;
}

OnlineDataset dataset_from_json(const json& j) {
  const int n = require_count(j, "n");
  const int m = require_count(j, "m");
  if (!j.contains("triples") || !j.at("triples").is_array()) {
    throw std::runtime_error("dataset: missing \"triples\" array");
  }
  OnlineDataset dataset(n, m);
  for (const auto& entry : j.at("triples")) {
    dataset.append({vector_from_json(entry.at("x_plus"), n, "triple x_plus"),
                    vector_from_json(entry.at("x"), n, "triple x"),
                    vector_from_json(entry.at("u"), m, "triple u")});
  }
  return dataset;
}

json estimate_to_json(const Estimate& est) {
  json j;
  j["A_hat"] = matrix_to_rowmajor(est.a_hat);
  j["B_hat"] = matrix_to_rowmajor(est.b_hat);
  return j;
}

Estimate estimate_from_json(const json& j) {
  if (!j.contains("A_hat") || !j.at("A_hat").is_array()) {
    throw std::runtime_error("estimate: missing \"A_hat\" array");
  }
  if (!j.contains("B_hat") || !j.at("B_hat").is_array()) {
    throw std::runtime_error("estimate: missing \"B_hat\" array");
  }
  // Dimensions are implied by the layout: |A_hat| = n^2, |B_hat| = n*m.
  Eigen::Index n = 0;
  while (static_cast<std::size_t>(n * n) < j.at("A_hat").size()) {
    ++n;
  }
  if (n < 1 || static_cast<std::size_t>(n * n) != j.at("A_hat").size()) {
    throw std::runtime_error("estimate: A_hat length is not a square");
  }
  if (j.at("B_hat").size() % static_cast<std::size_t>(n) != 0 ||
      j.at("B_hat").empty()) {
    throw std::runtime_error("estimate: B_hat length is not a multiple of n");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(j.at("B_hat").size()) / n;
  return Estimate(matrix_from_rowmajor(j.at("A_hat"), n, n, "estimate A_hat"),
                  matrix_from_rowmajor(j.at("B_hat"), n, m, "estimate B_hat"));
}

json gain_to_json(const GainResult& gain) {
  json j;
  j["k"] = {{"rows", gain.k.rows()},
            {"cols", gain.k.cols()},
            {"data", matrix_to_rowmajor(gain.k)}};
  j["closed_loop_radius_est"] = gain.closed_loop_radius_est;
  if (gain.closed_loop_radius_true.has_value()) {
    j["closed_loop_radius_true"] = *gain.closed_loop_radius_true;
  } else {
    j["closed_loop_radius_true"] = nullptr;
  }
  j["riccati_residual"] = gain.riccati_residual;
  return j;
}

GainResult gain_from_json(const json& j) {
  const auto& k = j.at("k");
  const Eigen::Index rows = k.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = k.at("cols").get<Eigen::Index>();
  if (rows < 1 || cols < 1) {
    throw std::runtime_error("gain: k dimensions must be >= 1");
  }
  GainResult gain;
  gain.k = matrix_from_rowmajor(k.at("data"), rows, cols, "gain k");
  gain.closed_loop_radius_est = j.at("closed_loop_radius_est").get<double>();
  if (!j.at("closed_loop_radius_true").is_null()) {
    gain.closed_loop_radius_true =
        j.at("closed_loop_radius_true").get<double>();
  }
  gain.riccati_residual = j.at("riccati_residual").get<double>();
  return gain;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_json: cannot open " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("save_json: write failed for " + path);
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_json: cannot open " + path);
  }
  return json::parse(in);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace minstab
