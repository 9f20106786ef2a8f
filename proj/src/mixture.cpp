// lvdsk/mixture.cpp

// Copyright 2026  LVDSK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "lvdsk/mixture.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "lvdsk/numeric.hpp"

namespace lvdsk {

std::string family_name(ModelFamily f) {
  return f == ModelFamily::gaussian ? "gaussian" : "student_t";
}

ModelFamily family_from_name(const std::string& name) {
  if (name == "gaussian") return ModelFamily::gaussian;
  if (name == "student_t") return ModelFamily::student_t;
  throw std::invalid_argument("unknown model family '" + name + "'");
}

void MixtureModel::validate() const {
  if (dim <= 0) throw std::invalid_argument("mixture: dim must be positive");
  if (components.empty()) throw std::invalid_argument("mixture: no components");
  double wsum = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0 && c.weight <= 1.0))
      throw std::invalid_argument("mixture: component weight outside (0,1]");
    if (static_cast<int>(c.mean.size()) != dim || static_cast<int>(c.var.size()) != dim)
      throw std::invalid_argument("mixture: component dimension mismatch");
    for (double v : c.var)
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("mixture: non-positive variance");
    for (double m : c.mean)
      if (!std::isfinite(m)) throw std::invalid_argument("mixture: non-finite mean");
    if (c.dof.has_value() != (family == ModelFamily::student_t))
      throw std::invalid_argument("mixture: dof presence inconsistent with family");
    if (c.dof && !(*c.dof >= kDofMin && *c.dof <= kDofMax))
      throw std::invalid_argument("mixture: dof outside [" + std::to_string(kDofMin) + ", 1e6]");
    wsum += c.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("mixture: weights sum to " + std::to_string(wsum));
}

namespace {

double log_component_pdf(const MixtureComponent& c, ModelFamily family,
                         std::span<const double> x) {
  const int d = static_cast<int>(x.size());
  double maha = 0.0, logdet = 0.0;
  for (int i = 0; i < d; ++i) {
    const double z = x[i] - c.mean[i];
    maha += z * z / c.var[i];
    logdet += std::log(c.var[i]);
  }
  if (family == ModelFamily::gaussian)
    return -0.5 * (d * kLogTwoPi + logdet + maha);
  const double nu = *c.dof;
  return std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) -
         0.5 * d * (std::log(nu) + std::log(M_PI)) - 0.5 * logdet -
         0.5 * (nu + d) * std::log1p(maha / nu);
}

}  // namespace

double log_pdf(const MixtureModel& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.dim)
    throw std::invalid_argument("log_pdf: vector has dim " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(model.dim));
  std::vector<double> terms(model.components.size());
  for (std::size_t i = 0; i < model.components.size(); ++i)
    terms[i] = std::log(model.components[i].weight) +
               log_component_pdf(model.components[i], model.family, x);
  return log_sum_exp(terms);
}

void ModelBank::validate() const {
  const std::size_t m = speakers.size(), n = keywords.size();
  if (m == 0 || n == 0) throw std::invalid_argument("bank: empty label lists");
  if (models.size() != m * n) throw std::invalid_argument("bank: grid not fully populated");
  const int d = models.front().dim;
  const ModelFamily f = models.front().family;
  for (const auto& mm : models) {
    if (mm.dim != d) throw std::invalid_argument("bank: inconsistent model dimension");
    if (mm.family != f) throw std::invalid_argument("bank: inconsistent model family");
    mm.validate();
  }
}

nlohmann::json model_to_json(const MixtureModel& model) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : model.components) {
    nlohmann::json jc = {{"weight", c.weight}, {"mean", c.mean}, {"var", c.var}};
    if (c.dof) jc["dof"] = *c.dof;
    comps.push_back(std::move(jc));
  }
  return {{"family", family_name(model.family)}, {"dim", model.dim}, {"components", comps}};
}

MixtureModel model_from_json(const nlohmann::json& j) {
  MixtureModel m;
  m.family = family_from_name(j.at("family").get<std::string>());
  m.dim = j.at("dim").get<int>();
  for (const auto& jc : j.at("components")) {
    MixtureComponent c;
    c.weight = jc.at("weight").get<double>();
    c.mean = jc.at("mean").get<std::vector<double>>();
    c.var = jc.at("var").get<std::vector<double>>();
    if (jc.contains("dof")) c.dof = jc.at("dof").get<double>();
    m.components.push_back(std::move(c));
  }
  m.validate();
  return m;
}

nlohmann::json bank_to_json(const ModelBank& bank, const nlohmann::json& metadata) {
  bank.validate();
  nlohmann::json cells = nlohmann::json::array();
  for (int k = 0; k < bank.num_speakers(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (int l = 0; l < bank.num_keywords(); ++l) {
      const MixtureModel& m = bank.model(k, l);
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& c : m.components) {
        nlohmann::json jc = {{"weight", c.weight}, {"mean", c.mean}, {"var", c.var}};
        if (c.dof) jc["dof"] = *c.dof;
        comps.push_back(std::move(jc));
      }
      row.push_back({{"components", comps}});
    }
    cells.push_back(std::move(row));
  }
  nlohmann::json j = {{"family", family_name(bank.family())},
                      {"dim", bank.dim()},
                      {"speakers", bank.speakers},
                      {"keywords", bank.keywords},
                      {"models", cells}};
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

ModelBank bank_from_json(const nlohmann::json& j, nlohmann::json* metadata) {
  ModelBank bank;
  const ModelFamily family = family_from_name(j.at("family").get<std::string>());
  const int dim = j.at("dim").get<int>();
  bank.speakers = j.at("speakers").get<std::vector<std::string>>();
  bank.keywords = j.at("keywords").get<std::vector<std::string>>();
  for (const auto& row : j.at("models")) {
    for (const auto& cell : row) {
      MixtureModel m;
      m.family = family;
      m.dim = dim;
      for (const auto& jc : cell.at("components")) {
        MixtureComponent c;
        c.weight = jc.at("weight").get<double>();
        c.mean = jc.at("mean").get<std::vector<double>>();
        c.var = jc.at("var").get<std::vector<double>>();
        if (jc.contains("dof")) c.dof = jc.at("dof").get<double>();
        m.components.push_back(std::move(c));
      }
      bank.models.push_back(std::move(m));
    }
  }
  if (metadata) *metadata = j.contains("metadata") ? j.at("metadata") : nlohmann::json();
  bank.validate();
  return bank;
}

void save_bank(const std::string& path, const ModelBank& bank, const nlohmann::json& metadata) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("save_bank: cannot open " + path);
  out << bank_to_json(bank, metadata).dump(2) << "\n";
  if (!out) throw std::runtime_error("save_bank: write failed for " + path);
}

ModelBank load_bank(const std::string& path, nlohmann::json* metadata) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_bank: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return bank_from_json(j, metadata);
}

}  // namespace lvdsk
