// lvdsk/mixture.hpp

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

#ifndef LVDSK_MIXTURE_HPP
#define LVDSK_MIXTURE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace lvdsk {

enum class ModelFamily { gaussian, student_t };

std::string family_name(ModelFamily f);
ModelFamily family_from_name(const std::string& name);

inline constexpr double kDofMin = 2.1;
inline constexpr double kDofMax = 1e6;

// One diagonal-covariance component; dof present only for Student's-t.
struct MixtureComponent {
  double weight = 0.0;
  std::vector<double> mean;
  std::vector<double> var;
  std::optional<double> dof;
};

struct MixtureModel {
  ModelFamily family = ModelFamily::gaussian;
  int dim = 0;
  std::vector<MixtureComponent> components;

  void validate() const;
};

// log sum_i w_i f_i(x), evaluated fully in the log domain.
double log_pdf(const MixtureModel& model, std::span<const double> x);

// M x N grid of per-(speaker, keyword) models.
struct ModelBank {
  std::vector<std::string> speakers;
  std::vector<std::string> keywords;
  std::vector<MixtureModel> models;  // row-major, models[k*N + l]

  int num_speakers() const { return static_cast<int>(speakers.size()); }
  int num_keywords() const { return static_cast<int>(keywords.size()); }
  int dim() const { return models.empty() ? 0 : models.front().dim; }
  ModelFamily family() const {
    return models.empty() ? ModelFamily::gaussian : models.front().family;
  }

  const MixtureModel& model(int k, int l) const {
    return models[static_cast<std::size_t>(k) * keywords.size() + l];
  }
  MixtureModel& model(int k, int l) {
    return models[static_cast<std::size_t>(k) * keywords.size() + l];
  }

  void validate() const;
};

nlohmann::json model_to_json(const MixtureModel& model);
MixtureModel model_from_json(const nlohmann::json& j);

// Bank JSON also carries an arbitrary metadata object (training config,
// seed) that is preserved by a load/save round trip.
nlohmann::json bank_to_json(const ModelBank& bank, const nlohmann::json& metadata = {});
ModelBank bank_from_json(const nlohmann::json& j, nlohmann::json* metadata = nullptr);

void save_bank(const std::string& path, const ModelBank& bank,
               const nlohmann::json& metadata = {});
ModelBank load_bank(const std::string& path, nlohmann::json* metadata = nullptr);

}  // namespace lvdsk

#endif  // LVDSK_MIXTURE_HPP
