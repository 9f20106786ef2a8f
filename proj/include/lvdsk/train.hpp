// lvdsk/train.hpp

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

#ifndef LVDSK_TRAIN_HPP
#define LVDSK_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "lvdsk/corpus.hpp"
#include "lvdsk/feature_matrix.hpp"
#include "lvdsk/mixture.hpp"

namespace lvdsk {

enum class DofMode { estimate, fixed };

struct TrainConfig {
  int n_components = 8;
  int max_iters = 200;
  double rel_tol = 1e-6;          // relative log-likelihood change
  double var_floor_frac = 1e-3;   // fraction of global per-dim variance
  std::uint64_t seed = 0;
  int n_restarts = 3;
  DofMode dof_mode = DofMode::estimate;
  double fixed_dof = 5.0;

  void validate() const;
};

struct TrainResult {
  MixtureModel model;
  std::vector<double> loglik;  // per-iteration training log-likelihood
};

// Maximum-likelihood EM fit with seeded k-means++ initialization; best of
// n_restarts by final log-likelihood. Student's-t fits use the
// precision-weight E-step and per-component dof updates.
TrainResult train_mixture(const FeatureMatrix& features, ModelFamily family,
                          const TrainConfig& cfg);

// Concatenates each cell's utterances and fits one model per cell. Cells
// are fit in parallel; results do not depend on the schedule.
ModelBank train_bank(const FeatureCorpus& corpus, ModelFamily family, const TrainConfig& cfg);

}  // namespace lvdsk

#endif  // LVDSK_TRAIN_HPP
