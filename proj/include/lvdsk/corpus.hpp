// lvdsk/corpus.hpp

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

#ifndef LVDSK_CORPUS_HPP
#define LVDSK_CORPUS_HPP

#include <string>
#include <vector>

#include "lvdsk/audio.hpp"
#include "lvdsk/feature_matrix.hpp"

namespace lvdsk {

// Clean single-speaker training material: one utterance list per
// (speaker, keyword) cell.
struct FeatureCorpus {
  std::vector<std::string> speakers;
  std::vector<std::string> keywords;
  std::vector<std::vector<std::vector<FeatureMatrix>>> cells;  // [k][l] -> utterances

  int num_speakers() const { return static_cast<int>(speakers.size()); }
  int num_keywords() const { return static_cast<int>(keywords.size()); }

  // Every cell populated, consistent feature dimension. min_reps lets the
  // caller demand more than one repetition per cell.
  void validate(int min_reps = 1) const;
  int dim() const;
};

struct WaveCorpus {
  std::vector<std::string> speakers;
  std::vector<std::string> keywords;
  std::vector<std::vector<std::vector<AudioSignal>>> cells;  // [k][l] -> utterances

  int num_speakers() const { return static_cast<int>(speakers.size()); }
  int num_keywords() const { return static_cast<int>(keywords.size()); }
};

}  // namespace lvdsk

#endif  // LVDSK_CORPUS_HPP
