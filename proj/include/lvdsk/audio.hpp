// lvdsk/audio.hpp

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

#ifndef LVDSK_AUDIO_HPP
#define LVDSK_AUDIO_HPP

#include <string>
#include <vector>

namespace lvdsk {

struct AudioSignal {
  std::vector<double> samples;  // amplitudes in [-1, 1]
  int sample_rate = 0;          // Hz

  void validate() const;  // throws std::invalid_argument
};

// 16-bit PCM mono RIFF/WAVE only. Samples are scaled by 1/32768.
// Multi-channel or non-PCM input is rejected, never downmixed.
AudioSignal load_wav(const std::string& path);

// Writes 16-bit PCM mono; samples are clamped to [-1, 1] before quantization.
void save_wav(const std::string& path, const AudioSignal& audio);

}  // namespace lvdsk

#endif  // LVDSK_AUDIO_HPP
