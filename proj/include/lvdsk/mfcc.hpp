// lvdsk/mfcc.hpp

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

#ifndef LVDSK_MFCC_HPP
#define LVDSK_MFCC_HPP

#include <cstddef>
#include <vector>

#include "lvdsk/audio.hpp"
#include "lvdsk/feature_matrix.hpp"

namespace lvdsk {

// MFCC front-end configuration. The default pipeline produces 38 rows:
// static c1..c12 (c0 dropped), delta c0..c12, acceleration c0..c12.
struct MfccConfig {
  double frame_len = 0.020;    // seconds
  double frame_shift = 0.010;  // seconds
  int n_mel_filters = 26;
  int n_cepstra = 13;          // c0..c12
  double preemphasis = 0.97;
  int fft_size = 512;          // power of two
  int delta_window = 2;        // frames on each side
  bool drop_static_c0 = true;

  int output_dim() const {
    return drop_static_c0 ? (n_cepstra - 1) + 2 * n_cepstra : 3 * n_cepstra;
  }
  void validate(int sample_rate) const;
};

// 1 + floor((n_samples - frame_len*rate) / (frame_shift*rate)); the final
// partial frame is never padded. Throws if the signal is shorter than one
// frame.
int frame_count(std::size_t n_samples, const MfccConfig& cfg, int sample_rate);

// Triangular mel filterbank, HTK scale 2595*log10(1 + f/700), spanning
// 0 Hz to sample_rate/2, evaluated on FFT bin center frequencies.
struct MelFilterbank {
  int n_filters = 0;
  int n_bins = 0;                  // fft_size/2 + 1
  std::vector<double> weights;     // weights[m*n_bins + b]
  std::vector<double> center_hz;   // one per filter

  double weight(int m, int b) const { return weights[static_cast<std::size_t>(m) * n_bins + b]; }
};

MelFilterbank make_mel_filterbank(const MfccConfig& cfg, int sample_rate);

// Log mel filterbank energies (n_mel_filters x T); magnitude spectrum
// through the filterbank, energies floored at 1e-10 before the log.
FeatureMatrix log_mel_energies(const AudioSignal& audio, const MfccConfig& cfg);

// Standard regression deltas over +/- window frames with edge replication.
FeatureMatrix delta_features(const FeatureMatrix& m, int window);

// Full pipeline: pre-emphasis, Hamming window, magnitude FFT, mel
// filterbank, log, DCT-II, deltas and accelerations.
FeatureMatrix compute_features(const AudioSignal& audio, const MfccConfig& cfg);

}  // namespace lvdsk

#endif  // LVDSK_MFCC_HPP
