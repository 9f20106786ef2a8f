// lvdsk/mfcc.cpp

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

#include "lvdsk/mfcc.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace lvdsk {

namespace {

constexpr double kMelLogFloor = 1e-10;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

int frame_len_samples(const MfccConfig& cfg, int rate) {
  return static_cast<int>(std::lround(cfg.frame_len * rate));
}
int frame_shift_samples(const MfccConfig& cfg, int rate) {
  return static_cast<int>(std::lround(cfg.frame_shift * rate));
}

}  // namespace

void MfccConfig::validate(int sample_rate) const {
  if (sample_rate <= 0) throw std::invalid_argument("mfcc: sample rate must be positive");
  if (frame_len <= 0 || frame_shift <= 0)
    throw std::invalid_argument("mfcc: frame length and shift must be positive");
  if (frame_shift > frame_len)
    throw std::invalid_argument("mfcc: frame_shift must not exceed frame_len");
  if (n_cepstra < 1 || n_mel_filters < 1 || n_cepstra > n_mel_filters)
    throw std::invalid_argument("mfcc: need 1 <= n_cepstra <= n_mel_filters");
  if (delta_window < 1) throw std::invalid_argument("mfcc: delta_window must be >= 1");
  if (fft_size < frame_len_samples(*this, sample_rate))
    throw std::invalid_argument("mfcc: fft_size smaller than the frame length");
  if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
    throw std::invalid_argument("mfcc: fft_size must be a power of two");
}

int frame_count(std::size_t n_samples, const MfccConfig& cfg, int sample_rate) {
  cfg.validate(sample_rate);
  const std::size_t len = static_cast<std::size_t>(frame_len_samples(cfg, sample_rate));
  const std::size_t shift = static_cast<std::size_t>(frame_shift_samples(cfg, sample_rate));
  if (n_samples < len)
    throw std::invalid_argument("mfcc: signal shorter than one frame (" +
                                std::to_string(n_samples) + " < " + std::to_string(len) +
                                " samples)");
  return static_cast<int>(1 + (n_samples - len) / shift);
}

MelFilterbank make_mel_filterbank(const MfccConfig& cfg, int sample_rate) {
  cfg.validate(sample_rate);
  MelFilterbank fb;
  fb.n_filters = cfg.n_mel_filters;
  fb.n_bins = cfg.fft_size / 2 + 1;
  fb.weights.assign(static_cast<std::size_t>(fb.n_filters) * fb.n_bins, 0.0);
  fb.center_hz.resize(fb.n_filters);

  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edge_hz(cfg.n_mel_filters + 2);
  for (int i = 0; i < cfg.n_mel_filters + 2; ++i)
    edge_hz[i] = mel_to_hz(mel_max * i / (cfg.n_mel_filters + 1));

  for (int m = 0; m < fb.n_filters; ++m) {
    const double lo = edge_hz[m], mid = edge_hz[m + 1], hi = edge_hz[m + 2];
    fb.center_hz[m] = mid;
    for (int b = 0; b < fb.n_bins; ++b) {
      const double f = static_cast<double>(b) * sample_rate / cfg.fft_size;
      double w = 0.0;
      if (f > lo && f < hi)
        w = (f <= mid) ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
      fb.weights[static_cast<std::size_t>(m) * fb.n_bins + b] = w;
    }
  }
  return fb;
}

FeatureMatrix log_mel_energies(const AudioSignal& audio, const MfccConfig& cfg) {
  audio.validate();
  const int rate = audio.sample_rate;
  const int T = frame_count(audio.samples.size(), cfg, rate);
  const int L = frame_len_samples(cfg, rate);
  const int shift = frame_shift_samples(cfg, rate);
  const int nfft = cfg.fft_size;
  const int nbins = nfft / 2 + 1;
  const MelFilterbank fb = make_mel_filterbank(cfg, rate);

  // Whole-signal pre-emphasis; the first sample is kept as-is.
  std::vector<double> emph(audio.samples.size());
  emph[0] = audio.samples[0];
  for (std::size_t i = 1; i < emph.size(); ++i)
    emph[i] = audio.samples[i] - cfg.preemphasis * audio.samples[i - 1];

  std::vector<double> window(L);
  for (int i = 0; i < L; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (L - 1));

  FeatureMatrix out(cfg.n_mel_filters, T);

  // One plan shared by all threads; fftw_execute_dft_r2c on per-thread
  // buffers is thread-safe, plan creation is not.
  double* plan_in = fftw_alloc_real(nfft);
  fftw_complex* plan_out = fftw_alloc_complex(nbins);
  fftw_plan plan = fftw_plan_dft_r2c_1d(nfft, plan_in, plan_out, FFTW_ESTIMATE);

#pragma omp parallel
  {
    double* in = fftw_alloc_real(nfft);
    fftw_complex* spec = fftw_alloc_complex(nbins);
    std::vector<double> mag(nbins);

#pragma omp for schedule(static)
    for (int j = 0; j < T; ++j) {
      const std::size_t start = static_cast<std::size_t>(j) * shift;
      for (int i = 0; i < L; ++i) in[i] = emph[start + i] * window[i];
      for (int i = L; i < nfft; ++i) in[i] = 0.0;
      fftw_execute_dft_r2c(plan, in, spec);
      for (int b = 0; b < nbins; ++b)
        mag[b] = std::sqrt(spec[b][0] * spec[b][0] + spec[b][1] * spec[b][1]);
      for (int m = 0; m < cfg.n_mel_filters; ++m) {
        double e = 0.0;
        for (int b = 0; b < nbins; ++b) e += fb.weight(m, b) * mag[b];
        out.at(m, j) = std::log(std::max(e, kMelLogFloor));
      }
    }

    fftw_free(in);
    fftw_free(spec);
  }

  fftw_destroy_plan(plan);
  fftw_free(plan_in);
  fftw_free(plan_out);
  return out;
}

FeatureMatrix delta_features(const FeatureMatrix& m, int window) {
  if (window < 1) throw std::invalid_argument("delta_features: window must be >= 1");
  double denom = 0.0;
  for (int n = 1; n <= window; ++n) denom += 2.0 * n * n;

  FeatureMatrix d(m.dim, m.frames);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < m.frames; ++j) {
    for (int r = 0; r < m.dim; ++r) {
      double num = 0.0;
      for (int n = 1; n <= window; ++n) {
        const int fwd = std::min(j + n, m.frames - 1);
        const int bwd = std::max(j - n, 0);
        num += n * (m.at(r, fwd) - m.at(r, bwd));
      }
      d.at(r, j) = num / denom;
    }
  }
  return d;
}

FeatureMatrix compute_features(const AudioSignal& audio, const MfccConfig& cfg) {
  const FeatureMatrix logmel = log_mel_energies(audio, cfg);
  const int T = logmel.frames;
  const int F = cfg.n_mel_filters;
  const int C = cfg.n_cepstra;

  // Orthonormal DCT-II of the log energies.
  FeatureMatrix cep(C, T);
  const double a0 = std::sqrt(1.0 / F);
  const double ak = std::sqrt(2.0 / F);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < T; ++j) {
    for (int k = 0; k < C; ++k) {
      double s = 0.0;
      for (int n = 0; n < F; ++n)
        s += logmel.at(n, j) * std::cos(M_PI * k * (2.0 * n + 1.0) / (2.0 * F));
      cep.at(k, j) = s * (k == 0 ? a0 : ak);
    }
  }

  const FeatureMatrix delta = delta_features(cep, cfg.delta_window);
  const FeatureMatrix accel = delta_features(delta, cfg.delta_window);

  const int static_rows = cfg.drop_static_c0 ? C - 1 : C;
  FeatureMatrix out(static_rows + 2 * C, T);
  const int c_first = cfg.drop_static_c0 ? 1 : 0;
  for (int j = 0; j < T; ++j) {
    int r = 0;
    for (int k = c_first; k < C; ++k) out.at(r++, j) = cep.at(k, j);
    for (int k = 0; k < C; ++k) out.at(r++, j) = delta.at(k, j);
    for (int k = 0; k < C; ++k) out.at(r++, j) = accel.at(k, j);
  }
  return out;
}

}  // namespace lvdsk
