// lvdsk/feature_matrix.hpp

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

#ifndef LVDSK_FEATURE_MATRIX_HPP
#define LVDSK_FEATURE_MATRIX_HPP

#include <span>
#include <string>
#include <vector>

namespace lvdsk {

// D x T feature matrix, stored column-major so one frame is contiguous.
struct FeatureMatrix {
  int dim = 0;     // D
  int frames = 0;  // T
  std::vector<double> data;  // data[j*dim + d]

  FeatureMatrix() = default;
  FeatureMatrix(int d, int t) : dim(d), frames(t), data(static_cast<std::size_t>(d) * t, 0.0) {}

  double& at(int d, int j) { return data[static_cast<std::size_t>(j) * dim + d]; }
  double at(int d, int j) const { return data[static_cast<std::size_t>(j) * dim + d]; }

  std::span<const double> frame(int j) const {
    return {data.data() + static_cast<std::size_t>(j) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<double> frame(int j) {
    return {data.data() + static_cast<std::size_t>(j) * dim, static_cast<std::size_t>(dim)};
  }

  void validate() const;  // D > 0, T > 0, all finite
};

// Binary feature file: magic "LVF1", u32 D, u32 T, then D*T float64
// column-major, all little-endian.
void write_feature_file(const std::string& path, const FeatureMatrix& m);
FeatureMatrix read_feature_file(const std::string& path);

}  // namespace lvdsk

#endif  // LVDSK_FEATURE_MATRIX_HPP
